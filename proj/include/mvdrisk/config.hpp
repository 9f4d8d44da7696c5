#pragma once

#include "mvdrisk/el_curve.hpp"
#include "mvdrisk/error.hpp"
#include "mvdrisk/inversion.hpp"
#include "mvdrisk/mvd_distribution.hpp"
#include "mvdrisk/numeric.hpp"
#include "mvdrisk/quadrature.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace mvdrisk {

using json = nlohmann::json;

/// LVR grid given either as an inclusive range {start, stop, step} or as explicit points.
struct LvrGridSpec {
    std::optional<double> start;
    std::optional<double> stop;
    std::optional<double> step;
    std::optional<std::vector<double>> points;

    std::vector<double> values() const
    {
        if (points)
            return *points;
        detail::require(start && stop && step, ErrorKind::config, "lvr_grid needs start, stop and step");
        detail::require(std::isfinite(*step) && *step > 0.0, ErrorKind::config, "lvr_grid.step must be positive");
        detail::require(std::isfinite(*start) && std::isfinite(*stop), ErrorKind::config,
                        "lvr_grid.start and lvr_grid.stop must be finite");
        std::vector<double> grid;
        if (*stop < *start)
            return grid;
        const auto count = static_cast<std::size_t>(std::floor((*stop - *start) / *step + 1e-9)) + 1;
        grid.reserve(count);
        for (std::size_t i = 0; i < count; ++i)
            grid.push_back(*start + static_cast<double>(i) * *step);
        return grid;
    }
};

struct SimulationSettings {
    double lvr = 1.0;
    std::uint64_t n_trials = 1'000'000;
    std::uint64_t seed = 1;
};

/// Declarative scenario consumed by the CLI; each subcommand requires its own subset.
struct ScenarioConfig {
    std::optional<MvdDistribution> distribution;
    std::optional<double> p_a;
    double lgd_min = 0.0;
    std::optional<LvrGridSpec> lvr_grid;
    QuadratureConfig quadrature;
    std::optional<InversionConfig> inversion;
    std::optional<ElCurve> el_curve;
    SimulationSettings simulation;
};

/// Command-line values that take precedence over the config file.
struct ConfigOverrides {
    std::optional<double> p_a;
    std::optional<double> lgd_min;
    std::optional<double> lvr_start;
    std::optional<double> lvr_stop;
    std::optional<double> lvr_step;
    std::optional<double> quad_step;
    std::optional<double> inversion_step;
    std::optional<double> max_lvr;
    std::optional<double> sim_lvr;
    std::optional<std::uint64_t> n_trials;
    std::optional<std::uint64_t> seed;
};

namespace detail {

[[noreturn]] inline void config_error(const std::string& path, const std::string& message)
{
    fail(ErrorKind::config, "field '" + path + "': " + message);
}

inline std::string join_path(const std::string& parent, const std::string& key)
{
    return parent.empty() ? key : parent + "." + key;
}

inline void require_object(const json& node, const std::string& path)
{
    if (!node.is_object())
        config_error(path.empty() ? "<root>" : path, "expected an object");
}

inline void reject_unknown(const json& node, std::initializer_list<const char*> allowed, const std::string& path)
{
    for (const auto& item : node.items()) {
        const bool known = std::any_of(allowed.begin(), allowed.end(),
                                       [&](const char* key) { return item.key() == key; });
        if (!known)
            config_error(join_path(path, item.key()), "unknown field");
    }
}

inline double as_number(const json& node, const std::string& path)
{
    if (!node.is_number())
        config_error(path, "expected a number");
    const double value = node.get<double>();
    if (!std::isfinite(value))
        config_error(path, "expected a finite number");
    return value;
}

inline std::uint64_t as_unsigned(const json& node, const std::string& path)
{
    if (!node.is_number_unsigned())
        config_error(path, "expected a non-negative integer");
    return node.get<std::uint64_t>();
}

inline std::vector<double> as_number_array(const json& node, const std::string& path)
{
    if (!node.is_array())
        config_error(path, "expected an array of numbers");
    std::vector<double> values;
    values.reserve(node.size());
    for (std::size_t i = 0; i < node.size(); ++i)
        values.push_back(as_number(node[i], path + "[" + std::to_string(i) + "]"));
    return values;
}

inline double required_number(const json& node, const char* key, const std::string& path)
{
    if (!node.contains(key))
        config_error(join_path(path, key), "missing");
    return as_number(node.at(key), join_path(path, key));
}

inline std::optional<double> optional_number(const json& node, const char* key, const std::string& path)
{
    if (!node.contains(key))
        return std::nullopt;
    return as_number(node.at(key), join_path(path, key));
}

inline std::string required_type(const json& node, const std::string& path)
{
    if (!node.contains("type") || !node.at("type").is_string())
        config_error(join_path(path, "type"), "expected a string");
    return node.at("type").get<std::string>();
}

/// Runs `build`, turning validation failures from the domain types into config errors at `path`.
template <typename Build>
auto with_path(const std::string& path, Build&& build)
{
    try {
        return build();
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::config)
            throw;
        config_error(path, e.what());
    }
}

inline Representative parse_representative(const json& node, const std::string& path)
{
    if (!node.is_string())
        config_error(path, "expected \"lower_edge\" or \"midpoint\"");
    const auto text = node.get<std::string>();
    if (text == "lower_edge")
        return Representative::lower_edge;
    if (text == "midpoint")
        return Representative::midpoint;
    config_error(path, "expected \"lower_edge\" or \"midpoint\"");
}

} // namespace detail

inline const char* to_string(Representative representative) noexcept
{
    return representative == Representative::midpoint ? "midpoint" : "lower_edge";
}

/**
 * Distribution spec:
 *   {"type":"dirac","m":-0.45}
 *   {"type":"normal","mean":0.0,"std_dev":0.20}
 *   {"type":"tabulated","grid_origin":-1.0,"step":0.01,"masses":[...],"representative":"lower_edge"}
 * Any variant may add "truncate_at": floor to apply truncate_renormalize.
 */
inline MvdDistribution parse_distribution(const json& node, const std::string& path = "distribution")
{
    using namespace detail;
    require_object(node, path);
    const std::string type = required_type(node, path);

    auto build = [&]() -> MvdDistribution {
        if (type == "dirac") {
            reject_unknown(node, {"type", "m", "truncate_at"}, path);
            const double m = required_number(node, "m", path);
            return with_path(join_path(path, "m"), [&] { return MvdDistribution::dirac(m); });
        }
        if (type == "normal") {
            reject_unknown(node, {"type", "mean", "std_dev", "truncate_at"}, path);
            const double mean = optional_number(node, "mean", path).value_or(0.0);
            const double std_dev = required_number(node, "std_dev", path);
            return with_path(join_path(path, "std_dev"), [&] { return MvdDistribution::normal(std_dev, mean); });
        }
        if (type == "tabulated") {
            reject_unknown(node, {"type", "grid_origin", "step", "masses", "representative", "truncate_at"}, path);
            TabulatedMvd table;
            table.grid_origin = optional_number(node, "grid_origin", path).value_or(kMinMvd);
            table.step = required_number(node, "step", path);
            if (!node.contains("masses"))
                config_error(join_path(path, "masses"), "missing");
            table.masses = as_number_array(node.at("masses"), join_path(path, "masses"));
            if (node.contains("representative"))
                table.representative =
                    parse_representative(node.at("representative"), join_path(path, "representative"));
            return with_path(path, [&] { return MvdDistribution::tabulated(std::move(table)); });
        }
        config_error(join_path(path, "type"), "unknown distribution type '" + type + "'");
    };

    MvdDistribution dist = build();
    if (const auto floor = optional_number(node, "truncate_at", path))
        return with_path(join_path(path, "truncate_at"), [&] { return dist.truncate_renormalize(*floor); });
    return dist;
}

/**
 * EL curve spec:
 *   {"type":"parametric","pd_scale":0.015,"pd_exponent":20,"mvd":0.40,"cap":1.0}
 *   {"type":"tabulated","lvr":[...],"el":[...]}
 * Omitted parametric fields take the reference example values.
 */
inline ElCurve parse_el_curve(const json& node, const std::string& path = "el_curve")
{
    using namespace detail;
    require_object(node, path);
    const std::string type = required_type(node, path);
    if (type == "parametric") {
        reject_unknown(node, {"type", "pd_scale", "pd_exponent", "mvd", "cap"}, path);
        ParametricElCurve curve;
        curve.pd_scale = optional_number(node, "pd_scale", path).value_or(curve.pd_scale);
        curve.pd_exponent = optional_number(node, "pd_exponent", path).value_or(curve.pd_exponent);
        curve.mvd = optional_number(node, "mvd", path).value_or(curve.mvd);
        curve.cap = optional_number(node, "cap", path).value_or(curve.cap);
        return with_path(path, [&] { return ElCurve(curve); });
    }
    if (type == "tabulated") {
        reject_unknown(node, {"type", "lvr", "el"}, path);
        TabulatedElCurve curve;
        if (!node.contains("lvr"))
            config_error(join_path(path, "lvr"), "missing");
        if (!node.contains("el"))
            config_error(join_path(path, "el"), "missing");
        curve.lvr_grid = as_number_array(node.at("lvr"), join_path(path, "lvr"));
        curve.el_values = as_number_array(node.at("el"), join_path(path, "el"));
        return with_path(path, [&] { return ElCurve(std::move(curve)); });
    }
    config_error(join_path(path, "type"), "unknown EL curve type '" + type + "'");
}

inline ScenarioConfig parse_scenario(const json& root)
{
    using namespace detail;
    require_object(root, "");
    reject_unknown(root,
                   {"distribution", "p_a", "lgd_min", "lvr_grid", "quadrature", "inversion", "el_curve", "simulation"},
                   "");

    ScenarioConfig config;
    if (root.contains("distribution"))
        config.distribution = parse_distribution(root.at("distribution"));
    config.p_a = optional_number(root, "p_a", "");
    config.lgd_min = optional_number(root, "lgd_min", "").value_or(0.0);

    if (root.contains("lvr_grid")) {
        const json& grid = root.at("lvr_grid");
        LvrGridSpec spec;
        if (grid.is_array()) {
            spec.points = as_number_array(grid, "lvr_grid");
        } else {
            require_object(grid, "lvr_grid");
            reject_unknown(grid, {"start", "stop", "step"}, "lvr_grid");
            spec.start = required_number(grid, "start", "lvr_grid");
            spec.stop = required_number(grid, "stop", "lvr_grid");
            spec.step = required_number(grid, "step", "lvr_grid");
        }
        config.lvr_grid = spec;
    }

    if (root.contains("quadrature")) {
        const json& quad = root.at("quadrature");
        require_object(quad, "quadrature");
        reject_unknown(quad, {"step", "method"}, "quadrature");
        config.quadrature.step = optional_number(quad, "step", "quadrature").value_or(config.quadrature.step);
        if (quad.contains("method")) {
            const json& method = quad.at("method");
            if (!method.is_string() || method.get<std::string>() != "midpoint-rectangle")
                config_error("quadrature.method", "expected \"midpoint-rectangle\"");
        }
    }

    if (root.contains("inversion")) {
        const json& inv = root.at("inversion");
        require_object(inv, "inversion");
        reject_unknown(inv, {"step", "p_a", "max_lvr", "representative"}, "inversion");
        InversionConfig cfg;
        cfg.step = optional_number(inv, "step", "inversion").value_or(cfg.step);
        // p_a falls back to the top-level value; NaN marks "not given" until resolved.
        cfg.p_a = optional_number(inv, "p_a", "inversion").value_or(std::nan(""));
        cfg.max_lvr = optional_number(inv, "max_lvr", "inversion").value_or(cfg.max_lvr);
        if (inv.contains("representative"))
            cfg.representative = parse_representative(inv.at("representative"), "inversion.representative");
        config.inversion = cfg;
    }

    if (root.contains("el_curve"))
        config.el_curve = parse_el_curve(root.at("el_curve"));

    if (root.contains("simulation")) {
        const json& sim = root.at("simulation");
        require_object(sim, "simulation");
        reject_unknown(sim, {"lvr", "n_trials", "seed"}, "simulation");
        config.simulation.lvr = optional_number(sim, "lvr", "simulation").value_or(config.simulation.lvr);
        if (sim.contains("n_trials"))
            config.simulation.n_trials = as_unsigned(sim.at("n_trials"), "simulation.n_trials");
        if (sim.contains("seed"))
            config.simulation.seed = as_unsigned(sim.at("seed"), "simulation.seed");
    }
    return config;
}

inline ScenarioConfig parse_scenario(std::istream& in)
{
    json root;
    try {
        root = json::parse(in);
    } catch (const json::parse_error& e) {
        detail::fail(ErrorKind::config, std::string("malformed JSON: ") + e.what());
    }
    return parse_scenario(root);
}

inline void apply_overrides(ScenarioConfig& config, const ConfigOverrides& overrides)
{
    if (overrides.p_a) {
        config.p_a = overrides.p_a;
        if (config.inversion)
            config.inversion->p_a = *overrides.p_a;
    }
    if (overrides.lgd_min)
        config.lgd_min = *overrides.lgd_min;
    if (overrides.lvr_start || overrides.lvr_stop || overrides.lvr_step) {
        LvrGridSpec spec = config.lvr_grid.value_or(LvrGridSpec{});
        spec.points.reset();
        if (overrides.lvr_start)
            spec.start = overrides.lvr_start;
        if (overrides.lvr_stop)
            spec.stop = overrides.lvr_stop;
        if (overrides.lvr_step)
            spec.step = overrides.lvr_step;
        config.lvr_grid = spec;
    }
    if (overrides.quad_step)
        config.quadrature.step = *overrides.quad_step;
    if (overrides.inversion_step || overrides.max_lvr) {
        InversionConfig cfg = config.inversion.value_or(InversionConfig{0.01, std::nan(""), 1.80});
        if (overrides.inversion_step)
            cfg.step = *overrides.inversion_step;
        if (overrides.max_lvr)
            cfg.max_lvr = *overrides.max_lvr;
        config.inversion = cfg;
    }
    if (overrides.sim_lvr)
        config.simulation.lvr = *overrides.sim_lvr;
    if (overrides.n_trials)
        config.simulation.n_trials = *overrides.n_trials;
    if (overrides.seed)
        config.simulation.seed = *overrides.seed;
}

/// TabulatedMvd in the same JSON shape parse_distribution accepts; masses rounded to 12 digits.
inline json tabulated_to_json(const TabulatedMvd& table)
{
    json masses = json::array();
    for (double mass : table.masses)
        masses.push_back(round_to_12_digits(mass));
    json out = json::object();
    out["type"] = "tabulated";
    out["grid_origin"] = round_to_12_digits(table.grid_origin);
    out["step"] = round_to_12_digits(table.step);
    out["representative"] = to_string(table.representative);
    out["masses"] = std::move(masses);
    return out;
}

} // namespace mvdrisk
