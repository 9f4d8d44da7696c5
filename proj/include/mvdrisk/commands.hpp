#pragma once

#include "mvdrisk/config.hpp"
#include "mvdrisk/el_curve.hpp"
#include "mvdrisk/error.hpp"
#include "mvdrisk/inversion.hpp"
#include "mvdrisk/numeric.hpp"
#include "mvdrisk/risk_measures.hpp"
#include "mvdrisk/simulation.hpp"

#include <cmath>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

// Subcommand bodies shared by the CLI and the tests. Each command validates the
// whole config (throwing ErrorKind::config) before it computes anything, and
// returns its complete output so nothing partial reaches stdout.

namespace mvdrisk::commands {

/// Process exit codes.
enum ExitCode : int { exit_ok = 0, exit_config = 2, exit_numeric = 3 };

inline int exit_code_for(const Error& e) noexcept
{
    return e.kind() == ErrorKind::config ? exit_config : exit_numeric;
}

namespace detail {

using mvdrisk::detail::config_error;
using mvdrisk::detail::with_path;

inline const MvdDistribution& need_distribution(const ScenarioConfig& config)
{
    if (!config.distribution)
        config_error("distribution", "missing");
    return *config.distribution;
}

inline LoanContext need_context(const ScenarioConfig& config)
{
    if (!config.p_a)
        config_error("p_a", "missing");
    LoanContext ctx{*config.p_a, config.lgd_min};
    with_path("p_a", [&] {
        ctx.validate();
        return 0;
    });
    return ctx;
}

inline std::vector<double> need_grid(const ScenarioConfig& config)
{
    if (!config.lvr_grid)
        config_error("lvr_grid", "missing");
    std::vector<double> grid = config.lvr_grid->values();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] > 0.0))
            config_error("lvr_grid", "grid point " + format_number(grid[i]) + " is not positive");
        if (i > 0 && !(grid[i] > grid[i - 1]))
            config_error("lvr_grid", "grid must be strictly increasing");
    }
    return grid;
}

inline InversionConfig need_inversion(const ScenarioConfig& config)
{
    InversionConfig cfg = config.inversion.value_or(InversionConfig{0.01, std::nan(""), 1.80});
    if (std::isnan(cfg.p_a)) {
        if (!config.p_a)
            config_error("inversion.p_a", "missing (and no top-level p_a)");
        cfg.p_a = *config.p_a;
    }
    with_path("inversion", [&] {
        cfg.validate();
        return 0;
    });
    if (!(cfg.p_a > 0.0))
        config_error("inversion.p_a", "must be positive");
    return cfg;
}

inline void quadrature_ok(const ScenarioConfig& config)
{
    with_path("quadrature.step", [&] {
        config.quadrature.validate();
        return 0;
    });
}

} // namespace detail

/// CSV `lvr,el,lgd_a,pd_l,lgd_l`, one row per grid point.
inline std::string forward(const ScenarioConfig& config)
{
    const MvdDistribution& dist = detail::need_distribution(config);
    const LoanContext ctx = detail::need_context(config);
    const std::vector<double> grid = detail::need_grid(config);
    detail::quadrature_ok(config);

    const RiskCurve curve = risk_curve(grid, dist, ctx, config.quadrature);
    std::ostringstream out;
    out << "lvr,el,lgd_a,pd_l,lgd_l\n";
    for (const RiskRow& row : curve.rows)
        out << format_number(row.lvr) << ',' << format_number(row.el) << ',' << format_number(row.lgd_a) << ','
            << format_number(row.pd_l) << ',' << format_number(row.lgd_l) << '\n';
    return out.str();
}

struct InvertOutput {
    std::string body;
    std::size_t negative_strips = 0;
};

/// Implied strip masses as CSV `m_mid,mass,density` (or tabulated-distribution JSON).
inline InvertOutput invert(const ScenarioConfig& config, bool as_json = false)
{
    if (!config.el_curve)
        detail::config_error("el_curve", "missing");
    const ElCurve& curve = *config.el_curve;
    const InversionConfig cfg = detail::need_inversion(config);
    for (std::size_t k = 1; k <= cfg.strip_count(); ++k) {
        const double lvr = static_cast<double>(k) * cfg.step;
        detail::with_path("el_curve", [&] { return curve(lvr); });
    }

    const ImpliedMvd implied = invert_el_to_pm(curve, cfg);
    InvertOutput output;
    output.negative_strips = implied.negative_strips();
    if (as_json) {
        output.body = tabulated_to_json(implied.table).dump(2) + "\n";
        return output;
    }
    std::ostringstream out;
    out << "m_mid,mass,density\n";
    for (std::size_t i = 0; i < implied.table.size(); ++i)
        out << format_number(implied.table.midpoint(i)) << ',' << format_number(implied.table.masses[i]) << ','
            << format_number(implied.density(i)) << '\n';
    output.body = out.str();
    return output;
}

inline SimulationSpec simulation_spec(const ScenarioConfig& config)
{
    const MvdDistribution& dist = detail::need_distribution(config);
    const LoanContext ctx = detail::need_context(config);
    SimulationSpec spec{dist, config.simulation.lvr, ctx.p_a, config.simulation.n_trials, config.simulation.seed};
    detail::with_path("simulation", [&] {
        spec.validate();
        return 0;
    });
    return spec;
}

/// JSON record of the Monte Carlo estimators, with the seed and generator label.
inline std::string simulate(const ScenarioConfig& config)
{
    const SimulationSpec spec = simulation_spec(config);
    const SimulationResult result = mvdrisk::simulate(spec);
    nlohmann::ordered_json out;
    out["generator"] = result.generator;
    out["seed"] = result.seed;
    out["n_trials"] = result.n_trials;
    out["lvr"] = round_to_12_digits(spec.lvr);
    out["p_a"] = round_to_12_digits(spec.p_a);
    out["mean_loss"] = round_to_12_digits(result.mean_loss);
    out["loss_frequency"] = round_to_12_digits(result.loss_frequency);
    out["mean_loss_given_loss"] = round_to_12_digits(result.mean_loss_given_loss);
    out["std_error_mean_loss"] = round_to_12_digits(result.std_error_mean_loss);
    out["std_error_loss_frequency"] = round_to_12_digits(result.std_error_loss_frequency);
    out["std_error_mean_loss_given_loss"] = round_to_12_digits(result.std_error_mean_loss_given_loss);
    return out.dump(2) + "\n";
}

/// CSV `lvr,el` of the reference parametric EL curve over LVR 0.01..1.80.
inline std::string example_curves(const LvrGridSpec& grid = {0.01, 1.80, 0.01, std::nullopt})
{
    const ElCurve curve{ParametricElCurve{}};
    std::ostringstream out;
    out << "lvr,el\n";
    for (double lvr : grid.values()) {
        if (!(lvr > 0.0))
            detail::config_error("lvr_grid", "grid point " + format_number(lvr) + " is not positive");
    }
    for (double lvr : grid.values())
        out << format_number(lvr) << ',' << format_number(curve(lvr)) << '\n';
    return out.str();
}

} // namespace mvdrisk::commands
