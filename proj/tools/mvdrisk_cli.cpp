// mvdrisk: forward risk curves, EL-curve inversion and Monte Carlo checks from a JSON scenario.

#include "mvdrisk/commands.hpp"
#include "mvdrisk/config.hpp"

#include "CLI11.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace mvdrisk;

struct CliOptions {
    std::string config_path;
    ConfigOverrides overrides;
    bool json_output = false;
};

ScenarioConfig load_config(const CliOptions& options)
{
    ScenarioConfig config;
    if (options.config_path.empty() || options.config_path == "-") {
        config = parse_scenario(std::cin);
    } else {
        std::ifstream file(options.config_path);
        if (!file)
            detail::fail(ErrorKind::config, "cannot open config file '" + options.config_path + "'");
        config = parse_scenario(file);
    }
    apply_overrides(config, options.overrides);
    return config;
}

template <typename T>
void add_override(CLI::App* app, const std::string& name, std::optional<T>& target, const std::string& help)
{
    app->add_option_function<T>(name, [&target](const T& value) { target = value; }, help);
}

void add_config_argument(CLI::App* app, CliOptions& options)
{
    app->add_option("config", options.config_path,
                    "Scenario JSON file ('-' or omitted: read standard input). Flags override file fields.");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Dual-framework (arrears / liquidation default) credit-risk curves for asset-backed loans"};
    app.require_subcommand(1);
    CliOptions options;
    auto& ov = options.overrides;

    auto* forward = app.add_subcommand("forward", "EL, LGD_a, PD_l and LGD_l over an LVR grid (CSV)");
    add_config_argument(forward, options);
    add_override(forward, "--p-a", ov.p_a, "Arrears-default probability");
    add_override(forward, "--lgd-min", ov.lgd_min, "Minimum LGD floor (single-valued LGD only)");
    add_override(forward, "--lvr-start", ov.lvr_start, "First LVR grid point");
    add_override(forward, "--lvr-stop", ov.lvr_stop, "Last LVR grid point (inclusive)");
    add_override(forward, "--lvr-step", ov.lvr_step, "LVR grid spacing");
    add_override(forward, "--quad-step", ov.quad_step, "Quadrature strip width");

    auto* invert = app.add_subcommand("invert", "Implied MVD strip masses from an EL curve (CSV m_mid,mass,density)");
    add_config_argument(invert, options);
    add_override(invert, "--p-a", ov.p_a, "Arrears-default probability");
    add_override(invert, "--step", ov.inversion_step, "LVR/MVD grid increment");
    add_override(invert, "--max-lvr", ov.max_lvr, "Highest LVR inverted (multiple of step)");
    invert->add_flag("--json", options.json_output, "Emit the implied distribution as tabulated JSON");

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimate of EL, PD_l and LGD_l (JSON)");
    add_config_argument(simulate, options);
    add_override(simulate, "--p-a", ov.p_a, "Arrears-default probability");
    add_override(simulate, "--lvr", ov.sim_lvr, "Loan LVR");
    add_override(simulate, "--n-trials", ov.n_trials, "Number of trials");
    add_override(simulate, "--seed", ov.seed, "64-bit seed");

    auto* examples = app.add_subcommand("example-curves", "Reference parametric EL curve over LVR (CSV lvr,el)");
    LvrGridSpec example_grid{0.01, 1.80, 0.01, std::nullopt};
    examples->add_option("--lvr-start", example_grid.start, "First LVR")->capture_default_str();
    examples->add_option("--lvr-stop", example_grid.stop, "Last LVR (inclusive)")->capture_default_str();
    examples->add_option("--lvr-step", example_grid.step, "LVR spacing")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return commands::exit_config;
    }

    try {
        if (forward->parsed()) {
            std::cout << commands::forward(load_config(options));
        } else if (invert->parsed()) {
            const auto output = commands::invert(load_config(options), options.json_output);
            std::cout << output.body;
            std::cerr << "negative-mass strips: " << output.negative_strips << '\n';
        } else if (simulate->parsed()) {
            std::cout << commands::simulate(load_config(options));
        } else if (examples->parsed()) {
            std::cout << commands::example_curves(example_grid);
        }
    } catch (const Error& e) {
        std::cerr << "mvdrisk: " << e.what() << '\n';
        return commands::exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "mvdrisk: " << e.what() << '\n';
        return commands::exit_numeric;
    }
    return commands::exit_ok;
}
