// nslab: batch driver for the spectral Galerkin laboratory.
//
//   nslab <simulate|restrict|certify|gns|uniqueness> --config run.cfg [--out dir] [--seed n]
//
// Exit codes: 0 success, 2 a certificate verdict is false, 1 any error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "nslab/config.hpp"
#include "nslab/errors.hpp"
#include "nslab/scenario.hpp"

namespace {

struct Options {
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
};

int execute(nslab::Scenario scenario, const Options& opts)
{
    auto config = nslab::load_config(opts.config);
    if (config.scenario != scenario) {
        std::cerr << "note: config declares scenario '" << nslab::to_string(config.scenario) << "', running '"
                  << nslab::to_string(scenario) << "'\n";
        config.scenario = scenario;
    }
    if (opts.seed) {
        config.seed = *opts.seed;
        config.ic.seed.reset();
    }
    const std::string out_dir = opts.out.empty() ? config.output_dir : opts.out;
    const auto result = nslab::run_scenario(config, out_dir);
    std::cout << result.summary;
    return result.exit_code;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Spectral Galerkin laboratory for incompressible Navier-Stokes"};
    app.require_subcommand(1);
    Options opts;
    const std::pair<const char*, nslab::Scenario> commands[] = {
        {"simulate", nslab::Scenario::Simulate},
        {"restrict", nslab::Scenario::Restrict},
        {"certify", nslab::Scenario::Certify},
        {"gns", nslab::Scenario::Gns},
        {"uniqueness", nslab::Scenario::Uniqueness},
    };
    std::optional<nslab::Scenario> chosen;
    for (const auto& [name, scenario] : commands) {
        auto* sub = app.add_subcommand(name, std::string("run the ") + name + " scenario");
        sub->add_option("--config", opts.config, "configuration file")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", opts.out, "output directory (overrides outputs.dir)");
        sub->add_option("--seed", opts.seed, "master seed (overrides the config)");
        sub->callback([&chosen, scenario = scenario] { chosen = scenario; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? nslab::kExitOk : nslab::kExitError;
    }

    try {
        return execute(*chosen, opts);
    } catch (const nslab::ConfigError& e) {
        std::cerr << "config error (" << e.kind() << "): " << e.what() << '\n';
    } catch (const nslab::DivergedError& e) {
        std::cerr << "diverged at step " << e.step() << ": " << e.what() << '\n';
    } catch (const nslab::Error& e) {
        std::cerr << e.kind() << ": " << e.what() << '\n';
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
    }
    return nslab::kExitError;
}
