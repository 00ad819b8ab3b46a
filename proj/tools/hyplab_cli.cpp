#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "hyplab/config.hpp"
#include "hyplab/errors.hpp"
#include "hyplab/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for a log-perturbed scalar-field equation on hyperbolic space"};
    app.require_subcommand(1);

    std::string config_path, out_path;
    std::uint64_t seed = 0;
    bool force = false;
    const char* descriptions[] = {
        "integrate one shooting trajectory or a grid of them",
        "bisect the shooting height to the decaying positive profile",
        "estimate the least constrained energy by descent on the Nehari set",
        "check the concentration energy threshold with truncated bubbles",
        "scan the comparison operator for its negativity radius",
        "sweep the logarithmic Sobolev residual over profiles and eps",
    };
    const char* names[] = {"shoot", "ground-state", "minimize", "threshold", "barrier", "logsob"};
    for (int i = 0; i < 6; ++i) {
        CLI::App* sub = app.add_subcommand(names[i], descriptions[i]);
        sub->add_option("--config", config_path, "key=value config file");
        sub->add_option("--out", out_path, "write the CSV artifact here (default: stdout)");
        sub->add_option("--seed", seed, "seed echoed into the artifact");
        sub->add_flag("--force", force, "run refused modes as falsification sweeps");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return hyplab::ExitConfigError;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        const hyplab::Config cfg =
            config_path.empty() ? hyplab::Config{} : hyplab::Config::from_file(config_path);
        const hyplab::RunResult res = hyplab::run_command(command, cfg, seed, force);
        if (out_path.empty()) {
            std::cout << res.csv;
        } else {
            std::ofstream out(out_path, std::ios::binary);
            if (!out) throw hyplab::ConfigError("cannot write output file: " + out_path);
            out << res.csv;
        }
        std::cerr << res.summary;
        return res.exit_code;
    } catch (const hyplab::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return hyplab::ExitConfigError;
    } catch (const hyplab::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return hyplab::ExitNumericalFailure;
    }
}
