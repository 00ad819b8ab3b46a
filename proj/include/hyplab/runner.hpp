#pragma once
#include <cstdint>
#include <string>

#include "hyplab/config.hpp"

namespace hyplab {

// Exit codes shared by every subcommand.
enum ExitCode : int {
    ExitPass = 0,
    ExitVerdictFailure = 1,
    ExitConfigError = 2,
    ExitNumericalFailure = 3,
};

struct RunResult {
    int exit_code = ExitPass;
    std::string csv;      // primary artifact (written to --out)
    std::string summary;  // human-readable lines (stderr/stdout)
};

// Dispatch a subcommand by name: shoot | ground-state | minimize |
// threshold | barrier | logsob.  Pure given (config, seed, force); all
// file handling lives in the CLI wrapper.  Config errors surface as
// ConfigError, numerical breakdowns as NumericalError; verdict failures
// are reported in exit_code only.
RunResult run_command(const std::string& command, const Config& cfg, std::uint64_t seed,
                      bool force);

} // namespace hyplab
