#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "cns/cli/config.hpp"

namespace cns::cli {

/// Process exit codes of the commands.
enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,        ///< runtime failure (solver error, I/O error)
    kExitInvalidConfig = 2,  ///< invalid or unreadable configuration
    kExitMissingSnapshots = 3,
    kExitIncompatibleRuns = 4,
};

/// Command-line overrides applied on top of a preset or config file.
struct Overrides {
    std::optional<double> epsilon;  ///< pressure.epsilon
    std::optional<std::uint64_t> seed;
};

/// Applies the overrides and re-validates through serialization.
/// @throws ConfigError if the result is invalid.
Config apply_overrides(const Config& config, const Overrides& overrides);

/// Output streams of a command: progress on log, diagnostics on err.
struct Console {
    std::ostream& log;
    std::ostream& err;
};

/// Runs the configured experiment into out_dir:
///   single           one run directory
///   uniqueness-pair  run directories base/ and perturbed/ plus compare/ with E(t)
///   striated-sweep   sweep.csv and checkerboard.csv
/// Each output directory holds config.json and metadata.json.
int run_command(const Config& config, const std::string& out_dir, int jobs, const Console& console);

/// Loads a preset (if preset_name is set) or a config file, applies the
/// overrides and runs it. An empty out_dir selects runs/<preset> or runs/<config hash>.
int run_command(const std::string& preset_name, const std::string& config_path, const std::string& out_dir,
                int jobs, const Overrides& overrides, const Console& console);

/// Analysis of a run directory; which is besov, energy, striated or weighted.
/// Reports go to out_dir (default: run_dir/analysis).
int analyze_command(const std::string& run_dir, const std::string& which, const std::string& out_dir,
                    const Console& console);

/// E(t) of two runs with the fitted Gronwall majorant (default out: run_a/compare).
int compare_command(const std::string& run_a, const std::string& run_b, const std::string& out_dir,
                    const Console& console);

}  // namespace cns::cli
