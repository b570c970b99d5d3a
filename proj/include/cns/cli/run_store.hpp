#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"

#include "cns/cli/config.hpp"
#include "cns/solver/run.hpp"

namespace cns::cli {

/// A run directory without a usable snapshot set.
class MissingSnapshotsError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Run directory contents read back from disk.
struct StoredRun {
    Config config;
    solver::Trajectory trajectory;
    nlohmann::json metadata;
};

/// Writes a run directory:
///   config.json       the exact configuration
///   metadata.json     config hash, seed, trajectory scalars, fitted constants
///   diagnostics.csv   the per-step summary table
///   steps.csv         every per-step diagnostic at full precision
///   snapshots/        SFLD1 files of rho - 1 and each w component, listed in index.csv
/// Snapshots are stored in normalized units. extra is merged into metadata.json.
void write_run(const std::string& dir, const Config& config, const solver::Trajectory& trajectory,
               const nlohmann::json& extra = nlohmann::json::object());

/// @throws MissingSnapshotsError if the index or any listed snapshot is absent.
/// @throws ConfigError if config.json is invalid.
StoredRun read_run(const std::string& dir);

/// Writes a JSON document with two-space indentation and a trailing newline.
void write_json_file(const std::string& path, const nlohmann::json& j);
nlohmann::json read_json_file(const std::string& path);

}  // namespace cns::cli
