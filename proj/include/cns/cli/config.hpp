#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "cns/solver/run_config.hpp"

namespace cns::cli {

/// What a run command produces beyond a single trajectory.
struct ExperimentSettings {
    /// "single", "striated-sweep" or "uniqueness-pair".
    std::string kind = "single";
    std::uint64_t seed = 0;
    double perturbation = 1e-6;  ///< sup |w_b(0) - w_a(0)| for a uniqueness pair

    std::vector<int> sweep_n{128, 256};
    std::vector<double> sweep_widths{8.0, 4.0, 2.0, 1.0};  ///< transition widths in grid cells
    double sweep_radius = 0.25;                             ///< disc radius as a fraction of L
    double eta = 1.0;
    int checkerboard_cells = 64;
};

/// Complete description of a command: solver settings plus experiment settings.
struct Config {
    std::string preset;  ///< empty for a user configuration
    solver::RunConfig run;
    double weight_exponent = 0.0;  ///< R2 of the weighted norms; 0 selects the default
    ExperimentSettings experiment;
};

/// Invalid configuration; field() is the dotted key path at fault.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& field, const std::string& message)
        : std::runtime_error(field.empty() ? message : field + ": " + message), field_(field) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

/// Reads a configuration object. Sections: grid, physics, pressure, time,
/// diagnostics, initial, experiment, plus an optional top-level "preset".
/// Required keys: grid.dim, grid.n, pressure.law, time.horizon.
/// @throws ConfigError for unknown keys, missing keys, wrong types or values the solver rejects.
Config config_from_json(const nlohmann::json& j);

/// @throws ConfigError with the line and column of a syntax error.
Config parse_config(const std::string& text);
Config load_config_file(const std::string& path);

/// Full serialization; every key is written so the result parses back to an equal config.
nlohmann::json config_to_json(const Config& config);
/// Sorted-key compact dump of config_to_json.
std::string canonical_config(const Config& config);
/// 64-bit FNV-1a of the canonical dump.
std::uint64_t config_hash(const Config& config);
std::string hash_hex(std::uint64_t hash);

}  // namespace cns::cli
