#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "cns/cli/commands.hpp"
#include "cns/cli/presets.hpp"

using namespace cns::cli;

int main(int argc, char** argv) {
    CLI::App app{"Compressible Navier-Stokes spectral solver and analysis tools"};
    app.require_subcommand(1);
    const Console console{std::cout, std::cerr};

    std::string preset_name, config_path, out;
    int jobs = 1;
    std::optional<double> eps;
    std::optional<std::uint64_t> seed;
    auto* run_cmd = app.add_subcommand("run", "Run a preset or configuration file");
    auto* preset_opt = run_cmd->add_option("--preset", preset_name, "Preset name")->check(CLI::IsMember(preset_names()));
    auto* config_opt = run_cmd->add_option("--config", config_path, "JSON configuration file");
    preset_opt->excludes(config_opt);
    run_cmd->add_option("--out", out, "Output directory (default runs/<preset>)");
    run_cmd->add_option("--eps", eps, "Override pressure.epsilon");
    run_cmd->add_option("--jobs", jobs, "Worker threads for sweeps and pairs")->check(CLI::PositiveNumber);
    run_cmd->add_option("--seed", seed, "Override experiment.seed");

    std::string run_dir, which;
    auto* analyze_cmd = app.add_subcommand("analyze", "Analyze a run directory");
    analyze_cmd->add_option("run_dir", run_dir, "Run directory")->required();
    analyze_cmd->add_option("which", which, "besov, energy, striated or weighted")
        ->required()
        ->check(CLI::IsMember({"besov", "energy", "striated", "weighted"}));
    analyze_cmd->add_option("--out", out, "Report directory (default <run_dir>/analysis)");

    std::string run_a, run_b;
    auto* compare_cmd = app.add_subcommand("compare", "Stability functional E(t) of two runs");
    compare_cmd->add_option("run_a", run_a, "First run directory")->required();
    compare_cmd->add_option("run_b", run_b, "Second run directory")->required();
    compare_cmd->add_option("--out", out, "Report directory (default <run_a>/compare)");

    std::string show_name;
    auto* show_cmd = app.add_subcommand("show-preset", "Print the configuration of a preset");
    show_cmd->add_option("name", show_name, "Preset name")->required()->check(CLI::IsMember(preset_names()));

    CLI11_PARSE(app, argc, argv);

    if (*run_cmd) {
        if (preset_name.empty() && config_path.empty()) {
            std::cerr << "run: one of --preset or --config is required\n";
            return kExitInvalidConfig;
        }
        return run_command(preset_name, config_path, out, jobs, {eps, seed}, console);
    }
    if (*analyze_cmd) return analyze_command(run_dir, which, out, console);
    if (*compare_cmd) return compare_command(run_a, run_b, out, console);
    if (*show_cmd) {
        std::cout << config_to_json(preset(show_name)).dump(2) << '\n';
        return kExitOk;
    }
    return kExitFailure;
}
