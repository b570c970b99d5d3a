#include "cns/cli/run_store.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cns/solver/diagnostics.hpp"
#include "cns/spectral/snapshot_io.hpp"

namespace cns::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string exact(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string snapshot_name(std::size_t k, const std::string& field) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%05zu_%s.sfld", k, field.c_str());
    return buf;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
}

const char* kStepColumns =
    "t,linf_rho,lp_rho,div_w_linf,div_w_lp,div_w_linf_cum,div_w_lp_cum,grad_u_linf,grad_u_cum,kinetic,"
    "potential,dissipation_rate,dissipation_cum,energy_residual,budget_exponent,budget_admissible";

void write_steps(const std::string& path, const std::vector<solver::StepDiagnostics>& diags) {
    std::ofstream out(path);
    out << kStepColumns << '\n';
    for (const auto& d : diags) {
        for (double v : {d.t, d.linf_rho, d.lp_rho, d.div_w_linf, d.div_w_lp, d.div_w_linf_cum, d.div_w_lp_cum,
                         d.grad_u_linf, d.grad_u_cum, d.kinetic, d.potential, d.dissipation_rate, d.dissipation_cum,
                         d.energy_residual, d.budget_exponent}) {
            out << exact(v) << ',';
        }
        out << (d.budget_admissible ? 1 : 0) << '\n';
    }
    if (!out) throw std::runtime_error("cannot write " + path);
}

std::vector<solver::StepDiagnostics> read_steps(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MissingSnapshotsError("missing " + path);
    std::string line;
    std::getline(in, line);
    std::vector<solver::StepDiagnostics> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto c = split(line);
        if (c.size() != 16) throw std::runtime_error("malformed row in " + path);
        solver::StepDiagnostics d;
        double* fields[] = {&d.t,          &d.linf_rho,       &d.lp_rho,           &d.div_w_linf,
                            &d.div_w_lp,   &d.div_w_linf_cum, &d.div_w_lp_cum,     &d.grad_u_linf,
                            &d.grad_u_cum, &d.kinetic,        &d.potential,        &d.dissipation_rate,
                            &d.dissipation_cum, &d.energy_residual, &d.budget_exponent};
        for (std::size_t i = 0; i < 15; ++i) *fields[i] = std::stod(c[i]);
        d.budget_admissible = c[15] == "1";
        out.push_back(d);
    }
    return out;
}

}  // namespace

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    out << j.dump(2) << '\n';
    if (!out) throw std::runtime_error("cannot write " + path);
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return json::parse(in);
}

void write_run(const std::string& dir, const Config& config, const solver::Trajectory& trajectory,
               const json& extra) {
    if (trajectory.snapshots.empty()) throw std::invalid_argument("write_run: trajectory has no snapshots");
    const fs::path root(dir);
    fs::create_directories(root / "snapshots");

    std::ofstream(root / "config.json") << config_to_json(config).dump(2) << '\n';

    const auto& first = trajectory.snapshots.front();
    json meta;
    meta["format"] = "cns-run-1";
    meta["config_hash"] = hash_hex(config_hash(config));
    meta["seed"] = config.experiment.seed;
    meta["preset"] = config.preset;
    meta["trajectory"] = {{"dt", trajectory.dt},
                          {"snapshot_dt", trajectory.snapshot_dt},
                          {"lp_exponent", trajectory.lp_exponent},
                          {"smallness_constant", trajectory.smallness_constant},
                          {"epsilon", trajectory.epsilon},
                          {"budget_exit_time", trajectory.budget_exit_time},
                          {"stop_reason", trajectory.stop_reason},
                          {"time_scale", trajectory.time_scale},
                          {"snapshots", trajectory.snapshots.size()},
                          {"steps", trajectory.diagnostics.size()}};
    meta["normalized"] = {{"mu", first.mu()},
                          {"lambda", first.lambda()},
                          {"scale", first.units().scale},
                          {"physical_length", first.units().physical_length}};
    meta["fitted_constants"] = json::object();
    meta.merge_patch(extra);
    write_json_file((root / "metadata.json").string(), meta);

    solver::write_diagnostics_csv_file((root / "diagnostics.csv").string(), trajectory);
    write_steps((root / "steps.csv").string(), trajectory.diagnostics);

    std::ofstream index(root / "snapshots" / "index.csv");
    index << "index,t,rho";
    for (int a = 0; a < first.w().size(); ++a) index << ",w" << a;
    index << '\n';
    for (std::size_t k = 0; k < trajectory.snapshots.size(); ++k) {
        const auto& s = trajectory.snapshots[k];
        index << k << ',' << exact(s.time()) << ',' << snapshot_name(k, "rho");
        spectral::write_field_file((root / "snapshots" / snapshot_name(k, "rho")).string(), s.rho_dev());
        for (int a = 0; a < s.w().size(); ++a) {
            const std::string name = snapshot_name(k, "w" + std::to_string(a));
            index << ',' << name;
            spectral::write_field_file((root / "snapshots" / name).string(), s.w()[a]);
        }
        index << '\n';
    }
    if (!index) throw std::runtime_error("cannot write the snapshot index in " + dir);
}

StoredRun read_run(const std::string& dir) {
    const fs::path root(dir);
    const fs::path index_path = root / "snapshots" / "index.csv";
    if (!fs::exists(index_path)) throw MissingSnapshotsError("no snapshots in " + dir);

    StoredRun run;
    run.config = load_config_file((root / "config.json").string());
    run.metadata = read_json_file((root / "metadata.json").string());

    const auto& tm = run.metadata.at("trajectory");
    auto& traj = run.trajectory;
    traj.dt = tm.at("dt").get<double>();
    traj.snapshot_dt = tm.at("snapshot_dt").get<double>();
    traj.lp_exponent = tm.at("lp_exponent").get<double>();
    traj.smallness_constant = tm.at("smallness_constant").get<double>();
    traj.epsilon = tm.at("epsilon").get<double>();
    traj.budget_exit_time = tm.at("budget_exit_time").get<double>();
    traj.stop_reason = tm.at("stop_reason").get<std::string>();
    traj.time_scale = tm.at("time_scale").get<double>();
    traj.diagnostics = read_steps((root / "steps.csv").string());

    const auto& nm = run.metadata.at("normalized");
    const spectral::LameParameters lame(nm.at("mu").get<double>(), nm.at("lambda").get<double>());
    const state::Units units{nm.at("scale").get<double>(), nm.at("physical_length").get<double>()};

    std::ifstream index(index_path);
    std::string line;
    std::getline(index, line);
    while (std::getline(index, line)) {
        if (line.empty()) continue;
        const auto c = split(line);
        if (c.size() < 4) throw std::runtime_error("malformed snapshot index in " + dir);
        std::vector<spectral::SpectralField> w;
        auto load = [&](const std::string& name) {
            const fs::path p = root / "snapshots" / name;
            if (!fs::exists(p)) throw MissingSnapshotsError("missing snapshot " + p.string());
            return spectral::read_field_file(p.string());
        };
        auto rho = load(c[2]);
        for (std::size_t i = 3; i < c.size(); ++i) w.push_back(load(c[i]));
        traj.snapshots.emplace_back(std::stod(c[1]), std::move(rho), spectral::VectorField(std::move(w)), lame,
                                    units);
    }
    if (traj.snapshots.empty()) throw MissingSnapshotsError("empty snapshot index in " + dir);
    return run;
}

}  // namespace cns::cli
