#include "cns/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>

#include "cns/cli/experiments.hpp"
#include "cns/cli/presets.hpp"
#include "cns/cli/run_store.hpp"
#include "cns/harmonic/besov.hpp"
#include "cns/harmonic/csv_export.hpp"
#include "cns/lagrangian/stability.hpp"
#include "cns/solver/diagnostics.hpp"
#include "cns/spectral/norms.hpp"
#include "cns/striated/patch_family.hpp"

namespace cns::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

/// Two runs that cannot be compared.
class IncompatibleRuns : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::ofstream open_csv(const fs::path& path, const std::string& header) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << header << '\n' << std::setprecision(17);
    return out;
}

/// Runs body and maps the error families to exit codes.
template <class Body>
int guarded(const Console& console, Body&& body) {
    try {
        return body();
    } catch (const ConfigError& e) {
        console.err << "invalid configuration: " << e.what() << '\n';
        return kExitInvalidConfig;
    } catch (const MissingSnapshotsError& e) {
        console.err << "missing snapshots: " << e.what() << '\n';
        return kExitMissingSnapshots;
    } catch (const IncompatibleRuns& e) {
        console.err << "incompatible runs: " << e.what() << '\n';
        return kExitIncompatibleRuns;
    } catch (const std::exception& e) {
        console.err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

json provenance(const Config& config) {
    return {{"format", "cns-experiment-1"},
            {"config_hash", hash_hex(config_hash(config))},
            {"seed", config.experiment.seed},
            {"preset", config.preset},
            {"experiment", config.experiment.kind}};
}

void write_config(const fs::path& dir, const Config& config) {
    fs::create_directories(dir);
    write_json_file((dir / "config.json").string(), config_to_json(config));
}

void write_stability(const fs::path& dir, const lagrangian::StabilityReport& report, double fit_until,
                     json meta) {
    fs::create_directories(dir);
    auto out = open_csv(dir / "compare.csv", "t,kinetic,dissipation_cum,energy,weight_integral,majorant");
    for (std::size_t k = 0; k < report.t.size(); ++k) {
        out << report.t[k] << ',' << report.kinetic[k] << ',' << report.dissipation_cum[k] << ','
            << report.energy[k] << ',' << report.weight_integral[k] << ',' << report.majorant(k) << '\n';
    }
    meta["fitted_constants"] = {{"gronwall", report.gronwall_constant}};
    meta["fit_until"] = fit_until;
    meta["violations"] = report.violations();
    meta["final_energy"] = report.energy.back();
    write_json_file((dir / "metadata.json").string(), meta);
}

void summarize_run(std::ostream& log, const std::string& dir, const solver::Trajectory& traj) {
    const auto& last = traj.diagnostics.back();
    log << dir << ": " << traj.snapshots.size() << " snapshots, " << traj.diagnostics.size() - 1
        << " steps, stop reason " << traj.stop_reason << ", t = " << last.t * traj.time_scale
        << ", max |rho - 1| = " << last.linf_rho << '\n';
}

int run_single(const Config& config, const fs::path& out, const Console& console) {
    const auto traj = solver::run(config.run);
    write_run(out.string(), config, traj);
    summarize_run(console.log, out.string(), traj);
    return kExitOk;
}

int run_pair(const Config& config, const fs::path& out, int jobs, const Console& console) {
    auto pair = run_uniqueness_pair(config, jobs);
    const json member_meta = {{"perturbation", config.experiment.perturbation}};
    write_run((out / "base").string(), config, pair.base, {{"member", "base"}, {"pair", member_meta}});
    write_run((out / "perturbed").string(), config, pair.perturbed, {{"member", "perturbed"}, {"pair", member_meta}});
    write_stability(out / "compare", pair.report, pair.fit_until, provenance(config));

    write_config(out, config);
    json meta = provenance(config);
    meta["fitted_constants"] = {{"gronwall", pair.report.gronwall_constant}};
    meta["violations"] = pair.report.violations();
    write_json_file((out / "metadata.json").string(), meta);

    summarize_run(console.log, (out / "base").string(), pair.base);
    summarize_run(console.log, (out / "perturbed").string(), pair.perturbed);
    console.log << "E(T) = " << pair.report.energy.back() << ", fitted Gronwall constant "
                << pair.report.gronwall_constant << ", " << pair.report.violations() << " majorant violations\n";
    return kExitOk;
}

int run_sweep(const Config& config, const fs::path& out, int jobs, const Console& console) {
    const auto sweep = run_striated_sweep(config, jobs);
    write_config(out, config);
    {
        auto csv = open_csv(out / "sweep.csv", "n,width_cells,lhs,rhs,ratio,dx_lhs,dx_rhs,dx_ratio");
        for (const auto& c : sweep.cells) {
            csv << c.n << ',' << c.width_cells << ',' << c.tang.lhs << ',' << c.tang.rhs << ',' << c.tang.ratio()
                << ',' << c.tang_dx.lhs << ',' << c.tang_dx.rhs << ',' << c.tang_dx.ratio() << '\n';
        }
    }
    {
        auto csv = open_csv(out / "checkerboard.csv", "n,cells,lhs");
        for (std::size_t i = 0; i < sweep.checkerboard_lhs.size(); ++i) {
            csv << config.experiment.sweep_n[i] << ',' << config.experiment.checkerboard_cells << ','
                << sweep.checkerboard_lhs[i] << '\n';
        }
    }
    json meta = provenance(config);
    meta["fitted_constants"] = {{"tang", sweep.fitted_constant}, {"tang_dx", sweep.fitted_dx_constant}};
    meta["worst_relative"] = {{"tang", sweep.worst_relative}, {"tang_dx", sweep.worst_dx_relative}};
    meta["striated_growth"] = sweep.striated_growth;
    meta["checkerboard_growth"] = sweep.checkerboard_growth;
    write_json_file((out / "metadata.json").string(), meta);

    console.log << "fitted C = " << sweep.fitted_constant << " (worst cell " << sweep.worst_relative
                << " C), striated lhs growth " << sweep.striated_growth << ", checkerboard lhs growth "
                << sweep.checkerboard_growth << '\n';
    return kExitOk;
}

int analyze_besov(const StoredRun& run, const fs::path& out, const Console& console) {
    const double p = run.trajectory.lp_exponent;
    auto csv = open_csv(out / "besov.csv", "t,field,j,block_lp_norm");
    int dominant = 0;
    for (const auto& s : run.trajectory.snapshots) {
        for (const std::string field : {"rho", "w"}) {
            const auto blocks = field == "rho" ? harmonic::block_norms(s.rho_dev(), p, false)
                                               : harmonic::block_norms(s.w(), p, false);
            double best = -1.0;
            for (const auto& b : blocks) {
                csv << s.time() << ',' << field << ',' << b.j << ',' << b.lp_norm << '\n';
                if (b.lp_norm > best) {
                    best = b.lp_norm;
                    dominant = b.j;
                }
            }
            if (&s == &run.trajectory.snapshots.back()) {
                console.log << "final " << field << ": dominant block j = " << dominant << '\n';
            }
        }
    }
    return kExitOk;
}

int analyze_energy(const StoredRun& run, const fs::path& out, const Console& console) {
    const auto law = run.config.run.make_law();
    const auto rows = solver::energy_audit(run.trajectory, law);
    double worst = 0.0;
    {
        auto csv = open_csv(out / "energy.csv", "t,kinetic,potential,dissipation_cum,residual");
        for (const auto& r : rows) {
            csv << r.t << ',' << r.kinetic << ',' << r.potential << ',' << r.dissipation_cum << ',' << r.residual
                << '\n';
            worst = std::max(worst, r.residual);
        }
    }
    const auto bounds = solver::density_bound_check(run.trajectory);
    int violations = 0;
    {
        auto csv = open_csv(out / "density_bound.csv", "t,q,lhs,rhs,pass");
        for (const auto& b : bounds) {
            csv << b.t << ',' << (std::isinf(b.q) ? std::string("inf") : std::to_string(b.q)) << ',' << b.lhs
                << ',' << b.rhs << ',' << (b.pass ? 1 : 0) << '\n';
            if (!b.pass) ++violations;
        }
    }
    console.log << "max relative energy residual " << worst << ", density bound violations " << violations
                << " of " << bounds.size() << '\n';
    return kExitOk;
}

int analyze_weighted(const StoredRun& run, const fs::path& out, const Console& console) {
    const auto& ex = run.config.run.exponents;
    const auto composite = solver::norms_NT(run.trajectory, ex.p, ex.r);
    const auto weighted = solver::weighted_norms(run.trajectory, ex.p, ex.r, run.config.weight_exponent);
    const double integral = lagrangian::weighted_gradient_integral(run.trajectory);
    std::ofstream csv(out / "weighted.csv");
    harmonic::write_named_values_csv(csv, {{"rho_sup", composite.rho_sup},
                                           {"w_besov_sup", composite.w_besov_sup},
                                           {"w_linf_time", composite.w_linf_time},
                                           {"grad_w_time", composite.grad_w_time},
                                           {"second_order_time", composite.second_order_time},
                                           {"composite_total", composite.total()},
                                           {"weight_exponent", weighted.r2_weight},
                                           {"weighted_hessian", weighted.hessian},
                                           {"weighted_gradient", weighted.gradient},
                                           {"weighted_value", weighted.value},
                                           {"t_grad_w_sup_sq_integral", integral}});
    for (const auto& w : composite.warnings) console.err << "warning: " << w << '\n';
    console.log << "N(T) = " << composite.total() << ", int t |grad w|_inf^2 dt = " << integral << '\n';
    return kExitOk;
}

int analyze_striated(const StoredRun& run, const fs::path& out, const Console& console) {
    const auto replay = striated::replay_with_family(run.config.run, run.trajectory);
    const auto samples = striated::window(replay);
    const auto report =
        striated::transported_bounds_check(samples, run.config.run.dim, run.config.run.exponents.p, 0.05);
    {
        auto csv = open_csv(out / "family.csv", "t,grad_u_cum,sup_norm,nondegeneracy,div_rho_x");
        for (const auto& s : replay.history) {
            csv << s.t << ',' << s.grad_u_cum << ',' << s.sup_norm << ',' << s.nondegeneracy << ',' << s.div_rho_x
                << '\n';
        }
    }
    {
        auto csv = open_csv(out / "striated.csv", "quantity,t,value,bound,slack,pass");
        for (const auto& r : report.rows) {
            csv << r.quantity << ',' << r.t << ',' << r.value << ',' << r.bound << ',' << r.slack << ','
                << (r.pass ? "PASS" : "FAIL") << '\n';
        }
    }
    const double u_end = samples.back().grad_u_cum;
    console.log << "window [0, " << replay.window_end << "], U = " << u_end << ", transported bounds "
                << (report.pass() ? "PASS" : "FAIL") << " (" << report.violations << " violations of "
                << report.rows.size() << ")\n";
    return kExitOk;
}

bool same_times(const solver::Trajectory& a, const solver::Trajectory& b) {
    if (a.snapshots.size() != b.snapshots.size()) return false;
    for (std::size_t k = 0; k < a.snapshots.size(); ++k) {
        const double ta = a.snapshots[k].time();
        if (std::abs(ta - b.snapshots[k].time()) > 1e-9 * std::max(1.0, std::abs(ta))) return false;
    }
    return true;
}

void require_compatible(const StoredRun& a, const StoredRun& b) {
    const auto& sa = a.trajectory.snapshots.front();
    const auto& sb = b.trajectory.snapshots.front();
    if (sa.grid() != sb.grid()) throw IncompatibleRuns("grids differ");
    const auto& pa = a.config.run;
    const auto& pb = b.config.run;
    if (pa.law != pb.law || pa.a != pb.a || pa.gamma != pb.gamma || pa.epsilon != pb.epsilon) {
        throw IncompatibleRuns("pressure laws differ");
    }
    if (std::abs(sa.mu() - sb.mu()) > 1e-12 || std::abs(sa.lambda() - sb.lambda()) > 1e-12 ||
        std::abs(sa.units().scale - sb.units().scale) > 1e-12) {
        throw IncompatibleRuns("viscosities differ");
    }
    spectral::SpectralField diff = sa.rho_dev();
    diff -= sb.rho_dev();
    if (spectral::sup_norm(diff) > 1e-12) throw IncompatibleRuns("initial densities differ");
    if (!same_times(a.trajectory, b.trajectory)) throw IncompatibleRuns("snapshot times differ");
}

}  // namespace

Config apply_overrides(const Config& config, const Overrides& overrides) {
    Config c = config;
    if (overrides.epsilon) c.run.epsilon = *overrides.epsilon;
    if (overrides.seed) c.experiment.seed = *overrides.seed;
    return config_from_json(config_to_json(c));
}

int run_command(const Config& config, const std::string& out_dir, int jobs, const Console& console) {
    return guarded(console, [&] {
        const fs::path out(out_dir);
        if (config.experiment.kind == "striated-sweep") return run_sweep(config, out, jobs, console);
        if (config.experiment.kind == "uniqueness-pair") return run_pair(config, out, jobs, console);
        return run_single(config, out, console);
    });
}

int run_command(const std::string& preset_name, const std::string& config_path, const std::string& out_dir,
                int jobs, const Overrides& overrides, const Console& console) {
    Config config;
    const int status = guarded(console, [&] {
        config = apply_overrides(preset_name.empty() ? load_config_file(config_path) : preset(preset_name), overrides);
        return kExitOk;
    });
    if (status != kExitOk) return status;
    const std::string out =
        out_dir.empty() ? "runs/" + (config.preset.empty() ? hash_hex(config_hash(config)) : config.preset) : out_dir;
    return run_command(config, out, jobs, console);
}

int analyze_command(const std::string& run_dir, const std::string& which, const std::string& out_dir,
                    const Console& console) {
    return guarded(console, [&] {
        if (which != "besov" && which != "energy" && which != "striated" && which != "weighted") {
            throw std::invalid_argument("unknown analysis '" + which + "'");
        }
        const StoredRun run = read_run(run_dir);
        const fs::path out = out_dir.empty() ? fs::path(run_dir) / "analysis" : fs::path(out_dir);
        fs::create_directories(out);
        if (which == "besov") return analyze_besov(run, out, console);
        if (which == "energy") return analyze_energy(run, out, console);
        if (which == "striated") return analyze_striated(run, out, console);
        return analyze_weighted(run, out, console);
    });
}

int compare_command(const std::string& run_a, const std::string& run_b, const std::string& out_dir,
                    const Console& console) {
    return guarded(console, [&] {
        const StoredRun a = read_run(run_a);
        const StoredRun b = read_run(run_b);
        require_compatible(a, b);
        auto report = lagrangian::stability_energy(a.trajectory, b.trajectory, a.config.run.make_law());
        const double fit_until = fit_on_first_half(report);
        const fs::path out = out_dir.empty() ? fs::path(run_a) / "compare" : fs::path(out_dir);
        json meta = {{"run_a", run_a},
                     {"run_b", run_b},
                     {"config_hash_a", a.metadata.value("config_hash", "")},
                     {"config_hash_b", b.metadata.value("config_hash", "")}};
        write_stability(out, report, fit_until, meta);
        console.log << "E(T) = " << report.energy.back() << ", fitted Gronwall constant " << report.gronwall_constant
                    << ", " << report.violations() << " majorant violations\n";
        return kExitOk;
    });
}

}  // namespace cns::cli
