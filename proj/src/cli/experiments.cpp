#include "cns/cli/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <random>
#include <thread>

#include "cns/spectral/norms.hpp"
#include "cns/spectral/operators.hpp"

namespace cns::cli {

void parallel_for(int count, int jobs, const std::function<void(int)>& task) {
    const int workers = std::max(1, std::min(jobs, count));
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (int i = next++; i < count; i = next++) {
            try {
                task(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        for (int w = 0; w < workers; ++w) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
    }
    if (failure) std::rethrow_exception(failure);
}

spectral::VectorField seeded_perturbation(const spectral::TorusGrid& grid, std::uint64_t seed) {
    constexpr int kMax = 3;
    const int d = grid.dim();
    std::mt19937_64 gen(seed);
    auto uniform = [&gen] { return static_cast<double>(gen() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };

    // Half of the wavevectors: the first nonzero entry is positive.
    std::vector<std::array<int, spectral::kMaxDim>> modes;
    std::array<int, spectral::kMaxDim> k{0, 0, 0};
    const int span = 2 * kMax + 1;
    const int total = static_cast<int>(std::pow(span, d));
    for (int code = 0; code < total; ++code) {
        int c = code;
        for (int a = 0; a < d; ++a) {
            k[a] = c % span - kMax;
            c /= span;
        }
        int lead = 0;
        for (int a = 0; a < d && lead == 0; ++a) lead = k[a];
        if (lead > 0) modes.push_back(k);
    }

    const double unit = grid.wavenumber_unit();
    spectral::VectorField v(grid, d);
    for (int comp = 0; comp < d; ++comp) {
        std::vector<double> cos_coeff(modes.size()), sin_coeff(modes.size());
        for (std::size_t m = 0; m < modes.size(); ++m) {
            cos_coeff[m] = uniform();
            sin_coeff[m] = uniform();
        }
        std::vector<double> values(grid.size(), 0.0);
        for (std::size_t p = 0; p < grid.size(); ++p) {
            const auto x = grid.coordinates(p);
            double sum = 0.0;
            for (std::size_t m = 0; m < modes.size(); ++m) {
                double phase = 0.0;
                for (int a = 0; a < d; ++a) phase += modes[m][a] * x[a];
                phase *= unit;
                sum += cos_coeff[m] * std::cos(phase) + sin_coeff[m] * std::sin(phase);
            }
            values[p] = sum;
        }
        v[comp] = spectral::SpectralField::from_physical(grid, std::move(values));
    }
    v = spectral::dealias(v);
    const double sup = spectral::sup_norm(v);
    if (sup > 0.0) v *= 1.0 / sup;
    return v;
}

state::FluidState perturbed_initial(const Config& config) {
    const auto base = solver::build_initial_state(config.run);
    spectral::VectorField w = base.w();
    spectral::VectorField shift = seeded_perturbation(base.grid(), config.experiment.seed);
    shift *= config.experiment.perturbation;
    w += shift;
    return state::FluidState(base.time(), base.rho_dev(), std::move(w), base.lame(), base.units());
}

double fit_on_first_half(lagrangian::StabilityReport& report) {
    const double fit_until = report.t.front() + 0.5 * (report.t.back() - report.t.front());
    report.gronwall_constant = lagrangian::fit_gronwall_constant(report, fit_until);
    return fit_until;
}

PairResult run_uniqueness_pair(const Config& config, int jobs) {
    PairResult out;
    parallel_for(2, jobs, [&](int i) {
        if (i == 0) {
            out.base = solver::run(config.run);
        } else {
            out.perturbed = solver::run(config.run, perturbed_initial(config));
        }
    });
    out.report = lagrangian::stability_energy(out.base, out.perturbed, config.run.make_law());
    out.fit_until = fit_on_first_half(out.report);
    return out;
}

SweepResult run_striated_sweep(const Config& config, int jobs) {
    const auto& e = config.experiment;
    const double length = config.run.length;
    const double p = config.run.exponents.p;
    const int count = static_cast<int>(e.sweep_n.size());
    std::vector<std::vector<striated::SweepCell>> per_n(e.sweep_n.size());
    SweepResult out;
    out.checkerboard_lhs.assign(e.sweep_n.size(), 0.0);

    parallel_for(count, jobs, [&](int i) {
        const int n = e.sweep_n[static_cast<std::size_t>(i)];
        per_n[static_cast<std::size_t>(i)] = striated::disc_sweep({n}, e.sweep_widths, length, e.sweep_radius, e.eta, p);
        const spectral::TorusGrid grid(2, n, length);
        const spectral::Point center{0.5 * length, 0.5 * length, 0.0};
        const auto family = striated::patch_family(grid, center, e.sweep_radius * length, p);
        const auto board = striated::checkerboard(grid, e.checkerboard_cells, 1.0);
        out.checkerboard_lhs[static_cast<std::size_t>(i)] = striated::tang_estimate_check(board, family, e.eta).lhs;
    });

    for (const auto& cells : per_n) out.cells.insert(out.cells.end(), cells.begin(), cells.end());
    for (const auto& c : per_n.front()) {
        out.fitted_constant = std::max(out.fitted_constant, c.tang.ratio());
        out.fitted_dx_constant = std::max(out.fitted_dx_constant, c.tang_dx.ratio());
    }
    for (const auto& c : out.cells) {
        if (out.fitted_constant > 0.0) out.worst_relative = std::max(out.worst_relative, c.tang.ratio() / out.fitted_constant);
        if (out.fitted_dx_constant > 0.0) {
            out.worst_dx_relative = std::max(out.worst_dx_relative, c.tang_dx.ratio() / out.fitted_dx_constant);
        }
    }
    auto max_lhs = [](const std::vector<striated::SweepCell>& cells) {
        double m = 0.0;
        for (const auto& c : cells) m = std::max(m, c.tang.lhs);
        return m;
    };
    const double first = max_lhs(per_n.front());
    if (first > 0.0) out.striated_growth = max_lhs(per_n.back()) / first;
    if (out.checkerboard_lhs.front() > 0.0) {
        out.checkerboard_growth = out.checkerboard_lhs.back() / out.checkerboard_lhs.front();
    }
    return out;
}

}  // namespace cns::cli
