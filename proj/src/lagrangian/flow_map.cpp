#include "cns/lagrangian/flow_map.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <sstream>

#include "cns/spectral/operators.hpp"

namespace cns::lagrangian {

using spectral::FourierInterpolator;
using spectral::Point;

double small_det(const double* m, int d) {
    switch (d) {
        case 1:
            return m[0];
        case 2:
            return m[0] * m[3] - m[1] * m[2];
        case 3:
            return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
                   m[2] * (m[3] * m[7] - m[4] * m[6]);
        default:
            throw std::invalid_argument("small_det: d must be 1, 2 or 3");
    }
}

void small_adjugate(const double* m, int d, double* adj) {
    switch (d) {
        case 1:
            adj[0] = 1.0;
            return;
        case 2:
            adj[0] = m[3];
            adj[1] = -m[1];
            adj[2] = -m[2];
            adj[3] = m[0];
            return;
        case 3:
            adj[0] = m[4] * m[8] - m[5] * m[7];
            adj[1] = m[2] * m[7] - m[1] * m[8];
            adj[2] = m[1] * m[5] - m[2] * m[4];
            adj[3] = m[5] * m[6] - m[3] * m[8];
            adj[4] = m[0] * m[8] - m[2] * m[6];
            adj[5] = m[2] * m[3] - m[0] * m[5];
            adj[6] = m[3] * m[7] - m[4] * m[6];
            adj[7] = m[1] * m[6] - m[0] * m[7];
            adj[8] = m[0] * m[4] - m[1] * m[3];
            return;
        default:
            throw std::invalid_argument("small_adjugate: d must be 1, 2 or 3");
    }
}

FlowMap FlowMap::identity(const TorusGrid& grid, double t) {
    TensorField jac(grid);
    for (int i = 0; i < grid.dim(); ++i) jac(i, i) = SpectralField::constant(grid, 1.0);
    return from_parts(t, VectorField(grid), std::move(jac));
}

FlowMap FlowMap::from_parts(double t, VectorField displacement, TensorField jacobian) {
    const auto& grid = displacement.grid();
    const int d = grid.dim();
    const std::size_t n = grid.size();
    std::vector<double> det(n);
    std::vector<std::vector<double>> inv(static_cast<std::size_t>(d * d), std::vector<double>(n));
    std::vector<std::vector<double>> adj(static_cast<std::size_t>(d * d), std::vector<double>(n));
    double m[9], a[9];
    for (std::size_t k = 0; k < n; ++k) {
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) m[i * d + j] = jacobian(i, j).physical()[k];
        }
        det[k] = small_det(m, d);
        if (!(det[k] > 0.25)) {
            std::ostringstream msg;
            msg << "flow map: det D psi = " << det[k] << " <= 0.25 at t = " << t;
            throw FlowStabilityError(msg.str());
        }
        small_adjugate(m, d, a);
        for (int e = 0; e < d * d; ++e) {
            adj[e][k] = a[e];
            inv[e][k] = a[e] / det[k];
        }
    }
    TensorField inverse(grid), adjugate(grid);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            inverse(i, j) = SpectralField::from_physical(grid, std::move(inv[i * d + j]));
            adjugate(i, j) = SpectralField::from_physical(grid, std::move(adj[i * d + j]));
        }
    }
    return FlowMap{t,
                   std::move(displacement),
                   std::move(jacobian),
                   SpectralField::from_physical(grid, std::move(det)),
                   std::move(inverse),
                   std::move(adjugate)};
}

std::vector<Point> FlowMap::positions() const {
    const auto& g = grid();
    std::vector<Point> out(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
        out[k] = g.coordinates(k);
        for (int a = 0; a < g.dim(); ++a) out[k][a] += displacement[a].physical()[k];
    }
    return out;
}

namespace {

FourierInterpolator make_interpolator(const SpectralField& f, const InterpolationOptions& o) {
    return FourierInterpolator(f, o.method, o.oversample, o.stencil);
}

/// Interpolators for u and grad u at one time.
struct SampledVelocity {
    std::vector<FourierInterpolator> u;
    std::vector<FourierInterpolator> grad;  ///< row-major (i, j) = d_j u_i
};

std::shared_ptr<SampledVelocity> sample(const VectorField& u, const InterpolationOptions& o) {
    auto s = std::make_shared<SampledVelocity>();
    const int d = u.size();
    const TensorField g = spectral::gradient(u);
    for (int i = 0; i < d; ++i) s->u.push_back(make_interpolator(u[i], o));
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) s->grad.push_back(make_interpolator(g(i, j), o));
    }
    return s;
}

class VelocitySampler {
public:
    VelocitySampler(const VelocityHistory& history, const InterpolationOptions& options)
        : history_(history), options_(options) {}

    std::shared_ptr<SampledVelocity> at(double t) {
        auto it = cache_.find(t);
        if (it != cache_.end()) return it->second;
        // Only the most recent samples are reused by later steps.
        while (cache_.size() >= 3) cache_.erase(cache_.begin());
        auto s = sample(history_.at(t), options_);
        cache_.emplace(t, s);
        return s;
    }

private:
    const VelocityHistory& history_;
    InterpolationOptions options_;
    std::map<double, std::shared_ptr<SampledVelocity>> cache_;
};

/// Right side of the (psi, D psi) system at one point; state = [psi (d), M (d x d)].
void flow_rhs(const SampledVelocity& s, int d, const double* state, double* out) {
    Point x{0.0, 0.0, 0.0};
    for (int a = 0; a < d; ++a) x[a] = state[a];
    double g[9];
    for (int a = 0; a < d; ++a) out[a] = s.u[a](x);
    for (int e = 0; e < d * d; ++e) g[e] = s.grad[e](x);
    const double* m = state + d;
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            double acc = 0.0;
            for (int k = 0; k < d; ++k) acc += g[i * d + k] * m[k * d + j];
            out[d + i * d + j] = acc;
        }
    }
}

}  // namespace

FlowPath integrate_flow(const VelocityHistory& history, double horizon, const InterpolationOptions& options,
                        double k0) {
    const auto& grid = history.grid();
    const int d = grid.dim();
    const double t0 = history.start();
    const double tol = 1e-12 * std::max(1.0, std::abs(history.end()));
    if (horizon < t0 - tol || horizon > history.end() + tol) {
        throw std::invalid_argument("integrate_flow: horizon outside the velocity history");
    }
    // Step boundaries: the sample times up to the horizon, plus the horizon itself.
    std::vector<double> marks;
    for (double t : history.times()) {
        if (t <= horizon + tol) marks.push_back(t);
    }
    if (horizon - marks.back() > tol) marks.push_back(horizon);

    const std::size_t n = grid.size();
    const int width = d + d * d;
    std::vector<double> state(n * static_cast<std::size_t>(width), 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        const auto y = grid.coordinates(k);
        double* s = &state[k * width];
        for (int a = 0; a < d; ++a) s[a] = y[a];
        for (int a = 0; a < d; ++a) s[d + a * d + a] = 1.0;
    }

    auto snapshot = [&](double t) {
        VectorField disp(grid);
        TensorField jac(grid);
        std::vector<std::vector<double>> dv(static_cast<std::size_t>(d), std::vector<double>(n));
        std::vector<std::vector<double>> jv(static_cast<std::size_t>(d * d), std::vector<double>(n));
        for (std::size_t k = 0; k < n; ++k) {
            const auto y = grid.coordinates(k);
            const double* s = &state[k * width];
            for (int a = 0; a < d; ++a) dv[a][k] = s[a] - y[a];
            for (int e = 0; e < d * d; ++e) jv[e][k] = s[d + e];
        }
        for (int a = 0; a < d; ++a) disp[a] = SpectralField::from_physical(grid, std::move(dv[a]));
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) jac(i, j) = SpectralField::from_physical(grid, std::move(jv[i * d + j]));
        }
        FlowMap map = FlowMap::from_parts(t, std::move(disp), std::move(jac));
        map.gradient_integral = history.gradient_integral(t);
        map.within_k0 = map.gradient_integral <= k0;
        return map;
    };

    FlowPath path;
    path.maps.push_back(snapshot(marks.front()));
    VelocitySampler sampler(history, options);
    std::size_t i = 0;
    std::vector<double> k1(width), k2(width), k3(width), k4(width), tmp(width);
    while (i + 1 < marks.size()) {
        std::size_t next = i + 1;
        double mid = 0.5 * (marks[i] + marks[i + 1]);
        if (i + 2 < marks.size()) {
            const double centre = 0.5 * (marks[i] + marks[i + 2]);
            if (std::abs(marks[i + 1] - centre) <= 1e-9 * (marks[i + 2] - marks[i])) {
                next = i + 2;
                mid = marks[i + 1];
            }
        }
        const double ta = marks[i];
        const double tb = marks[next];
        const double h = tb - ta;
        const auto sa = sampler.at(ta);
        const auto sm = sampler.at(mid);
        const auto sb = sampler.at(tb);
        for (std::size_t k = 0; k < n; ++k) {
            double* s = &state[k * width];
            flow_rhs(*sa, d, s, k1.data());
            for (int e = 0; e < width; ++e) tmp[e] = s[e] + 0.5 * h * k1[e];
            flow_rhs(*sm, d, tmp.data(), k2.data());
            for (int e = 0; e < width; ++e) tmp[e] = s[e] + 0.5 * h * k2[e];
            flow_rhs(*sm, d, tmp.data(), k3.data());
            for (int e = 0; e < width; ++e) tmp[e] = s[e] + h * k3[e];
            flow_rhs(*sb, d, tmp.data(), k4.data());
            for (int e = 0; e < width; ++e) s[e] += h / 6.0 * (k1[e] + 2.0 * k2[e] + 2.0 * k3[e] + k4[e]);
        }
        path.maps.push_back(snapshot(tb));
        i = next;
    }
    return path;
}

SpectralField compose(const SpectralField& f, const FlowMap& flow, const InterpolationOptions& options) {
    return SpectralField::from_physical(flow.grid(), make_interpolator(f, options).evaluate(flow.positions()));
}

VectorField compose(const VectorField& f, const FlowMap& flow, const InterpolationOptions& options) {
    const auto points = flow.positions();
    VectorField out(flow.grid(), f.size());
    for (int a = 0; a < f.size(); ++a) {
        out[a] = SpectralField::from_physical(flow.grid(), make_interpolator(f[a], options).evaluate(points));
    }
    return out;
}

InverseFlow inverse_flow(const FlowMap& flow, int max_iterations, double tolerance,
                         const InterpolationOptions& options) {
    const auto& grid = flow.grid();
    const int d = grid.dim();
    const std::size_t n = grid.size();
    std::vector<FourierInterpolator> disp;
    for (int a = 0; a < d; ++a) disp.push_back(make_interpolator(flow.displacement[a], options));
    // Start from e = -d(x).
    std::vector<std::vector<double>> e(static_cast<std::size_t>(d));
    for (int a = 0; a < d; ++a) {
        const auto& v = flow.displacement[a].physical();
        e[a].assign(v.begin(), v.end());
        for (auto& x : e[a]) x = -x;
    }
    InverseFlow out{VectorField(grid), 0, 0.0};
    std::vector<spectral::Point> y(n);
    for (int it = 1; it <= max_iterations; ++it) {
        for (std::size_t k = 0; k < n; ++k) {
            y[k] = grid.coordinates(k);
            for (int a = 0; a < d; ++a) y[k][a] += e[a][k];
        }
        double change = 0.0;
        for (int a = 0; a < d; ++a) {
            const auto dy = disp[a].evaluate(y);
            for (std::size_t k = 0; k < n; ++k) {
                const double next = -dy[k];
                change = std::max(change, std::abs(next - e[a][k]));
                e[a][k] = next;
            }
        }
        out.iterations = it;
        out.last_change = change;
        if (change <= tolerance) break;
    }
    for (int a = 0; a < d; ++a) out.displacement[a] = SpectralField::from_physical(grid, std::move(e[a]));
    return out;
}

std::vector<VectorField> lagrangian_velocity(const VelocityHistory& history, const FlowPath& path,
                                             const InterpolationOptions& options) {
    std::vector<VectorField> out;
    for (const auto& map : path.maps) out.push_back(compose(history.at(map.time), map, options));
    return out;
}

}  // namespace cns::lagrangian
