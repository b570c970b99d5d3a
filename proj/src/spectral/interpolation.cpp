#include "cns/spectral/interpolation.hpp"

#include <cmath>
#include <stdexcept>

namespace cns::spectral {

FourierInterpolator::FourierInterpolator(const SpectralField& f, Method method, int oversample, int stencil)
    : grid_(f.grid()), method_(method), stencil_(stencil) {
    if (method == Method::Exact) {
        coeffs_ = f.spectral();
        return;
    }
    if (oversample < 1 || stencil < 2 || stencil > 16 || stencil % 2 != 0) {
        throw std::invalid_argument("FourierInterpolator: bad oversampling parameters");
    }
    const int d = grid_.dim();
    const int n = grid_.n();
    fine_n_ = n * oversample;
    fine_h_ = grid_.length() / fine_n_;
    std::size_t fine_size = 1;
    for (int a = 0; a < d; ++a) fine_size *= static_cast<std::size_t>(fine_n_);

    std::vector<Complex> padded(fine_size, Complex(0.0, 0.0));
    const auto& c = f.spectral();
    for (std::size_t flat = 0; flat < c.size(); ++flat) {
        auto idx = grid_.unflatten(flat);
        // A Nyquist index contributes half to +N/2 and half to -N/2.
        int nyquist_axes[kMaxDim];
        int count = 0;
        for (int a = 0; a < d; ++a) {
            if (grid_.is_nyquist(idx[a])) nyquist_axes[count++] = a;
        }
        const double weight = 1.0 / static_cast<double>(1 << count);
        for (int mask = 0; mask < (1 << count); ++mask) {
            std::size_t target = 0;
            for (int a = 0; a < d; ++a) {
                int m = grid_.mode(idx[a]);
                for (int b = 0; b < count; ++b) {
                    if (nyquist_axes[b] == a && (mask & (1 << b))) m = -m;
                }
                int fi = ((m % fine_n_) + fine_n_) % fine_n_;
                target = target * static_cast<std::size_t>(fine_n_) + static_cast<std::size_t>(fi);
            }
            padded[target] += weight * c[flat];
        }
    }
    fft_inplace(padded, d, fine_n_, +1);
    fine_.resize(fine_size);
    for (std::size_t i = 0; i < fine_size; ++i) fine_[i] = padded[i].real();
}

double FourierInterpolator::operator()(const Point& x) const {
    return method_ == Method::Exact ? exact(x) : local(x);
}

std::vector<double> FourierInterpolator::evaluate(const std::vector<Point>& points) const {
    std::vector<double> out(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) out[i] = (*this)(points[i]);
    return out;
}

double FourierInterpolator::exact(const Point& x) const {
    const int d = grid_.dim();
    const int n = grid_.n();
    const double unit = grid_.wavenumber_unit();
    std::vector<Complex> w[kMaxDim];
    for (int a = 0; a < d; ++a) {
        w[a].resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            const double phase = unit * grid_.mode(i) * x[a];
            w[a][static_cast<std::size_t>(i)] =
                grid_.is_nyquist(i) ? Complex(std::cos(phase), 0.0) : Complex(std::cos(phase), std::sin(phase));
        }
    }
    const std::size_t un = static_cast<std::size_t>(n);
    Complex total(0.0, 0.0);
    if (d == 1) {
        for (std::size_t i = 0; i < un; ++i) total += w[0][i] * coeffs_[i];
    } else if (d == 2) {
        for (std::size_t i = 0; i < un; ++i) {
            Complex row(0.0, 0.0);
            const Complex* c = &coeffs_[i * un];
            for (std::size_t j = 0; j < un; ++j) row += w[1][j] * c[j];
            total += w[0][i] * row;
        }
    } else {
        for (std::size_t i = 0; i < un; ++i) {
            Complex plane(0.0, 0.0);
            for (std::size_t j = 0; j < un; ++j) {
                Complex row(0.0, 0.0);
                const Complex* c = &coeffs_[(i * un + j) * un];
                for (std::size_t k = 0; k < un; ++k) row += w[2][k] * c[k];
                plane += w[1][j] * row;
            }
            total += w[0][i] * plane;
        }
    }
    return total.real();
}

double FourierInterpolator::local(const Point& x) const {
    const int d = grid_.dim();
    const int s = stencil_;
    int base[kMaxDim] = {0, 0, 0};
    double weights[kMaxDim][16];
    for (int a = 0; a < d; ++a) {
        const double u = x[a] / fine_h_;
        const double fl = std::floor(u);
        base[a] = static_cast<int>(fl) - s / 2 + 1;
        const double frac = u - fl;  // position relative to node s/2 - 1
        for (int j = 0; j < s; ++j) {
            const double xj = static_cast<double>(j - (s / 2 - 1));
            double num = 1.0;
            double den = 1.0;
            for (int k = 0; k < s; ++k) {
                if (k == j) continue;
                const double xk = static_cast<double>(k - (s / 2 - 1));
                num *= frac - xk;
                den *= xj - xk;
            }
            weights[a][j] = num / den;
        }
    }
    auto wrap = [this](int i) {
        i %= fine_n_;
        return i < 0 ? i + fine_n_ : i;
    };
    const std::size_t fn = static_cast<std::size_t>(fine_n_);
    double total = 0.0;
    if (d == 1) {
        for (int i = 0; i < s; ++i) total += weights[0][i] * fine_[static_cast<std::size_t>(wrap(base[0] + i))];
    } else if (d == 2) {
        for (int i = 0; i < s; ++i) {
            const std::size_t row = static_cast<std::size_t>(wrap(base[0] + i)) * fn;
            double acc = 0.0;
            for (int j = 0; j < s; ++j) acc += weights[1][j] * fine_[row + static_cast<std::size_t>(wrap(base[1] + j))];
            total += weights[0][i] * acc;
        }
    } else {
        for (int i = 0; i < s; ++i) {
            const std::size_t pi = static_cast<std::size_t>(wrap(base[0] + i));
            double plane = 0.0;
            for (int j = 0; j < s; ++j) {
                const std::size_t row = (pi * fn + static_cast<std::size_t>(wrap(base[1] + j))) * fn;
                double acc = 0.0;
                for (int k = 0; k < s; ++k) acc += weights[2][k] * fine_[row + static_cast<std::size_t>(wrap(base[2] + k))];
                plane += weights[1][j] * acc;
            }
            total += weights[0][i] * plane;
        }
    }
    return total;
}

}  // namespace cns::spectral
