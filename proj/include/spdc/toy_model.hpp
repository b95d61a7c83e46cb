#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "errors.hpp"
#include "numeric.hpp"

namespace spdc {

// 1-D wavefunction sampled on a uniform grid (position or momentum),
// kept at unit discrete norm: sum |psi|^2 = 1.
struct Wavefunction1D {
    std::vector<double> grid;                  // x (m) or k (1/m)
    std::vector<std::complex<double>> values;  // same length as grid

    double step() const { return grid[1] - grid[0]; }

    double squared_norm() const {
        return pairwise_sum(values.size(), [&](std::size_t i) { return std::norm(values[i]); });
    }

    void normalize() {
        const double n2 = squared_norm();
        if (!(n2 > 0.0)) throw numeric_error("wavefunction: cannot normalize all-zero samples");
        const double s = 1.0 / std::sqrt(n2);
        for (auto& v : values) v *= s;
    }
};

inline std::vector<double> make_position_grid(double sigma, std::size_t n = 4096,
                                              double span_sigmas = 8.0) {
    if (!(sigma > 0.0)) throw domain_error("make_position_grid: sigma must be positive");
    return linspace(-span_sigmas * sigma, span_sigmas * sigma, n);
}

namespace detail {
inline void require_span(const std::vector<double>& grid, double sigma, const char* who) {
    if (grid.size() < 8) throw domain_error(std::string(who) + ": grid too coarse");
    if (grid.front() > -6.0 * sigma || grid.back() < 6.0 * sigma)
        throw domain_error(std::string(who) +
                           ": grid too narrow; it must span at least +-6 sigma");
}
}  // namespace detail

// Fundamental Gaussian mode in position space: psi(x) ~ exp(-x^2 / 4 sigma^2),
// so the intensity |psi|^2 has standard deviation sigma.
inline Wavefunction1D gaussian_mode_position(double sigma, const std::vector<double>& grid) {
    if (!(sigma > 0.0)) throw domain_error("gaussian_mode: sigma must be positive");
    detail::require_span(grid, sigma, "gaussian_mode");
    Wavefunction1D wf;
    wf.grid = grid;
    wf.values.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        wf.values[i] = std::exp(-grid[i] * grid[i] / (4.0 * sigma * sigma));
    wf.normalize();
    return wf;
}

// The same mode in momentum space: phi(k) ~ exp(-k^2 sigma^2).
inline Wavefunction1D gaussian_mode_momentum(double sigma, const std::vector<double>& k_grid) {
    if (!(sigma > 0.0)) throw domain_error("gaussian_mode: sigma must be positive");
    if (k_grid.size() < 8) throw domain_error("gaussian_mode: momentum grid too coarse");
    if (k_grid.front() > -3.0 / sigma || k_grid.back() < 3.0 / sigma)
        throw domain_error("gaussian_mode: momentum grid too narrow for width 1/(2 sigma)");
    Wavefunction1D wf;
    wf.grid = k_grid;
    wf.values.resize(k_grid.size());
    for (std::size_t i = 0; i < k_grid.size(); ++i)
        wf.values[i] = std::exp(-k_grid[i] * k_grid[i] * sigma * sigma);
    wf.normalize();
    return wf;
}

// Unitary-convention direct Fourier transforms (O(n^2), fine at 4096):
//   psi~(k) = (dx/sqrt(2 pi)) sum psi(x) e^{-ikx},  inverse with e^{+ikx}.
inline Wavefunction1D fourier_to_momentum(const Wavefunction1D& wf,
                                          const std::vector<double>& k_grid) {
    Wavefunction1D out;
    out.grid = k_grid;
    out.values.assign(k_grid.size(), 0.0);
    const double dx = wf.step();
    const double scale = dx / std::sqrt(two_pi);
    for (std::size_t j = 0; j < k_grid.size(); ++j) {
        std::complex<double> acc = 0.0;
        for (std::size_t m = 0; m < wf.grid.size(); ++m)
            acc += wf.values[m] * std::exp(std::complex<double>(0.0, -k_grid[j] * wf.grid[m]));
        out.values[j] = acc * scale;
    }
    return out;
}

inline Wavefunction1D fourier_to_position(const Wavefunction1D& wf,
                                          const std::vector<double>& x_grid) {
    Wavefunction1D out;
    out.grid = x_grid;
    out.values.assign(x_grid.size(), 0.0);
    const double dk = wf.step();
    const double scale = dk / std::sqrt(two_pi);
    for (std::size_t j = 0; j < x_grid.size(); ++j) {
        std::complex<double> acc = 0.0;
        for (std::size_t m = 0; m < wf.grid.size(); ++m)
            acc += wf.values[m] * std::exp(std::complex<double>(0.0, x_grid[j] * wf.grid[m]));
        out.values[j] = acc * scale;
    }
    return out;
}

// Heralded signal state for a plane-wave pump of momentum k_p when the idler
// is projected onto the Gaussian mode of width sigma:
//   Psi_s(x) = integral dk e^{ikx}/sqrt(2 pi) phi(k_p - k)
// evaluated by trapezoidal quadrature on a k window of +-6/sigma around k_p
// (where the integrand lives). Normalized on return.
inline Wavefunction1D herald_signal(double k_p, double sigma, const std::vector<double>& grid,
                                    std::size_t k_samples = 4096) {
    if (!(sigma > 0.0)) throw domain_error("herald_signal: sigma must be positive");
    detail::require_span(grid, sigma, "herald_signal");
    const double dx = grid[1] - grid[0];
    const double k_max = std::fabs(k_p) + 6.0 / sigma;
    if (k_max * dx >= pi)
        throw domain_error(
            "herald_signal: pump momentum is beyond the grid's Nyquist limit (aliasing); use a "
            "finer position grid");

    const std::vector<double> ks = linspace(k_p - 6.0 / sigma, k_p + 6.0 / sigma, k_samples);
    const double dk = ks[1] - ks[0];
    Wavefunction1D out;
    out.grid = grid;
    out.values.assign(grid.size(), 0.0);
    for (std::size_t j = 0; j < grid.size(); ++j) {
        std::complex<double> acc = 0.0;
        for (std::size_t m = 0; m < ks.size(); ++m) {
            const double km = ks[m];
            const double arg = k_p - km;
            const double phi = std::exp(-arg * arg * sigma * sigma);
            const double w = (m == 0 || m + 1 == ks.size()) ? 0.5 : 1.0;
            acc += w * phi * std::exp(std::complex<double>(0.0, km * grid[j]));
        }
        out.values[j] = acc * (dk / std::sqrt(two_pi));
    }
    out.normalize();
    return out;
}

// Closed form the heralded state must reproduce: a Gaussian of the idler
// mode's width carrying the pump momentum as a phase ramp.
inline Wavefunction1D heralded_closed_form(double k_p, double sigma,
                                           const std::vector<double>& grid) {
    if (!(sigma > 0.0)) throw domain_error("heralded_closed_form: sigma must be positive");
    detail::require_span(grid, sigma, "heralded_closed_form");
    Wavefunction1D wf;
    wf.grid = grid;
    wf.values.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid[i];
        wf.values[i] = std::exp(std::complex<double>(-x * x / (4.0 * sigma * sigma), k_p * x));
    }
    wf.normalize();
    return wf;
}

// |<a|b>|^2 on unit-normalized copies; the grids must match exactly.
inline double fidelity(const Wavefunction1D& a, const Wavefunction1D& b) {
    if (a.grid.size() != b.grid.size())
        throw domain_error("fidelity: wavefunctions live on different grids");
    for (std::size_t i = 0; i < a.grid.size(); ++i)
        if (a.grid[i] != b.grid[i])
            throw domain_error("fidelity: wavefunctions live on different grids");
    const double na = a.squared_norm(), nb = b.squared_norm();
    if (!(na > 0.0) || !(nb > 0.0)) throw domain_error("fidelity: zero-norm wavefunction");
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        acc += std::conj(a.values[i]) * b.values[i];
    return std::norm(acc) / (na * nb);
}

// Standard deviation of the intensity |psi|^2 over the grid.
inline double fitted_width(const Wavefunction1D& wf) {
    double w = 0.0, m1 = 0.0, m2 = 0.0;
    for (std::size_t i = 0; i < wf.grid.size(); ++i) {
        const double p = std::norm(wf.values[i]);
        w += p;
        m1 += p * wf.grid[i];
        m2 += p * wf.grid[i] * wf.grid[i];
    }
    if (!(w > 0.0)) throw domain_error("fitted_width: zero-norm wavefunction");
    m1 /= w;
    m2 /= w;
    const double var = m2 - m1 * m1;
    if (!(var > 0.0)) throw numeric_error("fitted_width: degenerate intensity distribution");
    return std::sqrt(var);
}

// Least-squares slope of the unwrapped phase over |x| <= half_window.
inline double phase_slope(const Wavefunction1D& wf, double half_window) {
    std::vector<double> xs, ph;
    double prev = 0.0;
    double offset = 0.0;
    bool first = true;
    for (std::size_t i = 0; i < wf.grid.size(); ++i) {
        if (std::fabs(wf.grid[i]) > half_window) continue;
        double p = std::arg(wf.values[i]);
        if (!first) {
            while (p + offset - prev > pi) offset -= two_pi;
            while (p + offset - prev < -pi) offset += two_pi;
        }
        p += offset;
        prev = p;
        first = false;
        xs.push_back(wf.grid[i]);
        ph.push_back(p);
    }
    if (xs.size() < 2) throw domain_error("phase_slope: window contains fewer than 2 samples");
    double xm = 0.0, pm = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        xm += xs[i];
        pm += ph[i];
    }
    xm /= static_cast<double>(xs.size());
    pm /= static_cast<double>(xs.size());
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        num += (xs[i] - xm) * (ph[i] - pm);
        den += (xs[i] - xm) * (xs[i] - xm);
    }
    if (!(den > 0.0)) throw numeric_error("phase_slope: degenerate sample window");
    return num / den;
}

}  // namespace spdc
