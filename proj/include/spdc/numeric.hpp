#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "errors.hpp"

namespace spdc {

inline constexpr double c_light = 299792458.0;  // vacuum speed of light, m/s
inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double two_pi = 2.0 * pi;

// sin(x)/x with sinc(0) = 1.
inline double sinc(double x) {
    if (x == 0.0) return 1.0;
    return std::sin(x) / x;
}

inline std::vector<double> linspace(double a, double b, std::size_t n) {
    if (n < 2) throw domain_error("linspace: need at least 2 samples");
    std::vector<double> v(n);
    const double step = (b - a) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) v[i] = a + step * static_cast<double>(i);
    v.back() = b;
    return v;
}

namespace detail {
template <class F>
double pairwise_sum_impl(const F& f, std::size_t lo, std::size_t hi) {
    const std::size_t n = hi - lo;
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += f(i);
        return s;
    }
    const std::size_t mid = lo + n / 2;
    return pairwise_sum_impl(f, lo, mid) + pairwise_sum_impl(f, mid, hi);
}
}  // namespace detail

// Fixed-order pairwise reduction: bit-stable for a given element order, so
// normalizations are reproducible run to run regardless of how grids were filled.
template <class F>
double pairwise_sum(std::size_t n, F&& f) {
    if (n == 0) return 0.0;
    return detail::pairwise_sum_impl(f, 0, n);
}

inline double pairwise_sum(const std::vector<double>& v) {
    return pairwise_sum(v.size(), [&](std::size_t i) { return v[i]; });
}

// Full width at half maximum of a sampled peak, with linear interpolation of the
// two half-max crossings. Accepts axes in either direction.
inline double fwhm(std::vector<double> x, std::vector<double> y) {
    if (x.size() != y.size() || x.size() < 3)
        throw domain_error("fwhm: need matching axes with at least 3 samples");
    if (x.front() > x.back()) {
        std::vector<double> xr(x.rbegin(), x.rend()), yr(y.rbegin(), y.rend());
        x.swap(xr);
        y.swap(yr);
    }
    std::size_t ipk = 0;
    for (std::size_t i = 1; i < y.size(); ++i)
        if (y[i] > y[ipk]) ipk = i;
    const double half = y[ipk] / 2.0;
    double lo = 0.0, hi = 0.0;
    bool found_lo = false, found_hi = false;
    for (std::size_t j = ipk; j > 0; --j) {
        if (y[j - 1] < half) {
            lo = x[j - 1] + (x[j] - x[j - 1]) * (half - y[j - 1]) / (y[j] - y[j - 1]);
            found_lo = true;
            break;
        }
    }
    for (std::size_t j = ipk; j + 1 < y.size(); ++j) {
        if (y[j + 1] < half) {
            hi = x[j] + (x[j + 1] - x[j]) * (half - y[j]) / (y[j + 1] - y[j]);
            found_hi = true;
            break;
        }
    }
    if (!found_lo || !found_hi)
        throw numeric_error("fwhm: half-maximum level never crossed inside the window");
    return hi - lo;
}

// Full 1/e^2 width of a sampled intensity profile, interpolated like fwhm.
inline double full_width_1e2(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 3)
        throw domain_error("full_width_1e2: need matching axes with at least 3 samples");
    std::size_t ipk = 0;
    for (std::size_t i = 1; i < y.size(); ++i)
        if (y[i] > y[ipk]) ipk = i;
    const double level = y[ipk] / (std::exp(1.0) * std::exp(1.0));
    double lo = 0.0, hi = 0.0;
    bool found_lo = false, found_hi = false;
    for (std::size_t j = ipk; j > 0; --j) {
        if (y[j - 1] < level) {
            lo = x[j - 1] + (x[j] - x[j - 1]) * (level - y[j - 1]) / (y[j] - y[j - 1]);
            found_lo = true;
            break;
        }
    }
    for (std::size_t j = ipk; j + 1 < y.size(); ++j) {
        if (y[j + 1] < level) {
            hi = x[j] + (x[j + 1] - x[j]) * (level - y[j]) / (y[j + 1] - y[j]);
            found_hi = true;
            break;
        }
    }
    if (!found_lo || !found_hi)
        throw numeric_error("full_width_1e2: 1/e^2 level never crossed inside the window");
    return hi - lo;
}

}  // namespace spdc
