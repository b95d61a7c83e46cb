#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "beam.hpp"
#include "errors.hpp"
#include "numeric.hpp"

namespace spdc {

// A Gaussian collection mode in the far field, described by the full 1/e^2
// divergence it accepts. An infinite angular_spread_rad collects everything.
struct CollectionMode {
    double center_wavelength_m = 0.0;
    double angular_spread_rad = 0.0;  // full 1/e^2 angle
    double center_angle_rad = 0.0;

    // Waist of the fiber/free-space mode this far field corresponds to.
    double waist_m() const { return waist_from_angle(center_wavelength_m, angular_spread_rad); }
};

// Far-field amplitude of the collection mode at external angle theta:
// exp(-((theta - c) / (dTheta/2))^2). Intensity falls to 1/e^2 at the
// half-spread, matching the beam-divergence convention.
inline double mode_amplitude(const CollectionMode& m, double theta_rad) {
    if (std::isinf(m.angular_spread_rad)) return 1.0;
    if (!(m.angular_spread_rad > 0.0))
        throw domain_error("collection mode: angular spread must be positive");
    const double t = (theta_rad - m.center_angle_rad) / (m.angular_spread_rad / 2.0);
    return std::exp(-t * t);
}

// Sample the mode on an angle axis and normalize to unit discrete norm,
// sum |u|^2 = 1, so overlap integrals read directly as probabilities.
inline std::vector<double> sample_mode(const CollectionMode& m,
                                       const std::vector<double>& theta_axis) {
    if (theta_axis.size() < 2) throw domain_error("sample_mode: need at least 2 angle samples");
    std::vector<double> u(theta_axis.size());
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = mode_amplitude(m, theta_axis[i]);
    const double n2 = pairwise_sum(u.size(), [&](std::size_t i) { return u[i] * u[i]; });
    if (!(n2 > 0.0))
        throw numeric_error("sample_mode: mode has no support on the given angle axis");
    const double s = 1.0 / std::sqrt(n2);
    for (auto& v : u) v *= s;
    return u;
}

}  // namespace spdc
