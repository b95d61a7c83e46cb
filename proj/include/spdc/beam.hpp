#pragma once

#include <cmath>

#include "errors.hpp"
#include "numeric.hpp"

namespace spdc {

// Dimensionless focusing parameter xi = lambda * L / (2 * pi * w0^2).
// lambda is the vacuum wavelength; using the vacuum value everywhere keeps
// the parameter consistent between design targets and reported values.
inline double focusing_parameter(double lambda_m, double length_m, double waist_m) {
    if (lambda_m <= 0.0 || length_m <= 0.0 || waist_m <= 0.0)
        throw domain_error("focusing_parameter: wavelength, length and waist must be positive");
    return lambda_m * length_m / (two_pi * waist_m * waist_m);
}

// Waist that realizes a given focusing parameter in a crystal of given length.
inline double waist_for_focusing(double lambda_m, double length_m, double xi) {
    if (lambda_m <= 0.0 || length_m <= 0.0 || xi <= 0.0)
        throw domain_error("waist_for_focusing: wavelength, length and focusing must be positive");
    return std::sqrt(lambda_m * length_m / (two_pi * xi));
}

// Gaussian-beam far field: full 1/e^2 divergence angle of a beam with waist w0,
// dTheta = 2 * lambda / (pi * w0).
inline double angle_from_waist(double lambda_m, double waist_m) {
    if (lambda_m <= 0.0 || waist_m <= 0.0)
        throw domain_error("angle_from_waist: wavelength and waist must be positive");
    return 2.0 * lambda_m / (pi * waist_m);
}

// Inverse of angle_from_waist: the waist whose far field fills a given full
// 1/e^2 divergence angle.
inline double waist_from_angle(double lambda_m, double full_angle_rad) {
    if (lambda_m <= 0.0 || full_angle_rad <= 0.0)
        throw domain_error("waist_from_angle: wavelength and angle must be positive");
    return 2.0 * lambda_m / (pi * full_angle_rad);
}

// 1/e^2 radius of a Gaussian beam a distance z from its waist, with the
// Rayleigh range scaled by the medium index when focusing inside a crystal.
inline double spot_radius(double lambda_m, double waist_m, double z_m, double medium_index = 1.0) {
    const double zr = pi * waist_m * waist_m * medium_index / lambda_m;
    return waist_m * std::sqrt(1.0 + (z_m / zr) * (z_m / zr));
}

}  // namespace spdc
