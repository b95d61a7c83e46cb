#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "errors.hpp"

namespace spdc {

// Two dispersion-equation families cover every crystal in the catalog.
//
//  resonance_series, coefficients [A, B1, C1, B2, C2, ...]:
//      n^2 = A + sum_j Bj * L^2 / (L^2 - Cj)
//  pole_series, coefficients [A, E, B1, C1, B2, C2, ...]:
//      n^2 = A + E * L^2 + sum_j Bj / (L^2 - Cj)
//
// with L the vacuum wavelength in micrometres.
enum class SellmeierForm { resonance_series, pole_series };

struct SellmeierSet {
    std::string axis;  // crystal axis label, e.g. "gamma", "y", "e"
    SellmeierForm form = SellmeierForm::resonance_series;
    std::vector<double> coefficients;
    double valid_min_m = 0.0;  // wavelength validity window, metres (0 = unknown)
    double valid_max_m = 0.0;
    std::string source;
};

inline double sellmeier_n_squared(const SellmeierSet& s, double lambda_um) {
    const std::vector<double>& c = s.coefficients;
    const double l2 = lambda_um * lambda_um;
    if (s.form == SellmeierForm::resonance_series) {
        if (c.size() < 3 || (c.size() - 1) % 2 != 0)
            throw domain_error("sellmeier: resonance_series needs coefficients [A, B1, C1, ...]");
        double n2 = c[0];
        for (std::size_t j = 1; j + 1 < c.size(); j += 2)
            n2 += c[j] * l2 / (l2 - c[j + 1]);
        return n2;
    }
    if (c.size() < 4 || (c.size() - 2) % 2 != 0)
        throw domain_error("sellmeier: pole_series needs coefficients [A, E, B1, C1, ...]");
    double n2 = c[0] + c[1] * l2;
    for (std::size_t j = 2; j + 1 < c.size(); j += 2)
        n2 += c[j] / (l2 - c[j + 1]);
    return n2;
}

// Refractive index at a vacuum wavelength given in metres.
inline double sellmeier_index(const SellmeierSet& s, double lambda_m) {
    const double n2 = sellmeier_n_squared(s, lambda_m * 1e6);
    if (!(n2 > 0.0))
        throw numeric_error("sellmeier: n^2 <= 0 for axis '" + s.axis + "' at this wavelength");
    return std::sqrt(n2);
}

// Group index n_g = n - lambda * dn/dlambda, central difference with a
// relative step of 1e-6 (small enough for smooth Sellmeier curves, large
// enough to stay clear of cancellation noise).
template <class IndexFn>
double group_index(const IndexFn& n_of_lambda, double lambda_m) {
    const double h = lambda_m * 1e-6;
    const double dn = (n_of_lambda(lambda_m + h) - n_of_lambda(lambda_m - h)) / (2.0 * h);
    return n_of_lambda(lambda_m) - lambda_m * dn;
}

// Index along the tuned direction at internal angle theta between two
// principal axes: n(theta) = [cos^2/na^2 + sin^2/nb^2]^(-1/2).
inline double tuned_index(double theta, double n_a, double n_b) {
    const double c = std::cos(theta), s = std::sin(theta);
    return 1.0 / std::sqrt(c * c / (n_a * n_a) + s * s / (n_b * n_b));
}

}  // namespace spdc
