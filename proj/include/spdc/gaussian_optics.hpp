#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "numeric.hpp"

namespace spdc {

// 2x2 ray-transfer (ABCD) matrix acting on Gaussian complex beam parameters.
struct RayMatrix {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;
};

inline RayMatrix operator*(const RayMatrix& m2, const RayMatrix& m1) {
    // m2 * m1 applies m1 first.
    return {m2.a * m1.a + m2.b * m1.c, m2.a * m1.b + m2.b * m1.d,
            m2.c * m1.a + m2.d * m1.c, m2.c * m1.b + m2.d * m1.d};
}

inline RayMatrix free_space(double length_m) { return {1.0, length_m, 0.0, 1.0}; }

inline RayMatrix thin_lens(double focal_m) {
    if (focal_m == 0.0) throw domain_error("thin_lens: focal length must be nonzero");
    return {1.0, 0.0, -1.0 / focal_m, 1.0};
}

// Complex beam parameter q of a beam AT its waist w0 (in air): q = i pi w0^2 / lambda.
inline std::complex<double> q_at_waist(double waist_m, double lambda_m) {
    if (!(waist_m > 0.0) || !(lambda_m > 0.0))
        throw domain_error("q_at_waist: waist and wavelength must be positive");
    return {0.0, pi * waist_m * waist_m / lambda_m};
}

inline std::complex<double> propagate_q(const RayMatrix& m, std::complex<double> q) {
    const std::complex<double> den = m.c * q + m.d;
    if (std::abs(den) == 0.0) throw numeric_error("propagate_q: singular beam transformation");
    return (m.a * q + m.b) / den;
}

// 1/e^2 intensity radius of the beam described by q.
inline double spot_radius_from_q(std::complex<double> q, double lambda_m) {
    const double im_inv = std::imag(1.0 / q);
    if (!(im_inv < 0.0)) throw numeric_error("spot_radius_from_q: not a forward Gaussian beam");
    return std::sqrt(-lambda_m / (pi * im_inv));
}

// Two-lens relay: collimating lens f1 one focal length after the source
// waist, focusing lens f2 at telescopic spacing f1 + f2, output plane one
// focal length f2 further. Images a waist onto a waist with magnification f2/f1.
inline RayMatrix relay_matrix(double f1_m, double f2_m) {
    if (!(f1_m > 0.0) || !(f2_m > 0.0))
        throw domain_error("relay_matrix: focal lengths must be positive");
    return free_space(f2_m) * thin_lens(f2_m) * free_space(f1_m + f2_m) * thin_lens(f1_m) *
           free_space(f1_m);
}

// Power coupling between two Gaussian beams evaluated at a common plane.
// With field E ~ exp(-alpha x^2), alpha = i k / (2 q), the 1-D amplitude
// overlap integral gives
//   eta_1d = 2 sqrt(Re a_1 Re a_2) / |conj(a_1) + a_2|
// and the rotationally symmetric 2-D power coupling is its square.
inline double power_overlap(std::complex<double> q1, std::complex<double> q2, double lambda_m) {
    const double k = two_pi / lambda_m;
    const std::complex<double> a1 = std::complex<double>(0.0, k) / (2.0 * q1);
    const std::complex<double> a2 = std::complex<double>(0.0, k) / (2.0 * q2);
    if (!(a1.real() > 0.0) || !(a2.real() > 0.0))
        throw numeric_error("power_overlap: inputs are not confined Gaussian beams");
    const double eta_1d =
        2.0 * std::sqrt(a1.real() * a2.real()) / std::abs(std::conj(a1) + a2);
    return eta_1d * eta_1d;
}

struct LensSuggestion {
    double collimating_focal_m = 0.0;
    double focusing_focal_m = 0.0;
    double overlap = 0.0;          // power coupling into the fiber mode
    double waist_at_fiber_m = 0.0; // beam 1/e^2 radius at the fiber facet
};

struct LensRanking {
    std::vector<LensSuggestion> suggestions;  // sorted by overlap, best first
    bool warning = false;
    std::string warning_message;
};

// Rank candidate (collimating, focusing) focal-length pairs by how well the
// relayed crystal-side waist couples into a fiber of the given mode-field
// diameter. Candidates coupling below 0.5 are dropped; if none survive, the
// ranking is empty and flagged.
inline LensRanking suggest_lenses(double waist_m, double lambda_m, double fiber_mfd_m,
                                  const std::vector<std::pair<double, double>>& focal_pairs) {
    if (!(waist_m > 0.0) || !(lambda_m > 0.0) || !(fiber_mfd_m > 0.0))
        throw domain_error("suggest_lenses: waist, wavelength and fiber MFD must be positive");
    LensRanking out;
    const std::complex<double> q0 = q_at_waist(waist_m, lambda_m);
    const std::complex<double> q_fiber = q_at_waist(fiber_mfd_m / 2.0, lambda_m);
    for (const auto& [f1, f2] : focal_pairs) {
        const std::complex<double> q1 = propagate_q(relay_matrix(f1, f2), q0);
        LensSuggestion s;
        s.collimating_focal_m = f1;
        s.focusing_focal_m = f2;
        s.waist_at_fiber_m = spot_radius_from_q(q1, lambda_m);
        s.overlap = power_overlap(q1, q_fiber, lambda_m);
        if (s.overlap >= 0.5) out.suggestions.push_back(s);
    }
    std::stable_sort(out.suggestions.begin(), out.suggestions.end(),
                     [](const LensSuggestion& x, const LensSuggestion& y) {
                         return x.overlap > y.overlap;
                     });
    if (out.suggestions.empty() && !focal_pairs.empty()) {
        out.warning = true;
        out.warning_message =
            "no candidate lens pair couples at least half the power into the fiber mode";
    }
    return out;
}

}  // namespace spdc
