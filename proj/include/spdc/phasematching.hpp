#pragma once

#include <cmath>
#include <cstdio>
#include <string>

#include "crystal.hpp"
#include "errors.hpp"
#include "numeric.hpp"

namespace spdc {

enum class Photon { pump, signal, idler };

// Idler wavelength that balances photon energies: 1/L_i = 1/L_p - 1/L_s.
// Applying it twice returns the original daughter wavelength exactly.
inline double energy_match(double lambda_p_m, double lambda_s_m) {
    if (lambda_p_m <= 0.0 || lambda_s_m <= 0.0)
        throw domain_error("energy_match: wavelengths must be positive");
    if (lambda_s_m <= lambda_p_m)
        throw domain_error(
            "energy_match: a daughter wavelength must exceed the pump wavelength");
    return 1.0 / (1.0 / lambda_p_m - 1.0 / lambda_s_m);
}

// One pump-signal-idler process in a specific crystal. Wavelengths are the
// degenerate-design centers; poling_period_m = 0 means no grating.
struct InteractionSpec {
    CrystalSpec crystal;
    double lambda_p_m = 0.0;
    double lambda_s_m = 0.0;
    double lambda_i_m = 0.0;
    FieldIndex pump;
    FieldIndex signal;
    FieldIndex idler;
    double poling_period_m = 0.0;

    double center_wavelength(Photon who) const {
        switch (who) {
            case Photon::pump: return lambda_p_m;
            case Photon::signal: return lambda_s_m;
            case Photon::idler: return lambda_i_m;
        }
        return 0.0;
    }

    const FieldIndex& field(Photon who) const {
        switch (who) {
            case Photon::pump: return pump;
            case Photon::signal: return signal;
            case Photon::idler: return idler;
        }
        return pump;
    }

    // Wavevector magnitude of one field detuned by nu_det (Hz) from its center.
    double k_of(Photon who, double nu_det = 0.0) const {
        const double nu0 = c_light / center_wavelength(who);
        const double lambda = c_light / (nu0 + nu_det);
        return wavevector_magnitude(crystal, field(who), lambda);
    }

    double group_index(Photon who) const {
        return field(who).group_index_at(crystal, center_wavelength(who));
    }
};

namespace detail {
// Longitudinal component sqrt(k^2 - q^2) with the evanescent-wave guard.
inline double kz_component(double k, double q, const char* who) {
    const double d = k * k - q * q;
    if (!(d > 0.0)) {
        char buf[128];
        std::snprintf(buf, sizeof buf,
                      "delta_k: %s transverse momentum |q| = %.6g 1/m reaches its wavevector "
                      "%.6g 1/m (evanescent)",
                      who, std::fabs(q), k);
        throw domain_error(buf);
    }
    return std::sqrt(d);
}

// Shared core so grid loops can hoist the k lookups and still run the exact
// same arithmetic as the scalar entry point.
inline double dkz_from_ks(double k_p, double k_s, double k_i, double q_s, double q_i,
                          double poling_period_m) {
    const double q_p = q_s + q_i;
    double dk = kz_component(k_p, q_p, "pump") - kz_component(k_s, q_s, "signal") -
                kz_component(k_i, q_i, "idler");
    if (poling_period_m > 0.0) dk -= two_pi / poling_period_m;
    return dk;
}
}  // namespace detail

// Longitudinal wavevector mismatch (1/m) at spectral detunings nu_s, nu_i (Hz)
// and transverse momenta q_s, q_i (1/m). The pump picks up the summed
// detuning and the summed transverse momentum.
inline double delta_k_longitudinal(const InteractionSpec& ia, double nu_s, double nu_i,
                                   double q_s, double q_i) {
    const double k_p = ia.k_of(Photon::pump, nu_s + nu_i);
    const double k_s = ia.k_of(Photon::signal, nu_s);
    const double k_i = ia.k_of(Photon::idler, nu_i);
    return detail::dkz_from_ks(k_p, k_s, k_i, q_s, q_i, ia.poling_period_m);
}

// Phasematching amplitude of a crystal of length L: sinc(dk * L / 2).
// Real-valued; the sign of the sinc lobe is kept.
inline double pm_amplitude(double delta_k, double length_m) {
    return sinc(delta_k * length_m / 2.0);
}

struct PolingSolution {
    double period_m = 0.0;
    double residual = 0.0;  // |dk_z| with the grating in place, 1/m
};

// First-order grating period that cancels the collinear center mismatch.
inline PolingSolution solve_poling_period(const InteractionSpec& ia) {
    InteractionSpec trial = ia;
    trial.poling_period_m = 0.0;
    const double d = delta_k_longitudinal(trial, 0.0, 0.0, 0.0, 0.0);
    if (d <= 0.0) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "solve_poling_period: collinear mismatch %.6g 1/m is not positive; either "
                      "no grating is needed or the sign convention is wrong for this process",
                      d);
        throw domain_error(buf);
    }
    PolingSolution sol;
    sol.period_m = two_pi / d;
    trial.poling_period_m = sol.period_m;
    sol.residual = std::fabs(delta_k_longitudinal(trial, 0.0, 0.0, 0.0, 0.0));
    return sol;
}

struct AngleSolution {
    double theta_rad = 0.0;
    double residual = 0.0;  // |dk_z| at the solved angle, 1/m
};

namespace detail {
inline double collinear_dk_at_angle(InteractionSpec ia, double theta) {
    if (ia.pump.tuned()) ia.pump.theta = theta;
    if (ia.signal.tuned()) ia.signal.theta = theta;
    if (ia.idler.tuned()) ia.idler.theta = theta;
    return delta_k_longitudinal(ia, 0.0, 0.0, 0.0, 0.0);
}
}  // namespace detail

// Internal tuning angle that phasematches the collinear centers, found by
// bisection on the caller's bracket. Every angle-tuned field follows the
// solved angle. Throws when the bracket does not straddle a sign change or
// when 200 bisection steps leave more than 1e-6 1/m of mismatch.
inline AngleSolution solve_pm_angle(InteractionSpec& ia, double theta_lo, double theta_hi) {
    if (!(theta_hi > theta_lo))
        throw domain_error("solve_pm_angle: bracket must satisfy theta_lo < theta_hi");
    if (!ia.pump.tuned() && !ia.signal.tuned() && !ia.idler.tuned())
        throw domain_error("solve_pm_angle: no field of this interaction is angle-tuned");

    double f_lo = detail::collinear_dk_at_angle(ia, theta_lo);
    double f_hi = detail::collinear_dk_at_angle(ia, theta_hi);
    if ((f_lo > 0.0) == (f_hi > 0.0)) {
        char buf[200];
        std::snprintf(buf, sizeof buf,
                      "solve_pm_angle: no sign change over [%.6g, %.6g] rad "
                      "(dk = %.6g and %.6g 1/m at the endpoints); widen or move the bracket",
                      theta_lo, theta_hi, f_lo, f_hi);
        throw numeric_error(buf);
    }

    double lo = theta_lo, hi = theta_hi;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = detail::collinear_dk_at_angle(ia, mid);
        if ((f_mid > 0.0) == (f_lo > 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }

    AngleSolution sol;
    sol.theta_rad = 0.5 * (lo + hi);
    sol.residual = std::fabs(detail::collinear_dk_at_angle(ia, sol.theta_rad));
    if (!(sol.residual < 1e-6)) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "solve_pm_angle: bisection stalled with |dk| = %.6g 1/m at theta = %.8g rad",
                      sol.residual, sol.theta_rad);
        throw numeric_error(buf);
    }
    if (ia.pump.tuned()) ia.pump.theta = sol.theta_rad;
    if (ia.signal.tuned()) ia.signal.theta = sol.theta_rad;
    if (ia.idler.tuned()) ia.idler.theta = sol.theta_rad;
    return sol;
}

}  // namespace spdc
