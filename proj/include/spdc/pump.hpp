#pragma once

#include <cmath>

#include "errors.hpp"
#include "numeric.hpp"

namespace spdc {

// Pump beam description: wavelength, focused waist, and temporal regime.
// A continuous-wave pump is strictly monochromatic here; a pulsed pump is a
// transform-limited Gaussian with intensity FWHM `duration_fwhm_s`.
struct PumpSpec {
    double lambda_m = 0.0;
    double waist_m = 0.0;
    bool pulsed = false;
    double duration_fwhm_s = 0.0;

    // FWHM of the pulse's intensity spectrum in Hz: dnu = 2 ln2 / (pi * T).
    double spectral_fwhm_hz() const {
        if (!pulsed) return 0.0;
        if (duration_fwhm_s <= 0.0)
            throw domain_error("pump: pulsed regime needs a positive pulse duration");
        return 2.0 * std::log(2.0) / (pi * duration_fwhm_s);
    }
};

// Spectral amplitude weight at detuning nu (Hz) of the pump's sum frequency
// from its carrier. Gaussian with weight 1/2 at half the spectral FWHM; a CW
// pump contributes only at exactly zero detuning.
inline double pump_spectral_envelope(const PumpSpec& p, double nu_hz) {
    if (!p.pulsed) return nu_hz == 0.0 ? 1.0 : 0.0;
    const double dnu = p.spectral_fwhm_hz();
    return std::exp(-4.0 * std::log(2.0) * nu_hz * nu_hz / (dnu * dnu));
}

// Transverse amplitude profile of a Gaussian pump in momentum space:
// exp(-q^2 w^2 / 4) at total transverse momentum q = q_s + q_i (1/m).
inline double pump_angular_envelope(const PumpSpec& p, double q_sum) {
    if (p.waist_m <= 0.0)
        throw domain_error("pump: waist must be positive for the angular envelope");
    const double a = q_sum * p.waist_m;
    return std::exp(-a * a / 4.0);
}

}  // namespace spdc
