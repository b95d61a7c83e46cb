#pragma once

#include <cmath>
#include <complex>
#include <cstdio>
#include <string>
#include <vector>

#include "collection.hpp"
#include "errors.hpp"
#include "grid.hpp"
#include "numeric.hpp"

namespace spdc {

// Measured count rates (Hz) plus the calibration factors needed to reduce
// them to heralding efficiencies. Detector noise is subtracted from the
// singles only, never from coincidences.
struct CountRecord {
    double coincidences = 0.0;
    double singles_signal = 0.0;
    double singles_idler = 0.0;
    double detector_efficiency_signal = 1.0;
    double detector_efficiency_idler = 1.0;
    double path_transmission_signal = 1.0;
    double path_transmission_idler = 1.0;
    double noise_signal = 0.0;
    double noise_idler = 0.0;
};

struct EfficiencyReport {
    double mu_s = 0.0;
    double mu_i = 0.0;
    double mu_si = 0.0;
    bool warning = false;
    std::string warning_message;
};

// Heralding efficiencies from counts: detecting the partner heralds this
// photon, so each arm's efficiency divides the coincidences by the OTHER
// arm's noise-subtracted singles, corrected by this arm's detector efficiency
// and path transmission. Scaling all rates by a common factor (counts vs
// rates) leaves the result unchanged. Efficiencies above 1 are physically
// impossible and signal a calibration problem; they are flagged, not clamped.
inline EfficiencyReport counts_to_efficiency(const CountRecord& rec) {
    if (rec.coincidences < 0.0 || rec.singles_signal < 0.0 || rec.singles_idler < 0.0 ||
        rec.noise_signal < 0.0 || rec.noise_idler < 0.0)
        throw domain_error("counts_to_efficiency: rates must be nonnegative");
    for (double f : {rec.detector_efficiency_signal, rec.detector_efficiency_idler,
                     rec.path_transmission_signal, rec.path_transmission_idler})
        if (!(f > 0.0) || f > 1.0)
            throw domain_error(
                "counts_to_efficiency: detector efficiencies and transmissions must lie in (0, 1]");
    const double s_s = rec.singles_signal - rec.noise_signal;
    const double s_i = rec.singles_idler - rec.noise_idler;
    if (!(s_s > 0.0) || !(s_i > 0.0))
        throw domain_error(
            "counts_to_efficiency: noise-subtracted singles must be positive in both arms");

    EfficiencyReport rep;
    rep.mu_s = rec.coincidences /
               (s_i * rec.detector_efficiency_signal * rec.path_transmission_signal);
    rep.mu_i = rec.coincidences /
               (s_s * rec.detector_efficiency_idler * rec.path_transmission_idler);
    rep.mu_si = std::sqrt(rep.mu_s * rep.mu_i);
    if (rep.mu_s > 1.05 || rep.mu_i > 1.05) {
        rep.warning = true;
        char buf[128];
        std::snprintf(buf, sizeof buf,
                      "efficiency above 1 (mu_s = %.4g, mu_i = %.4g): calibration inconsistent "
                      "with the recorded counts",
                      rep.mu_s, rep.mu_i);
        rep.warning_message = buf;
    }
    return rep;
}

// Model-side analogue of the measured efficiencies: project a joint angular
// amplitude onto Gaussian collection modes.
//   Cprob = |<u_s x u_i | Phi>|^2        coincidence probability
//   R_s   = sum_i |<u_s | Phi(., th_i)>|^2    signal singles probability
//   R_i   = symmetric
struct OverlapEfficiencies {
    double c_prob = 0.0;
    double r_s = 0.0;
    double r_i = 0.0;
    EfficiencyReport report;
};

inline OverlapEfficiencies overlap_efficiencies(const JointAmplitude& amp,
                                                const CollectionMode& mode_s,
                                                const CollectionMode& mode_i) {
    if (amp.axis_x.variable != AxisVariable::angle_signal_external ||
        amp.axis_y.variable != AxisVariable::angle_idler_external)
        throw domain_error(
            "overlap_efficiencies: amplitude must be a joint angular grid "
            "(signal angles by idler angles)");
    if (std::fabs(amp.squared_norm() - 1.0) > 1e-6)
        throw domain_error("overlap_efficiencies: amplitude is not unit-normalized");

    const std::vector<double> u_s = sample_mode(mode_s, amp.axis_x.samples);
    const std::vector<double> u_i = sample_mode(mode_i, amp.axis_y.samples);
    const std::size_t nx = amp.rows(), ny = amp.cols();

    // One pass builds both projections: row_proj[i] = <row_i | u_i>,
    // col_proj[j] = <u_s | col_j>.
    std::vector<std::complex<double>> row_proj(nx, 0.0), col_proj(ny, 0.0);
    for (std::size_t i = 0; i < nx; ++i) {
        for (std::size_t j = 0; j < ny; ++j) {
            const std::complex<double> v = amp.at(i, j);
            row_proj[i] += v * u_i[j];
            col_proj[j] += u_s[i] * v;
        }
    }
    OverlapEfficiencies out;
    std::complex<double> c_amp = 0.0;
    for (std::size_t i = 0; i < nx; ++i) c_amp += u_s[i] * row_proj[i];
    out.c_prob = std::norm(c_amp);
    out.r_s = pairwise_sum(ny, [&](std::size_t j) { return std::norm(col_proj[j]); });
    out.r_i = pairwise_sum(nx, [&](std::size_t i) { return std::norm(row_proj[i]); });

    if (out.r_s < 1e-12)
        throw numeric_error(
            "overlap_efficiencies: signal arm coupling is degenerate (mode orthogonal to the "
            "amplitude)");
    if (out.r_i < 1e-12)
        throw numeric_error(
            "overlap_efficiencies: idler arm coupling is degenerate (mode orthogonal to the "
            "amplitude)");

    out.report.mu_s = out.c_prob / out.r_i;
    out.report.mu_i = out.c_prob / out.r_s;
    out.report.mu_si = out.c_prob / std::sqrt(out.r_s * out.r_i);
    return out;
}

}  // namespace spdc
