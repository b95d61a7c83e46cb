#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "beam.hpp"
#include "collection.hpp"
#include "errors.hpp"
#include "gaussian_optics.hpp"
#include "grid.hpp"
#include "heralding.hpp"
#include "joint_amplitude.hpp"
#include "numeric.hpp"
#include "schmidt.hpp"

namespace spdc {

// ---------------------------------------------------------------------------
// Step 2: signal collection angle from the spectral-spatial map.
//
// The plateau is the widest symmetric angle window over which the conditional
// mean wavelength stays flat. Flatness is measured against B, the FWHM of the
// central conditional spectrum (mean of the two middle angle columns), with
// the conditional means taken over a fixed band of +-band_factor*B around
// that spectrum's peak; the walk outward stops once the running spread of the
// means exceeds tolerance*B and interpolates the crossing.
// ---------------------------------------------------------------------------
struct PlateauOptions {
    double tolerance = 0.025;   // allowed centroid spread as a fraction of B
    double band_factor = 1.5;   // centroid band half-width in units of B
};

struct PlateauResult {
    double width_rad = 0.0;         // full plateau angle (the collection angle)
    double conditional_fwhm_m = 0.0;  // B: FWHM of the central conditional spectrum
};

inline PlateauResult signal_collection_angle(const IntensityGrid& map,
                                             const PlateauOptions& opts = {}) {
    if (map.axis_x.variable != AxisVariable::wavelength_signal &&
        map.axis_x.variable != AxisVariable::wavelength_idler)
        throw domain_error("signal_collection_angle: rows must be a wavelength axis");
    if (!detail::is_angle_axis(map.axis_y))
        throw domain_error("signal_collection_angle: columns must be an angle axis");
    const std::size_t n_lam = map.rows(), n_th = map.cols();
    if (n_lam < 5 || n_th < 4)
        throw domain_error("signal_collection_angle: grid too small to resolve a plateau");
    const std::vector<double>& lam = map.axis_x.samples;
    const std::vector<double>& ths = map.axis_y.samples;

    std::vector<double> central(n_lam);
    for (std::size_t j = 0; j < n_lam; ++j)
        central[j] = 0.5 * (map.at(j, n_th / 2 - 1) + map.at(j, n_th / 2));
    const double b = fwhm(lam, central);
    std::size_t pk = 0;
    for (std::size_t j = 1; j < n_lam; ++j)
        if (central[j] > central[pk]) pk = j;
    const double lam_pk = lam[pk];

    std::vector<std::size_t> band;
    for (std::size_t j = 0; j < n_lam; ++j)
        if (std::fabs(lam[j] - lam_pk) <= opts.band_factor * b) band.push_back(j);

    std::vector<double> mean(n_th);
    for (std::size_t a = 0; a < n_th; ++a) {
        double tot = 0.0, wsum = 0.0;
        for (std::size_t j : band) {
            tot += map.at(j, a);
            wsum += lam[j] * map.at(j, a);
        }
        mean[a] = wsum / tot;
    }

    std::vector<std::size_t> order(n_th);
    for (std::size_t a = 0; a < n_th; ++a) order[a] = a;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return std::fabs(ths[x]) < std::fabs(ths[y]);
    });

    double mx = -std::numeric_limits<double>::infinity();
    double mn = std::numeric_limits<double>::infinity();
    double prev_t = 0.0, prev_v = 0.0;
    const double limit = opts.tolerance * b;
    PlateauResult res;
    res.conditional_fwhm_m = b;
    for (std::size_t idx : order) {
        const double m = mean[idx];
        if (m > mx) mx = m;
        if (m < mn) mn = m;
        const double v = mx - mn;
        const double t = std::fabs(ths[idx]);
        if (v > limit) {
            const double frac = v > prev_v ? (limit - prev_v) / (v - prev_v) : 0.0;
            res.width_rad = 2.0 * (prev_t + frac * (t - prev_t));
            if (res.width_rad < 1.5 * map.axis_y.step())
                throw numeric_error(
                    "signal_collection_angle: no angle-independent plateau survives even one "
                    "grid step; reduce the pump focusing parameter (use a larger pump waist)");
            return res;
        }
        prev_t = t;
        prev_v = v;
    }
    res.width_rad = 2.0 * prev_t;  // flat across the whole window
    return res;
}

// ---------------------------------------------------------------------------
// Step 3: idler collection angle from the joint angular amplitude.
//
// Restrict the signal to its collection window (Gaussian intensity weights at
// the chosen angle), fit the weighted conditional idler centroid against the
// signal angle, and scale the signal window by the |slope| of that line. For
// a frequency-degenerate pair the slope is 1 and the arms match; for the
// asymmetric pair it recovers the wavelength ratio between the arms.
// ---------------------------------------------------------------------------
struct IdlerAngleResult {
    double width_rad = 0.0;
    double slope = 0.0;  // d(theta_i)/d(theta_s) along the correlation ridge
};

inline IdlerAngleResult idler_collection_angle(const JointAmplitude& amp,
                                               double delta_theta_s) {
    if (amp.axis_x.variable != AxisVariable::angle_signal_external ||
        amp.axis_y.variable != AxisVariable::angle_idler_external)
        throw domain_error("idler_collection_angle: amplitude must be a joint angular grid");
    if (!(delta_theta_s > 0.0))
        throw domain_error("idler_collection_angle: signal collection angle must be positive");
    const std::size_t nx = amp.rows(), ny = amp.cols();
    const std::vector<double>& ths = amp.axis_x.samples;
    const std::vector<double>& thi = amp.axis_y.samples;

    std::vector<double> w(nx), tbar(nx);
    double w_max = 0.0;
    for (std::size_t a = 0; a < nx; ++a) {
        double rowsum = 0.0, tsum = 0.0;
        for (std::size_t b = 0; b < ny; ++b) {
            const double p = std::norm(amp.at(a, b));
            rowsum += p;
            tsum += p * thi[b];
        }
        const double t = ths[a] / (delta_theta_s / 2.0);
        w[a] = std::exp(-2.0 * t * t) * rowsum;
        tbar[a] = tsum / std::max(rowsum, 1e-300);
        w_max = std::max(w_max, w[a]);
    }
    if (!(w_max > 0.0))
        throw numeric_error(
            "idler_collection_angle: conditional intensity under the signal window is below "
            "the numeric floor");

    double sw = 0.0, sx = 0.0, sy = 0.0;
    for (std::size_t a = 0; a < nx; ++a) {
        if (w[a] <= 1e-6 * w_max) continue;
        sw += w[a];
        sx += w[a] * ths[a];
        sy += w[a] * tbar[a];
    }
    const double xm = sx / sw, ym = sy / sw;
    double num = 0.0, den = 0.0;
    for (std::size_t a = 0; a < nx; ++a) {
        if (w[a] <= 1e-6 * w_max) continue;
        num += w[a] * (ths[a] - xm) * (tbar[a] - ym);
        den += w[a] * (ths[a] - xm) * (ths[a] - xm);
    }
    if (!(den > 0.0))
        throw numeric_error(
            "idler_collection_angle: signal window collapses onto a single angle column "
            "(degenerate conditional fit)");
    IdlerAngleResult res;
    res.slope = num / den;
    res.width_rad = std::fabs(res.slope) * delta_theta_s;
    return res;
}

// Literal conditional width: full 1/e^2 width of the idler intensity after
// weighting the signal axis by its collection window. Wider than the slope
// rule by the intrinsic ridge thickness (quadrature sum for Gaussian ridges).
inline double conditional_idler_width(const JointAmplitude& amp, double delta_theta_s) {
    if (amp.axis_x.variable != AxisVariable::angle_signal_external ||
        amp.axis_y.variable != AxisVariable::angle_idler_external)
        throw domain_error("conditional_idler_width: amplitude must be a joint angular grid");
    if (!(delta_theta_s > 0.0))
        throw domain_error("conditional_idler_width: signal collection angle must be positive");
    const std::size_t nx = amp.rows(), ny = amp.cols();
    std::vector<double> profile(ny, 0.0);
    for (std::size_t a = 0; a < nx; ++a) {
        const double t = amp.axis_x.samples[a] / (delta_theta_s / 2.0);
        const double us2 = std::exp(-2.0 * t * t);
        for (std::size_t b = 0; b < ny; ++b) profile[b] += us2 * std::norm(amp.at(a, b));
    }
    return full_width_1e2(amp.axis_y.samples, profile);
}

// ---------------------------------------------------------------------------
// Step 1: pump waist from the target focusing parameter.
// ---------------------------------------------------------------------------
struct PumpChoice {
    double waist_m = 0.0;
    double xi = 0.0;
    double angular_spread_rad = 0.0;  // full 1/e^2 divergence
    bool warning = false;
    std::string warning_message;
};

// aperture_m = smallest transverse crystal dimension (0 disables the check);
// medium_index scales the Rayleigh range inside the crystal.
inline PumpChoice choose_pump_waist(double lambda_p_m, double length_m, double xi_target,
                                    double aperture_m = 0.0, double medium_index = 1.0) {
    PumpChoice out;
    out.waist_m = waist_for_focusing(lambda_p_m, length_m, xi_target);
    out.xi = xi_target;
    out.angular_spread_rad = angle_from_waist(lambda_p_m, out.waist_m);
    if (aperture_m > 0.0) {
        const double face_radius = spot_radius(lambda_p_m, out.waist_m, length_m / 2.0,
                                               medium_index);
        if (2.0 * face_radius > aperture_m) {
            out.warning = true;
            char buf[160];
            std::snprintf(buf, sizeof buf,
                          "pump 1/e^2 diameter at the crystal faces (%.4g m) exceeds the "
                          "crystal aperture (%.4g m)",
                          2.0 * face_radius, aperture_m);
            out.warning_message = buf;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Full design pipeline.
// ---------------------------------------------------------------------------
struct PumpRegime {
    bool pulsed = false;
    double duration_fwhm_s = 0.0;
};

struct GridOptions {
    std::size_t spectral_samples = 256;
    std::size_t angular_samples = 256;
    std::size_t pump_nodes = 13;
    double window_sigmas = 3.0;
    PlateauOptions plateau;
};

struct LensCatalog {
    std::vector<std::pair<double, double>> focal_pairs_m;  // (collimating, focusing)
    double fiber_mfd_signal_m = 0.0;
    double fiber_mfd_idler_m = 0.0;
};

struct ArmReport {
    double angular_spread_rad = 0.0;
    double waist_m = 0.0;
    double xi = 0.0;
};

struct ArmLensReport {
    std::string arm;          // "signal" | "idler"
    double fiber_mfd_m = 0.0;
    std::vector<LensSuggestion> suggestions;
};

struct DesignReport {
    std::string crystal;
    std::string regime;  // "cw" | "pulsed"
    double pulse_duration_s = 0.0;
    double plateau_tolerance = 0.0;

    PumpChoice pump;
    ArmReport signal;
    ArmReport idler;

    double conditional_fwhm_m = 0.0;  // B of the signal spectral-spatial map
    double idler_slope = 0.0;

    double mu_s = 0.0;
    double mu_i = 0.0;
    double mu_si = 0.0;
    double spectral_spatial_purity = 0.0;  // purity of the collected signal map

    std::vector<double> alignment_wavelengths_m;  // exact center wavelengths to align to
    std::vector<ArmLensReport> lenses;
    std::vector<std::string> warnings;
};

namespace detail {
template <class F>
auto design_stage(const char* name, F&& f) {
    try {
        return f();
    } catch (const domain_error& e) {
        throw domain_error(std::string("design stage '") + name + "': " + e.what());
    } catch (const numeric_error& e) {
        throw numeric_error(std::string("design stage '") + name + "': " + e.what());
    }
}
}  // namespace detail

inline DesignReport design(const InteractionSpec& ia, const PumpRegime& regime,
                           double xi_target = 0.02, const GridOptions& opts = {},
                           const std::optional<LensCatalog>& lens_catalog = std::nullopt) {
    DesignReport rep;
    rep.crystal = ia.crystal.name;
    rep.regime = regime.pulsed ? "pulsed" : "cw";
    rep.pulse_duration_s = regime.pulsed ? regime.duration_fwhm_s : 0.0;
    rep.plateau_tolerance = opts.plateau.tolerance;

    rep.pump = detail::design_stage("choose_pump_waist", [&] {
        const double aperture =
            std::min(ia.crystal.cross_section_m[0], ia.crystal.cross_section_m[1]);
        const double n_p = ia.pump.index(ia.crystal, ia.lambda_p_m);
        return choose_pump_waist(ia.lambda_p_m, ia.crystal.length_m, xi_target, aperture, n_p);
    });
    if (rep.pump.warning) rep.warnings.push_back(rep.pump.warning_message);

    PumpSpec pump;
    pump.lambda_m = ia.lambda_p_m;
    pump.waist_m = rep.pump.waist_m;
    pump.pulsed = regime.pulsed;
    pump.duration_fwhm_s = regime.duration_fwhm_s;

    const IntensityGrid map = detail::design_stage("spectral_spatial", [&] {
        return spectral_spatial(ia, pump, Photon::signal, opts.spectral_samples,
                                opts.angular_samples, opts.pump_nodes, opts.window_sigmas);
    });
    const PlateauResult plateau = detail::design_stage(
        "signal_collection_angle", [&] { return signal_collection_angle(map, opts.plateau); });
    rep.conditional_fwhm_m = plateau.conditional_fwhm_m;

    const JointAmplitude angular = detail::design_stage("joint_angular", [&] {
        return joint_angular(ia, pump, opts.angular_samples, opts.window_sigmas);
    });
    const IdlerAngleResult idler = detail::design_stage("idler_collection_angle", [&] {
        return idler_collection_angle(angular, plateau.width_rad);
    });
    rep.idler_slope = idler.slope;

    rep.signal.angular_spread_rad = plateau.width_rad;
    rep.idler.angular_spread_rad = idler.width_rad;
    detail::design_stage("collection_waists", [&] {
        rep.signal.waist_m = waist_from_angle(ia.lambda_s_m, rep.signal.angular_spread_rad);
        rep.idler.waist_m = waist_from_angle(ia.lambda_i_m, rep.idler.angular_spread_rad);
        rep.signal.xi = focusing_parameter(ia.lambda_s_m, ia.crystal.length_m, rep.signal.waist_m);
        rep.idler.xi = focusing_parameter(ia.lambda_i_m, ia.crystal.length_m, rep.idler.waist_m);
        return 0;
    });

    const CollectionMode mode_s{ia.lambda_s_m, rep.signal.angular_spread_rad, 0.0};
    const CollectionMode mode_i{ia.lambda_i_m, rep.idler.angular_spread_rad, 0.0};
    const OverlapEfficiencies eff = detail::design_stage(
        "overlap_efficiencies", [&] { return overlap_efficiencies(angular, mode_s, mode_i); });
    rep.mu_s = eff.report.mu_s;
    rep.mu_i = eff.report.mu_i;
    rep.mu_si = eff.report.mu_si;

    rep.spectral_spatial_purity = detail::design_stage("collected_purity", [&] {
        const IntensityGrid collected = apply_collection(map, std::nullopt, mode_s);
        return schmidt_decompose(collected).purity;
    });

    if (rep.pump.angular_spread_rad >= rep.signal.angular_spread_rad / 2.0) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "pump angular spread (%.4g rad) is not well below the signal collection "
                      "angle (%.4g rad); consider a smaller focusing parameter",
                      rep.pump.angular_spread_rad, rep.signal.angular_spread_rad);
        rep.warnings.push_back(buf);
    }

    rep.alignment_wavelengths_m = {ia.lambda_s_m, ia.lambda_i_m};

    if (lens_catalog) {
        detail::design_stage("lens_suggestion", [&] {
            const struct {
                const char* name;
                double waist;
                double lambda;
                double mfd;
            } arms[2] = {{"signal", rep.signal.waist_m, ia.lambda_s_m,
                          lens_catalog->fiber_mfd_signal_m},
                         {"idler", rep.idler.waist_m, ia.lambda_i_m,
                          lens_catalog->fiber_mfd_idler_m}};
            for (const auto& arm : arms) {
                if (!(arm.mfd > 0.0)) continue;
                LensRanking rank = suggest_lenses(arm.waist, arm.lambda, arm.mfd,
                                                  lens_catalog->focal_pairs_m);
                ArmLensReport alr;
                alr.arm = arm.name;
                alr.fiber_mfd_m = arm.mfd;
                alr.suggestions = std::move(rank.suggestions);
                rep.lenses.push_back(std::move(alr));
                if (rank.warning)
                    rep.warnings.push_back(std::string(arm.name) + " arm: " +
                                           rank.warning_message);
            }
            return 0;
        });
    }
    return rep;
}

}  // namespace spdc
