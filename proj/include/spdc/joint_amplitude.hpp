#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "collection.hpp"
#include "errors.hpp"
#include "grid.hpp"
#include "numeric.hpp"
#include "phasematching.hpp"
#include "pump.hpp"

namespace spdc {

// ---------------------------------------------------------------------------
// Window helpers. Grid windows are set to +-window_sigmas times the 1/e^2
// intensity half-widths of the two ridge-forming envelopes: the transverse
// sinc ridge and the spectral sinc ridge. sinc^2 falls to 1/e^2 at
// |dk L/2| ~ 2.2, which is where the 4.4 constants below come from.
// ---------------------------------------------------------------------------

// Curvature coefficient of the transverse mismatch: for small q at fixed
// frequency, dk_z ~ -A q^2 along the anticorrelated direction with
// A = 1/(2 k_s) + 1/(2 k_i).
inline double transverse_curvature(const InteractionSpec& ia) {
    const double k_s = ia.k_of(Photon::signal);
    const double k_i = ia.k_of(Photon::idler);
    return 0.5 / k_s + 0.5 / k_i;
}

// 1/e^2 intensity half-width of the transverse sinc ridge in summed q (1/m).
inline double transverse_ridge_halfwidth(const InteractionSpec& ia) {
    return std::sqrt(4.4 / (transverse_curvature(ia) * ia.crystal.length_m));
}

// 1/e^2 intensity half-width of the collinear spectral sinc in angular
// frequency (rad/s), from the group-index walk-off between signal and idler.
inline double spectral_ridge_halfwidth(const InteractionSpec& ia) {
    const double ng_s = ia.group_index(Photon::signal);
    const double ng_i = ia.group_index(Photon::idler);
    const double dkp = std::fabs(ng_i - ng_s) / c_light;
    if (!(dkp > 0.0))
        throw numeric_error(
            "spectral ridge width: signal and idler group indices coincide (no spectral "
            "walk-off to set a bandwidth)");
    return 4.4 / (ia.crystal.length_m * dkp);
}

// How far the spectral ridge's center moves with pump detuning, relative to
// the ridge width seen by photon `who`: |(ng_partner - ng_p)/(ng_partner - ng_who)|.
// Widens pulsed-pump wavelength windows so the walking ridge stays inside.
inline double ridge_shift_factor(const InteractionSpec& ia, Photon who = Photon::signal) {
    const double ng_s = ia.group_index(Photon::signal);
    const double ng_i = ia.group_index(Photon::idler);
    const double ng_p = ia.group_index(Photon::pump);
    const double ng_self = (who == Photon::idler) ? ng_i : ng_s;
    const double ng_partner = (who == Photon::idler) ? ng_s : ng_i;
    return std::fabs((ng_partner - ng_p) / (ng_partner - ng_self));
}

namespace detail {
// FWHM -> 1/e^2-equivalent width factor used to size pulsed spectral windows.
inline constexpr double fwhm_window_factor = 0.849322;

inline AxisVariable angle_tag(Photon who) {
    return who == Photon::idler ? AxisVariable::angle_idler_external
                                : AxisVariable::angle_signal_external;
}
inline AxisVariable wavelength_tag(Photon who) {
    return who == Photon::idler ? AxisVariable::wavelength_idler
                                : AxisVariable::wavelength_signal;
}
}  // namespace detail

// External emission-angle axis for one photon, spanning +-window_sigmas times
// the angle the transverse ridge half-width maps to: q = (2pi/lambda) sin(theta).
inline Axis theta_axis(const InteractionSpec& ia, Photon who, std::size_t n,
                       double window_sigmas = 3.0) {
    const double lambda = ia.center_wavelength(who);
    const double s = transverse_ridge_halfwidth(ia) * lambda / two_pi;
    if (!(s < 1.0))
        throw domain_error("theta_axis: transverse ridge exceeds the physical angle range");
    const double half = window_sigmas * std::asin(s);
    return make_axis(detail::angle_tag(who), -half, half, n);
}

// Signal-frequency detuning window half-width (Hz): spectral ridge plus the
// pulsed pump bandwidth contribution.
inline double frequency_halfwindow(const InteractionSpec& ia, const PumpSpec& pump,
                                   double window_sigmas = 3.0) {
    return window_sigmas * (spectral_ridge_halfwidth(ia) / two_pi +
                            detail::fwhm_window_factor * pump.spectral_fwhm_hz());
}

// Uniform frequency-detuning axis (Hz) for one photon around its center.
inline std::vector<double> frequency_axis(const InteractionSpec& ia, const PumpSpec& pump,
                                          std::size_t n, double window_sigmas = 3.0) {
    const double half = frequency_halfwindow(ia, pump, window_sigmas);
    return linspace(-half, half, n);
}

// Uniform-wavelength axis for one photon. With a pulsed pump the ridge walks
// by ridge_shift_factor times the pump detuning, so the window grows by
// max(shift factor, 1).
inline Axis wavelength_axis(const InteractionSpec& ia, const PumpSpec& pump, Photon who,
                            std::size_t n, double window_sigmas = 3.0) {
    const double r = std::max(ridge_shift_factor(ia, who), 1.0);
    const double h_nu = window_sigmas * (spectral_ridge_halfwidth(ia) / two_pi) +
                        window_sigmas * detail::fwhm_window_factor * pump.spectral_fwhm_hz() * r;
    const double nu0 = c_light / ia.center_wavelength(who);
    return make_axis(detail::wavelength_tag(who), c_light / (nu0 + h_nu), c_light / (nu0 - h_nu),
                     n);
}

// ---------------------------------------------------------------------------
// Joint spectral amplitude over (lambda_s, lambda_i), collinear (q = 0).
// A CW pump is strictly monochromatic: each signal wavelength pairs with
// exactly one idler wavelength, placed in the nearest idler bin.
// ---------------------------------------------------------------------------
inline JointAmplitude joint_spectral(const InteractionSpec& ia, const PumpSpec& pump,
                                     std::size_t n = 256, double window_sigmas = 3.0) {
    JointAmplitude amp;
    const double r = std::max(ridge_shift_factor(ia, Photon::signal), 1.0);
    const double h_nu = window_sigmas * (spectral_ridge_halfwidth(ia) / two_pi) +
                        window_sigmas * detail::fwhm_window_factor * pump.spectral_fwhm_hz() * r;
    const double nu_s0 = c_light / ia.lambda_s_m;
    const double nu_i0 = c_light / ia.lambda_i_m;
    amp.axis_x = make_axis(AxisVariable::wavelength_signal, c_light / (nu_s0 + h_nu),
                           c_light / (nu_s0 - h_nu), n);
    amp.axis_y = make_axis(AxisVariable::wavelength_idler, c_light / (nu_i0 + h_nu),
                           c_light / (nu_i0 - h_nu), n);

    std::vector<double> nu_s(n), nu_i(n), k_s(n), k_i(n);
    for (std::size_t j = 0; j < n; ++j) {
        nu_s[j] = c_light / amp.axis_x.samples[j] - nu_s0;
        k_s[j] = ia.k_of(Photon::signal, nu_s[j]);
        nu_i[j] = c_light / amp.axis_y.samples[j] - nu_i0;
        k_i[j] = ia.k_of(Photon::idler, nu_i[j]);
    }

    amp.values.assign(n * n, {0.0, 0.0});
    const double half_l = ia.crystal.length_m / 2.0;
    if (!pump.pulsed) {
        for (std::size_t j = 0; j < n; ++j) {
            std::size_t best = 0;
            for (std::size_t k = 1; k < n; ++k)
                if (std::fabs(nu_i[k] + nu_s[j]) < std::fabs(nu_i[best] + nu_s[j])) best = k;
            const double dk = delta_k_longitudinal(ia, nu_s[j], -nu_s[j], 0.0, 0.0);
            amp.at(j, best) = sinc(dk * half_l);
        }
    } else {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                const double k_p = ia.k_of(Photon::pump, nu_s[j] + nu_i[k]);
                const double dk = detail::dkz_from_ks(k_p, k_s[j], k_i[k], 0.0, 0.0,
                                                      ia.poling_period_m);
                amp.at(j, k) = pump_spectral_envelope(pump, nu_s[j] + nu_i[k]) *
                               sinc(dk * half_l);
            }
        }
    }
    amp.normalize();
    return amp;
}

// ---------------------------------------------------------------------------
// Joint angular amplitude over external (theta_s, theta_i) at the center
// wavelengths. Transverse momentum is conserved through the output face:
// q = (2pi/lambda_vac) sin(theta_ext).
// ---------------------------------------------------------------------------
inline JointAmplitude joint_angular(const InteractionSpec& ia, const PumpSpec& pump,
                                    std::size_t n = 256, double window_sigmas = 3.0) {
    JointAmplitude amp;
    amp.axis_x = theta_axis(ia, Photon::signal, n, window_sigmas);
    amp.axis_y = theta_axis(ia, Photon::idler, n, window_sigmas);

    std::vector<double> q_s(n), q_i(n);
    for (std::size_t a = 0; a < n; ++a) {
        q_s[a] = two_pi / ia.lambda_s_m * std::sin(amp.axis_x.samples[a]);
        q_i[a] = two_pi / ia.lambda_i_m * std::sin(amp.axis_y.samples[a]);
    }
    const double k_p = ia.k_of(Photon::pump);
    const double k_s = ia.k_of(Photon::signal);
    const double k_i = ia.k_of(Photon::idler);
    const double half_l = ia.crystal.length_m / 2.0;

    amp.values.resize(n * n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            const double dk = detail::dkz_from_ks(k_p, k_s, k_i, q_s[a], q_i[b],
                                                  ia.poling_period_m);
            amp.at(a, b) = pump_angular_envelope(pump, q_s[a] + q_i[b]) * sinc(dk * half_l);
        }
    }
    amp.normalize();
    return amp;
}

// ---------------------------------------------------------------------------
// Spectral-spatial intensity map for one photon: I(lambda, theta), with the
// partner's emission angle traced out and the partner frequency fixed by
// energy conservation at each pump spectral node. A pulsed pump is handled by
// quadrature over pump_nodes detuning nodes weighted by the spectral
// intensity; CW collapses to the single zero-detuning node.
// ---------------------------------------------------------------------------
inline IntensityGrid spectral_spatial(const InteractionSpec& ia, const PumpSpec& pump,
                                      Photon who = Photon::signal, std::size_t n = 256,
                                      std::size_t n_partner = 256, std::size_t pump_nodes = 13,
                                      double window_sigmas = 3.0) {
    if (who == Photon::pump)
        throw domain_error("spectral_spatial: map is defined for the signal or idler photon");
    const Photon partner = (who == Photon::signal) ? Photon::idler : Photon::signal;

    IntensityGrid grid;
    grid.axis_x = wavelength_axis(ia, pump, who, n, window_sigmas);
    grid.axis_y = theta_axis(ia, who, n, window_sigmas);
    const Axis partner_angles = theta_axis(ia, partner, n_partner, window_sigmas);

    std::vector<double> q_x(n), q_p(n_partner);
    for (std::size_t a = 0; a < n; ++a)
        q_x[a] = two_pi / ia.center_wavelength(who) * std::sin(grid.axis_y.samples[a]);
    for (std::size_t b = 0; b < n_partner; ++b)
        q_p[b] = two_pi / ia.center_wavelength(partner) * std::sin(partner_angles.samples[b]);

    std::vector<double> pang2(n * n_partner);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n_partner; ++b) {
            const double e = pump_angular_envelope(pump, q_x[a] + q_p[b]);
            pang2[a * n_partner + b] = e * e;
        }

    std::vector<double> nodes, weights;
    if (!pump.pulsed) {
        nodes = {0.0};
        weights = {1.0};
    } else {
        const double dnu = pump.spectral_fwhm_hz();
        if (pump_nodes < 2) throw domain_error("spectral_spatial: need at least 2 pump nodes");
        nodes = linspace(-1.6 * dnu, 1.6 * dnu, pump_nodes);
        weights.resize(pump_nodes);
        for (std::size_t m = 0; m < pump_nodes; ++m) {
            const double w = pump_spectral_envelope(pump, nodes[m]);
            weights[m] = w * w;
        }
    }

    const double nu0 = c_light / ia.center_wavelength(who);
    const double half_l = ia.crystal.length_m / 2.0;
    const double grating = ia.poling_period_m > 0.0 ? two_pi / ia.poling_period_m : 0.0;
    grid.values.assign(n * n, 0.0);
    std::vector<double> kz_x(n), kz_p(n_partner);

    for (std::size_t m = 0; m < nodes.size(); ++m) {
        const double e = nodes[m];
        const double w = weights[m];
        const double k_pump = ia.k_of(Photon::pump, e);
        const double kp2 = k_pump * k_pump;
        for (std::size_t j = 0; j < n; ++j) {
            const double nu = c_light / grid.axis_x.samples[j] - nu0;
            const double k_self = ia.k_of(who, nu);
            const double k_part = ia.k_of(partner, e - nu);
            for (std::size_t a = 0; a < n; ++a)
                kz_x[a] = detail::kz_component(k_self, q_x[a], "photon");
            for (std::size_t b = 0; b < n_partner; ++b)
                kz_p[b] = detail::kz_component(k_part, q_p[b], "partner");
            for (std::size_t a = 0; a < n; ++a) {
                const double* pa = &pang2[a * n_partner];
                double acc = 0.0;
                for (std::size_t b = 0; b < n_partner; ++b) {
                    const double q_sum = q_x[a] + q_p[b];
                    const double d = kp2 - q_sum * q_sum;
                    if (!(d > 0.0))
                        throw domain_error(
                            "spectral_spatial: pump transverse momentum becomes evanescent "
                            "inside the angle window");
                    const double dk = std::sqrt(d) - kz_x[a] - kz_p[b] - grating;
                    const double s = sinc(dk * half_l);
                    acc += pa[b] * s * s;
                }
                grid.at(j, a) += w * acc;
            }
        }
    }
    grid.normalize();
    return grid;
}

// ---------------------------------------------------------------------------
// Collection filtering: multiply by the Gaussian angular acceptance of the
// given mode(s) and renormalize. Amplitude grids get amplitude weights,
// intensity grids get intensity (squared) weights. Only angle axes accept a
// mode; passing one for a wavelength axis is an error.
// ---------------------------------------------------------------------------
namespace detail {
inline bool is_angle_axis(const Axis& ax) {
    return ax.variable == AxisVariable::angle_signal_external ||
           ax.variable == AxisVariable::angle_idler_external;
}

inline void check_collection_axis(const Axis& ax, const CollectionMode& m, const char* which) {
    if (!is_angle_axis(ax)) {
        throw domain_error(std::string("apply_collection: ") + which +
                           " axis is not an angle axis; collection applies to angle axes only");
    }
    if (m.center_angle_rad < ax.samples.front() || m.center_angle_rad > ax.samples.back())
        throw domain_error(std::string("apply_collection: ") + which +
                           " mode center lies outside the sampled angle window");
}
}  // namespace detail

inline JointAmplitude apply_collection(const JointAmplitude& amp,
                                       const std::optional<CollectionMode>& mode_x,
                                       const std::optional<CollectionMode>& mode_y) {
    JointAmplitude out = amp;
    if (mode_x) detail::check_collection_axis(out.axis_x, *mode_x, "x");
    if (mode_y) detail::check_collection_axis(out.axis_y, *mode_y, "y");
    const std::size_t nx = out.rows(), ny = out.cols();
    for (std::size_t i = 0; i < nx; ++i) {
        const double wx = mode_x ? mode_amplitude(*mode_x, out.axis_x.samples[i]) : 1.0;
        for (std::size_t j = 0; j < ny; ++j) {
            const double wy = mode_y ? mode_amplitude(*mode_y, out.axis_y.samples[j]) : 1.0;
            out.at(i, j) *= wx * wy;
        }
    }
    out.normalize();
    return out;
}

inline IntensityGrid apply_collection(const IntensityGrid& grid,
                                      const std::optional<CollectionMode>& mode_x,
                                      const std::optional<CollectionMode>& mode_y) {
    IntensityGrid out = grid;
    if (mode_x) detail::check_collection_axis(out.axis_x, *mode_x, "x");
    if (mode_y) detail::check_collection_axis(out.axis_y, *mode_y, "y");
    const std::size_t nx = out.rows(), ny = out.cols();
    for (std::size_t i = 0; i < nx; ++i) {
        double wx = 1.0;
        if (mode_x) {
            const double a = mode_amplitude(*mode_x, out.axis_x.samples[i]);
            wx = a * a;
        }
        for (std::size_t j = 0; j < ny; ++j) {
            double wy = 1.0;
            if (mode_y) {
                const double a = mode_amplitude(*mode_y, out.axis_y.samples[j]);
                wy = a * a;
            }
            out.at(i, j) *= wx * wy;
        }
    }
    out.normalize();
    return out;
}

// Normalized inner-product correlation of two equally shaped nonnegative
// grids: sum(a*b)/sqrt(sum(a^2) sum(b^2)).
inline double grid_correlation(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size() || a.empty())
        throw domain_error("grid_correlation: grids must be nonempty and equally sized");
    const double sab = pairwise_sum(a.size(), [&](std::size_t i) { return a[i] * b[i]; });
    const double saa = pairwise_sum(a.size(), [&](std::size_t i) { return a[i] * a[i]; });
    const double sbb = pairwise_sum(b.size(), [&](std::size_t i) { return b[i] * b[i]; });
    if (!(saa > 0.0) || !(sbb > 0.0))
        throw numeric_error("grid_correlation: zero-norm grid");
    return sab / std::sqrt(saa * sbb);
}

// ---------------------------------------------------------------------------
// Heralded signal amplitude over (frequency detuning, theta_s) with the idler
// projected onto its collection mode and the signal weighted by its own mode.
// Evaluated on the CW energy-conservation slice (nu_i = -nu_s); the pump's
// angular envelope still uses its real waist.
// ---------------------------------------------------------------------------
struct HeraldedMap {
    std::vector<double> frequency_hz;  // signal detuning axis (rows)
    std::vector<double> theta_rad;     // signal external angle axis (columns)
    std::vector<double> amplitude;     // row-major, unit discrete norm
};

inline HeraldedMap heralded_spectral_spatial(const InteractionSpec& ia, const PumpSpec& pump,
                                             double delta_theta_s, double delta_theta_i,
                                             std::size_t n = 256, std::size_t n_partner = 256,
                                             double window_sigmas = 3.0) {
    HeraldedMap out;
    PumpSpec cw = pump;
    cw.pulsed = false;
    out.frequency_hz = frequency_axis(ia, cw, n, window_sigmas);
    const Axis ths = theta_axis(ia, Photon::signal, n, window_sigmas);
    const Axis thi = theta_axis(ia, Photon::idler, n_partner, window_sigmas);
    out.theta_rad = ths.samples;

    std::vector<double> q_s(n), q_i(n_partner);
    for (std::size_t a = 0; a < n; ++a)
        q_s[a] = two_pi / ia.lambda_s_m * std::sin(ths.samples[a]);
    for (std::size_t b = 0; b < n_partner; ++b)
        q_i[b] = two_pi / ia.lambda_i_m * std::sin(thi.samples[b]);

    CollectionMode ms{ia.lambda_s_m, delta_theta_s, 0.0};
    CollectionMode mi{ia.lambda_i_m, delta_theta_i, 0.0};
    const std::vector<double> u_s = sample_mode(ms, ths.samples);
    const std::vector<double> u_i = sample_mode(mi, thi.samples);

    std::vector<double> pang(n * n_partner);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n_partner; ++b)
            pang[a * n_partner + b] = pump_angular_envelope(pump, q_s[a] + q_i[b]);

    const double k_p = ia.k_of(Photon::pump, 0.0);
    const double kp2 = k_p * k_p;
    const double half_l = ia.crystal.length_m / 2.0;
    const double grating = ia.poling_period_m > 0.0 ? two_pi / ia.poling_period_m : 0.0;

    out.amplitude.assign(n * n, 0.0);
    std::vector<double> kz_s(n), kz_i(n_partner);
    for (std::size_t j = 0; j < n; ++j) {
        const double nu = out.frequency_hz[j];
        const double k_s = ia.k_of(Photon::signal, nu);
        const double k_i = ia.k_of(Photon::idler, -nu);
        for (std::size_t a = 0; a < n; ++a) kz_s[a] = detail::kz_component(k_s, q_s[a], "signal");
        for (std::size_t b = 0; b < n_partner; ++b)
            kz_i[b] = detail::kz_component(k_i, q_i[b], "idler");
        for (std::size_t a = 0; a < n; ++a) {
            const double* pa = &pang[a * n_partner];
            double acc = 0.0;
            for (std::size_t b = 0; b < n_partner; ++b) {
                const double q_sum = q_s[a] + q_i[b];
                const double d = kp2 - q_sum * q_sum;
                if (!(d > 0.0))
                    throw domain_error(
                        "heralded map: pump transverse momentum becomes evanescent inside the "
                        "angle window");
                const double dk = std::sqrt(d) - kz_s[a] - kz_i[b] - grating;
                acc += pa[b] * sinc(dk * half_l) * u_i[b];
            }
            out.amplitude[j * n + a] = acc * u_s[a];
        }
    }
    const double n2 = pairwise_sum(out.amplitude.size(),
                                   [&](std::size_t i) { return out.amplitude[i] * out.amplitude[i]; });
    if (!(n2 > 0.0)) throw numeric_error("heralded map: amplitude vanished everywhere");
    const double s = 1.0 / std::sqrt(n2);
    for (auto& v : out.amplitude) v *= s;
    return out;
}

// ---------------------------------------------------------------------------
// Does angular collection change the joint spectrum? Builds the joint
// spectral intensity twice on a (nu_s, nu_i) grid — once collinear, once with
// angles traced out under the collection-mode intensity weights — and returns
// their normalized correlation (1 means the spectrum is unchanged).
// ---------------------------------------------------------------------------
inline double spectral_correlation_through_collection(const InteractionSpec& ia,
                                                      const PumpSpec& pump, double delta_theta_s,
                                                      double delta_theta_i, std::size_t n_nu = 96,
                                                      std::size_t n_theta = 48,
                                                      double window_sigmas = 3.0) {
    const std::vector<double> nus = frequency_axis(ia, pump, n_nu, window_sigmas);
    const Axis ths = theta_axis(ia, Photon::signal, n_theta, window_sigmas);
    const Axis thi = theta_axis(ia, Photon::idler, n_theta, window_sigmas);

    std::vector<double> q_s(n_theta), q_i(n_theta), us2(n_theta), ui2(n_theta);
    CollectionMode ms{ia.lambda_s_m, delta_theta_s, 0.0};
    CollectionMode mi{ia.lambda_i_m, delta_theta_i, 0.0};
    for (std::size_t a = 0; a < n_theta; ++a) {
        q_s[a] = two_pi / ia.lambda_s_m * std::sin(ths.samples[a]);
        q_i[a] = two_pi / ia.lambda_i_m * std::sin(thi.samples[a]);
        const double es = mode_amplitude(ms, ths.samples[a]);
        const double ei = mode_amplitude(mi, thi.samples[a]);
        us2[a] = es * es;
        ui2[a] = ei * ei;
    }
    std::vector<double> pang2(n_theta * n_theta);
    for (std::size_t a = 0; a < n_theta; ++a)
        for (std::size_t b = 0; b < n_theta; ++b) {
            const double e = pump_angular_envelope(pump, q_s[a] + q_i[b]);
            pang2[a * n_theta + b] = e * e;
        }

    std::vector<double> k_s(n_nu), k_i(n_nu);
    for (std::size_t j = 0; j < n_nu; ++j) {
        k_s[j] = ia.k_of(Photon::signal, nus[j]);
        k_i[j] = ia.k_of(Photon::idler, nus[j]);
    }

    const double half_l = ia.crystal.length_m / 2.0;
    const double grating = ia.poling_period_m > 0.0 ? two_pi / ia.poling_period_m : 0.0;
    std::vector<double> pre(n_nu * n_nu, 0.0), post(n_nu * n_nu, 0.0);
    std::vector<double> kz_s(n_theta), kz_i(n_theta);

    for (std::size_t j = 0; j < n_nu; ++j) {
        for (std::size_t k = 0; k < n_nu; ++k) {
            const double w_amp = pump_spectral_envelope(pump, nus[j] + nus[k]);
            const double w = w_amp * w_amp;
            if (w < 1e-12) continue;
            const double k_p = ia.k_of(Photon::pump, nus[j] + nus[k]);
            const double dk0 = detail::dkz_from_ks(k_p, k_s[j], k_i[k], 0.0, 0.0,
                                                   ia.poling_period_m);
            const double s0 = sinc(dk0 * half_l);
            pre[j * n_nu + k] = w * s0 * s0;

            const double kp2 = k_p * k_p;
            for (std::size_t a = 0; a < n_theta; ++a)
                kz_s[a] = detail::kz_component(k_s[j], q_s[a], "signal");
            for (std::size_t b = 0; b < n_theta; ++b)
                kz_i[b] = detail::kz_component(k_i[k], q_i[b], "idler");
            double acc = 0.0;
            for (std::size_t a = 0; a < n_theta; ++a) {
                const double* pa = &pang2[a * n_theta];
                double row = 0.0;
                for (std::size_t b = 0; b < n_theta; ++b) {
                    const double q_sum = q_s[a] + q_i[b];
                    const double d = kp2 - q_sum * q_sum;
                    if (!(d > 0.0))
                        throw domain_error(
                            "spectral correlation: pump transverse momentum becomes evanescent");
                    const double s = sinc((std::sqrt(d) - kz_s[a] - kz_i[b] - grating) * half_l);
                    row += pa[b] * s * s * ui2[b];
                }
                acc += us2[a] * row;
            }
            post[j * n_nu + k] = w * acc;
        }
    }
    return grid_correlation(pre, post);
}

}  // namespace spdc
