#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "collection.hpp"
#include "errors.hpp"
#include "grid.hpp"
#include "heralding.hpp"
#include "joint_amplitude.hpp"
#include "numeric.hpp"

namespace spdc {

// Schmidt spectrum of a discretized bipartite amplitude: normalized squared
// singular values, their purity sum(lambda^2) = Tr(rho^2), and the effective
// mode count 1/purity.
struct SchmidtSpectrum {
    std::vector<double> coefficients;  // nonincreasing, sum = 1
    double purity = 0.0;
    double schmidt_number = 0.0;
};

namespace detail {
template <class Matrix>
SchmidtSpectrum schmidt_from_matrix(const Matrix& m) {
    if (m.rows() < 1 || m.cols() < 1)
        throw domain_error("schmidt_decompose: empty grid");
    if (!(m.norm() > 0.0))
        throw domain_error("schmidt_decompose: all-zero grid has no Schmidt decomposition");
    Eigen::BDCSVD<Matrix> svd(m);
    const auto& s = svd.singularValues();
    SchmidtSpectrum out;
    out.coefficients.resize(static_cast<std::size_t>(s.size()));
    double total = 0.0;
    for (Eigen::Index i = 0; i < s.size(); ++i) total += s[i] * s[i];
    for (Eigen::Index i = 0; i < s.size(); ++i)
        out.coefficients[static_cast<std::size_t>(i)] = s[i] * s[i] / total;
    for (double c : out.coefficients) out.purity += c * c;
    out.schmidt_number = 1.0 / out.purity;
    return out;
}
}  // namespace detail

inline SchmidtSpectrum schmidt_decompose(std::size_t rows, std::size_t cols,
                                         const std::vector<std::complex<double>>& values) {
    if (values.size() != rows * cols)
        throw domain_error("schmidt_decompose: value count does not match the shape");
    Eigen::MatrixXcd m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = values[i * cols + j];
    return detail::schmidt_from_matrix(m);
}

inline SchmidtSpectrum schmidt_decompose(std::size_t rows, std::size_t cols,
                                         const std::vector<double>& values) {
    if (values.size() != rows * cols)
        throw domain_error("schmidt_decompose: value count does not match the shape");
    Eigen::MatrixXd m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = values[i * cols + j];
    return detail::schmidt_from_matrix(m);
}

inline SchmidtSpectrum schmidt_decompose(const JointAmplitude& amp) {
    return schmidt_decompose(amp.rows(), amp.cols(), amp.values);
}

// Real intensity maps are decomposed as real amplitude matrices.
inline SchmidtSpectrum schmidt_decompose(const IntensityGrid& grid) {
    return schmidt_decompose(grid.rows(), grid.cols(), grid.values);
}

inline SchmidtSpectrum schmidt_decompose(const HeraldedMap& map) {
    return schmidt_decompose(map.frequency_hz.size(), map.theta_rad.size(), map.amplitude);
}

// Purity of the joint angular amplitude as a function of pump waist; the
// output preserves the input waist order.
inline std::vector<std::pair<double, double>> purity_vs_pump_waist(
    const InteractionSpec& ia, const PumpSpec& pump_template, const std::vector<double>& waists,
    std::size_t n = 256) {
    if (waists.empty()) throw domain_error("purity_vs_pump_waist: empty waist list");
    std::vector<std::pair<double, double>> out;
    out.reserve(waists.size());
    for (double w : waists) {
        if (!(w > 0.0)) throw domain_error("purity_vs_pump_waist: waists must be positive");
        PumpSpec p = pump_template;
        p.waist_m = w;
        out.emplace_back(w, schmidt_decompose(joint_angular(ia, p, n)).purity);
    }
    return out;
}

// Symmetric coupling efficiency mu_si of the joint angular amplitude as the
// signal collection angle is swept, with the idler mode held fixed at twice
// the reference angle (the designed signal collection). Tracks how far the
// collected state stays pair-correlated: flat near 1 over the plateau, then
// dropping once the collection outgrows it.
inline std::vector<std::pair<double, double>> purity_vs_collection(
    const InteractionSpec& ia, const PumpSpec& pump, const std::vector<double>& angles_rad,
    double reference_angle_rad, std::size_t n = 256) {
    if (angles_rad.empty()) throw domain_error("purity_vs_collection: empty angle list");
    if (!(reference_angle_rad > 0.0))
        throw domain_error("purity_vs_collection: reference angle must be positive");
    const JointAmplitude amp = joint_angular(ia, pump, n);
    const CollectionMode idler_mode{ia.lambda_i_m, 2.0 * reference_angle_rad, 0.0};
    std::vector<std::pair<double, double>> out;
    out.reserve(angles_rad.size());
    for (double a : angles_rad) {
        if (!(a > 0.0)) throw domain_error("purity_vs_collection: angles must be positive");
        const CollectionMode signal_mode{ia.lambda_s_m, a, 0.0};
        out.emplace_back(a, overlap_efficiencies(amp, signal_mode, idler_mode).report.mu_si);
    }
    return out;
}

// First downward crossing of `level` in a scan, linearly interpolated.
inline double scan_knee(const std::vector<std::pair<double, double>>& points,
                        double level = 0.95) {
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        const auto& [a1, p1] = points[i];
        const auto& [a2, p2] = points[i + 1];
        if (p1 >= level && level > p2) return a1 + (a2 - a1) * (level - p1) / (p2 - p1);
    }
    throw numeric_error("scan_knee: scan never crosses the requested level from above");
}

}  // namespace spdc
