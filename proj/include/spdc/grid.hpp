#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "errors.hpp"
#include "numeric.hpp"

namespace spdc {

// What a grid axis measures. Tags travel with exported data so downstream
// tooling can label plots without guessing.
enum class AxisVariable {
    wavelength_signal,
    wavelength_idler,
    angle_signal_external,
    angle_idler_external,
};

inline std::string axis_variable_name(AxisVariable v) {
    switch (v) {
        case AxisVariable::wavelength_signal: return "wavelength-signal";
        case AxisVariable::wavelength_idler: return "wavelength-idler";
        case AxisVariable::angle_signal_external: return "angle-signal-external";
        case AxisVariable::angle_idler_external: return "angle-idler-external";
    }
    return "unknown";
}

inline std::string axis_variable_unit(AxisVariable v) {
    switch (v) {
        case AxisVariable::wavelength_signal:
        case AxisVariable::wavelength_idler: return "m";
        default: return "rad";
    }
}

struct Axis {
    AxisVariable variable = AxisVariable::wavelength_signal;
    std::vector<double> samples;

    void validate() const {
        if (samples.size() < 2) throw domain_error("axis: need at least 2 samples");
        const double step = samples[1] - samples[0];
        if (!(step > 0.0)) throw domain_error("axis: samples must be strictly increasing");
        for (std::size_t i = 1; i < samples.size(); ++i) {
            const double d = samples[i] - samples[i - 1];
            if (!(d > 0.0)) throw domain_error("axis: samples must be strictly increasing");
            if (std::fabs(d - step) > 1e-9 * std::fabs(step))
                throw domain_error("axis: samples must be uniformly spaced");
        }
    }

    std::size_t size() const { return samples.size(); }
    double step() const { return samples[1] - samples[0]; }
};

inline Axis make_axis(AxisVariable v, double lo, double hi, std::size_t n) {
    Axis a;
    a.variable = v;
    a.samples = linspace(lo, hi, n);
    a.validate();
    return a;
}

// Discrete two-photon amplitude on a rectangular grid. Rows follow axis_x
// (signal-side variable), columns follow axis_y (idler side); storage is
// row-major. Amplitudes are kept at unit discrete norm: sum |value|^2 = 1.
struct JointAmplitude {
    Axis axis_x;  // rows
    Axis axis_y;  // columns
    std::vector<std::complex<double>> values;  // row-major, size nx*ny

    std::size_t rows() const { return axis_x.size(); }
    std::size_t cols() const { return axis_y.size(); }
    std::complex<double>& at(std::size_t i, std::size_t j) { return values[i * cols() + j]; }
    const std::complex<double>& at(std::size_t i, std::size_t j) const {
        return values[i * cols() + j];
    }

    double squared_norm() const {
        return pairwise_sum(values.size(), [&](std::size_t i) { return std::norm(values[i]); });
    }

    void normalize() {
        const double n2 = squared_norm();
        if (!(n2 > 0.0)) throw numeric_error("joint amplitude: cannot normalize an all-zero grid");
        const double s = 1.0 / std::sqrt(n2);
        for (auto& v : values) v *= s;
    }

    void validate() const {
        axis_x.validate();
        axis_y.validate();
        if (values.size() != rows() * cols())
            throw domain_error("joint amplitude: value count does not match the axes");
    }
};

// Real nonnegative density on the same grid layout, normalized to unit sum.
struct IntensityGrid {
    Axis axis_x;
    Axis axis_y;
    std::vector<double> values;  // row-major

    std::size_t rows() const { return axis_x.size(); }
    std::size_t cols() const { return axis_y.size(); }
    double& at(std::size_t i, std::size_t j) { return values[i * cols() + j]; }
    const double& at(std::size_t i, std::size_t j) const { return values[i * cols() + j]; }

    double total() const { return pairwise_sum(values); }

    void normalize() {
        const double t = total();
        if (!(t > 0.0)) throw numeric_error("intensity grid: cannot normalize an all-zero grid");
        const double s = 1.0 / t;
        for (auto& v : values) v *= s;
    }
};

}  // namespace spdc
