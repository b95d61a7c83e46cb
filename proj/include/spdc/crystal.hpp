#pragma once

#include <array>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "errors.hpp"
#include "numeric.hpp"
#include "sellmeier.hpp"

namespace spdc {

enum class PmType { type0_qpm, type1_angle, type2_qpm };

inline std::string pm_type_name(PmType t) {
    switch (t) {
        case PmType::type0_qpm: return "type0_qpm";
        case PmType::type1_angle: return "type1_angle";
        case PmType::type2_qpm: return "type2_qpm";
    }
    return "unknown";
}

struct CrystalSpec {
    std::string name;
    PmType pm_type = PmType::type0_qpm;
    double length_m = 0.0;
    std::array<double, 2> cross_section_m{0.0, 0.0};  // transverse aperture (width, height)
    double temperature_c = 25.0;
    double transparency_min_m = 0.0;
    double transparency_max_m = 0.0;
    std::vector<SellmeierSet> sellmeier;

    const SellmeierSet& axis(const std::string& label) const {
        for (const auto& s : sellmeier)
            if (s.axis == label) return s;
        throw domain_error("crystal '" + name + "': no dispersion data for axis '" + label + "'");
    }
};

// Index along a fixed principal axis, with the transparency-range guard that
// every dispersion lookup funnels through.
inline double refractive_index(const CrystalSpec& c, const std::string& axis_label,
                               double lambda_m) {
    if (lambda_m < c.transparency_min_m || lambda_m > c.transparency_max_m) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "crystal '%s': wavelength %.4g m outside transparency range [%.4g, %.4g] m",
                      c.name.c_str(), lambda_m, c.transparency_min_m, c.transparency_max_m);
        throw domain_error(buf);
    }
    return sellmeier_index(c.axis(axis_label), lambda_m);
}

// How one interacting field sees the crystal: either polarized along a fixed
// principal axis, or along a direction tuned by angle theta between two axes.
struct FieldIndex {
    std::string axis_a;  // fixed axis, or first axis of the tuned pair
    std::string axis_b;  // empty => fixed-axis field
    double theta = 0.0;  // internal tuning angle, radians (tuned fields only)

    bool tuned() const { return !axis_b.empty(); }

    double index(const CrystalSpec& c, double lambda_m) const {
        const double n_a = refractive_index(c, axis_a, lambda_m);
        if (!tuned()) return n_a;
        const double n_b = refractive_index(c, axis_b, lambda_m);
        return tuned_index(theta, n_a, n_b);
    }

    double group_index_at(const CrystalSpec& c, double lambda_m) const {
        return group_index([&](double l) { return index(c, l); }, lambda_m);
    }
};

// k = 2*pi*n/lambda inside the crystal, 1/m.
inline double wavevector_magnitude(const CrystalSpec& c, const FieldIndex& f, double lambda_m) {
    return two_pi * f.index(c, lambda_m) / lambda_m;
}

}  // namespace spdc
