#pragma once

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "designer.hpp"
#include "errors.hpp"
#include "grid.hpp"
#include "heralding.hpp"
#include "toy_model.hpp"

namespace spdc {

using json = nlohmann::json;

// Shortest exact round-trip formatting for doubles: reruns of the same
// computation must serialize to identical bytes.
inline std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string axis_column_label(const Axis& ax) {
    std::string name = axis_variable_name(ax.variable);
    for (char& c : name)
        if (c == '-') c = '_';
    return name + "_" + axis_variable_unit(ax.variable);
}

// Ordered key/value pairs rendered as '#' comment lines (CSV) or a metadata
// object (JSON).
using Metadata = std::vector<std::pair<std::string, std::string>>;

namespace detail {

inline void append_csv_metadata(std::string& out, const Metadata& meta) {
    for (const auto& kv : meta) out += "# " + kv.first + ": " + kv.second + "\n";
}

inline json json_metadata(const Metadata& meta) {
    json m = json::object();
    for (const auto& kv : meta) m[kv.first] = kv.second;
    return m;
}

inline json json_axis(const Axis& ax) {
    json j;
    j["name"] = axis_variable_name(ax.variable);
    j["unit"] = axis_variable_unit(ax.variable);
    j["samples"] = ax.samples;
    return j;
}

}  // namespace detail

inline std::string csv_grid(const JointAmplitude& amp, const Metadata& meta = {}) {
    std::string out;
    out.reserve(amp.values.size() * 80 + 256);
    detail::append_csv_metadata(out, meta);
    out += axis_column_label(amp.axis_x) + "," + axis_column_label(amp.axis_y) +
           ",amplitude_re,amplitude_im\n";
    for (std::size_t i = 0; i < amp.rows(); ++i)
        for (std::size_t j = 0; j < amp.cols(); ++j) {
            out += format_g17(amp.axis_x.samples[i]);
            out += ',';
            out += format_g17(amp.axis_y.samples[j]);
            out += ',';
            out += format_g17(amp.at(i, j).real());
            out += ',';
            out += format_g17(amp.at(i, j).imag());
            out += '\n';
        }
    return out;
}

inline std::string csv_grid(const IntensityGrid& g, const Metadata& meta = {}) {
    std::string out;
    out.reserve(g.values.size() * 60 + 256);
    detail::append_csv_metadata(out, meta);
    out += axis_column_label(g.axis_x) + "," + axis_column_label(g.axis_y) + ",intensity\n";
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j) {
            out += format_g17(g.axis_x.samples[i]);
            out += ',';
            out += format_g17(g.axis_y.samples[j]);
            out += ',';
            out += format_g17(g.at(i, j));
            out += '\n';
        }
    return out;
}

inline std::string csv_pairs(const std::string& x_label, const std::string& y_label,
                             const std::vector<std::pair<double, double>>& rows,
                             const Metadata& meta = {}) {
    std::string out;
    detail::append_csv_metadata(out, meta);
    out += x_label + "," + y_label + "\n";
    for (const auto& r : rows)
        out += format_g17(r.first) + "," + format_g17(r.second) + "\n";
    return out;
}

inline json json_grid(const JointAmplitude& amp, const std::string& kind,
                      const Metadata& meta = {}) {
    json j;
    j["schema_version"] = 1;
    j["kind"] = kind;
    j["metadata"] = detail::json_metadata(meta);
    j["axes"] = {detail::json_axis(amp.axis_x), detail::json_axis(amp.axis_y)};
    std::vector<double> re(amp.values.size()), im(amp.values.size());
    for (std::size_t i = 0; i < amp.values.size(); ++i) {
        re[i] = amp.values[i].real();
        im[i] = amp.values[i].imag();
    }
    j["values_re"] = re;
    j["values_im"] = im;
    return j;
}

inline json json_grid(const IntensityGrid& g, const std::string& kind, const Metadata& meta = {}) {
    json j;
    j["schema_version"] = 1;
    j["kind"] = kind;
    j["metadata"] = detail::json_metadata(meta);
    j["axes"] = {detail::json_axis(g.axis_x), detail::json_axis(g.axis_y)};
    j["values"] = g.values;
    return j;
}

inline json json_pairs(const std::string& kind, const std::string& x_label,
                       const std::string& y_label,
                       const std::vector<std::pair<double, double>>& rows,
                       const Metadata& meta = {}) {
    json j;
    j["schema_version"] = 1;
    j["kind"] = kind;
    j["metadata"] = detail::json_metadata(meta);
    j["columns"] = {x_label, y_label};
    json r = json::array();
    for (const auto& p : rows) r.push_back({p.first, p.second});
    j["rows"] = r;
    return j;
}

inline json json_report(const DesignReport& r) {
    json j;
    j["schema_version"] = 1;
    j["kind"] = "design-report";
    j["crystal"] = r.crystal;
    j["regime"] = r.regime;
    if (r.regime == "pulsed") j["pulse_duration_fwhm_s"] = r.pulse_duration_s;
    j["plateau_tolerance"] = r.plateau_tolerance;
    j["pump"] = {{"waist_m", r.pump.waist_m},
                 {"xi", r.pump.xi},
                 {"angular_spread_rad", r.pump.angular_spread_rad}};
    j["signal"] = {{"angular_spread_rad", r.signal.angular_spread_rad},
                   {"waist_m", r.signal.waist_m},
                   {"xi", r.signal.xi}};
    j["idler"] = {{"angular_spread_rad", r.idler.angular_spread_rad},
                  {"waist_m", r.idler.waist_m},
                  {"xi", r.idler.xi}};
    j["conditional_fwhm_m"] = r.conditional_fwhm_m;
    j["idler_slope"] = r.idler_slope;
    j["mu_s"] = r.mu_s;
    j["mu_i"] = r.mu_i;
    j["mu_si"] = r.mu_si;
    j["spectral_spatial_purity"] = r.spectral_spatial_purity;
    j["alignment_wavelengths_m"] = r.alignment_wavelengths_m;
    json lenses = json::array();
    for (const ArmLensReport& arm : r.lenses) {
        json a;
        a["arm"] = arm.arm;
        a["fiber_mfd_m"] = arm.fiber_mfd_m;
        json sugg = json::array();
        for (const LensSuggestion& s : arm.suggestions)
            sugg.push_back({{"collimating_focal_m", s.collimating_focal_m},
                            {"focusing_focal_m", s.focusing_focal_m},
                            {"overlap", s.overlap},
                            {"waist_at_fiber_m", s.waist_at_fiber_m}});
        a["suggestions"] = sugg;
        lenses.push_back(a);
    }
    j["lenses"] = lenses;
    j["warnings"] = r.warnings;
    return j;
}

inline std::string csv_report(const DesignReport& r) {
    std::string out;
    Metadata meta = {{"kind", "design-report"}, {"crystal", r.crystal}, {"regime", r.regime}};
    for (const std::string& w : r.warnings) meta.emplace_back("warning", w);
    detail::append_csv_metadata(out, meta);
    out += "key,value\n";
    const auto row = [&out](const std::string& k, double v) {
        out += k + "," + format_g17(v) + "\n";
    };
    if (r.regime == "pulsed") row("pulse_duration_fwhm_s", r.pulse_duration_s);
    row("plateau_tolerance", r.plateau_tolerance);
    row("pump_waist_m", r.pump.waist_m);
    row("pump_xi", r.pump.xi);
    row("pump_angular_spread_rad", r.pump.angular_spread_rad);
    row("signal_angular_spread_rad", r.signal.angular_spread_rad);
    row("signal_waist_m", r.signal.waist_m);
    row("signal_xi", r.signal.xi);
    row("idler_angular_spread_rad", r.idler.angular_spread_rad);
    row("idler_waist_m", r.idler.waist_m);
    row("idler_xi", r.idler.xi);
    row("conditional_fwhm_m", r.conditional_fwhm_m);
    row("idler_slope", r.idler_slope);
    row("mu_s", r.mu_s);
    row("mu_i", r.mu_i);
    row("mu_si", r.mu_si);
    row("spectral_spatial_purity", r.spectral_spatial_purity);
    row("alignment_wavelength_signal_m", r.alignment_wavelengths_m.size() > 0
                                             ? r.alignment_wavelengths_m[0] : 0.0);
    row("alignment_wavelength_idler_m", r.alignment_wavelengths_m.size() > 1
                                            ? r.alignment_wavelengths_m[1] : 0.0);
    for (const ArmLensReport& arm : r.lenses)
        for (std::size_t i = 0; i < arm.suggestions.size(); ++i) {
            const std::string base = "lens_" + arm.arm + "_" + std::to_string(i) + "_";
            row(base + "collimating_focal_m", arm.suggestions[i].collimating_focal_m);
            row(base + "focusing_focal_m", arm.suggestions[i].focusing_focal_m);
            row(base + "overlap", arm.suggestions[i].overlap);
            row(base + "waist_at_fiber_m", arm.suggestions[i].waist_at_fiber_m);
        }
    return out;
}

inline json json_efficiency(const EfficiencyReport& r) {
    json j;
    j["schema_version"] = 1;
    j["kind"] = "heralding-efficiency";
    j["mu_s"] = r.mu_s;
    j["mu_i"] = r.mu_i;
    j["mu_si"] = r.mu_si;
    j["warning"] = r.warning;
    if (r.warning) j["warning_message"] = r.warning_message;
    return j;
}

inline std::string csv_efficiency(const EfficiencyReport& r) {
    std::string out;
    Metadata meta = {{"kind", "heralding-efficiency"}};
    if (r.warning) meta.emplace_back("warning", r.warning_message);
    detail::append_csv_metadata(out, meta);
    out += "key,value\n";
    out += "mu_s," + format_g17(r.mu_s) + "\n";
    out += "mu_i," + format_g17(r.mu_i) + "\n";
    out += "mu_si," + format_g17(r.mu_si) + "\n";
    return out;
}

inline std::string csv_wavefunction(const Wavefunction1D& wf, const Metadata& meta = {}) {
    std::string out;
    out.reserve(wf.grid.size() * 60 + 128);
    detail::append_csv_metadata(out, meta);
    out += "x,psi_re,psi_im\n";
    for (std::size_t i = 0; i < wf.grid.size(); ++i) {
        out += format_g17(wf.grid[i]);
        out += ',';
        out += format_g17(wf.values[i].real());
        out += ',';
        out += format_g17(wf.values[i].imag());
        out += '\n';
    }
    return out;
}

inline json json_wavefunction(const Wavefunction1D& wf, const Metadata& meta = {}) {
    json j;
    j["schema_version"] = 1;
    j["kind"] = "wavefunction-1d";
    j["metadata"] = detail::json_metadata(meta);
    j["x"] = wf.grid;
    std::vector<double> re(wf.values.size()), im(wf.values.size());
    for (std::size_t i = 0; i < wf.values.size(); ++i) {
        re[i] = wf.values[i].real();
        im[i] = wf.values[i].imag();
    }
    j["psi_re"] = re;
    j["psi_im"] = im;
    return j;
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw domain_error("cannot open output file '" + path + "' for writing");
    out << content;
    if (!out) throw domain_error("failed while writing output file '" + path + "'");
}

}  // namespace spdc
