#pragma once

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "crystal.hpp"
#include "designer.hpp"
#include "errors.hpp"
#include "phasematching.hpp"
#include "sellmeier.hpp"

namespace spdc {

using json = nlohmann::json;

namespace detail {

[[noreturn]] inline void config_fail(const std::string& path, const std::string& why) {
    throw domain_error("config " + path + ": " + why);
}

// Strict object check: every present key must be declared, every required key
// must be present. Error messages carry the full dotted path of the offender.
inline void check_object(const json& j, const std::string& path,
                         std::initializer_list<const char*> required,
                         std::initializer_list<const char*> optional = {}) {
    if (!j.is_object()) config_fail(path, "expected an object");
    for (const auto& item : j.items()) {
        const std::string& k = item.key();
        const auto match = [&](const char* s) { return k == s; };
        if (!std::any_of(required.begin(), required.end(), match) &&
            !std::any_of(optional.begin(), optional.end(), match))
            config_fail(path + "." + k, "unknown key");
    }
    for (const char* r : required)
        if (!j.contains(r)) config_fail(path + "." + r, "missing required key");
}

inline double number_at(const json& j, const std::string& path) {
    if (!j.is_number()) config_fail(path, "expected a number");
    return j.get<double>();
}

inline std::size_t index_at(const json& j, const std::string& path, std::size_t minimum) {
    if (!j.is_number_integer() || j.get<long long>() < static_cast<long long>(minimum))
        config_fail(path, "expected an integer >= " + std::to_string(minimum));
    return static_cast<std::size_t>(j.get<long long>());
}

inline std::string string_at(const json& j, const std::string& path) {
    if (!j.is_string()) config_fail(path, "expected a string");
    return j.get<std::string>();
}

inline std::vector<double> number_list_at(const json& j, const std::string& path,
                                          std::size_t min_len) {
    if (!j.is_array()) config_fail(path, "expected an array of numbers");
    std::vector<double> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number())
            config_fail(path + "[" + std::to_string(i) + "]", "expected a number");
        out.push_back(j[i].get<double>());
    }
    if (out.size() < min_len)
        config_fail(path, "expected at least " + std::to_string(min_len) + " number(s)");
    return out;
}

inline std::string ascii_lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

}  // namespace detail

// Sanity sweep over the shared transparency window [1, 3.5] um (clamped to the
// crystal's own range): every declared axis must give a finite index >= 1 at
// 50 evenly spaced wavelengths. Catches sign slips and mistyped coefficients
// before any solver runs.
inline void validate_crystal(const CrystalSpec& c) {
    if (!(c.length_m > 0.0))
        throw domain_error("crystal '" + c.name + "': length must be positive");
    if (!(c.cross_section_m[0] > 0.0) || !(c.cross_section_m[1] > 0.0))
        throw domain_error("crystal '" + c.name + "': cross section must be positive");
    if (!(c.transparency_min_m > 0.0) || !(c.transparency_min_m < c.transparency_max_m))
        throw domain_error("crystal '" + c.name + "': transparency range must satisfy 0 < min < max");
    if (c.sellmeier.empty())
        throw domain_error("crystal '" + c.name + "': at least one dispersion axis is required");
    const double lo = std::max(1.0e-6, c.transparency_min_m);
    const double hi = std::min(3.5e-6, c.transparency_max_m);
    if (!(lo < hi)) return;
    for (const SellmeierSet& s : c.sellmeier) {
        for (int i = 0; i < 50; ++i) {
            const double lam = lo + (hi - lo) * i / 49.0;
            double n = 0.0;
            try {
                n = sellmeier_index(s, lam);
            } catch (const std::exception& e) {
                throw domain_error("crystal '" + c.name + "': axis '" + s.axis +
                                   "' fails inside its transparency range: " + e.what());
            }
            if (!std::isfinite(n) || n < 1.0) {
                char buf[192];
                std::snprintf(buf, sizeof buf,
                              "crystal '%s': axis '%s' gives non-physical index %.6g at "
                              "wavelength %.4g m",
                              c.name.c_str(), s.axis.c_str(), n, lam);
                throw domain_error(buf);
            }
        }
    }
}

// A crystal definition plus its default interaction: wavelengths, which axis
// each field propagates on, the angle-solver bracket (birefringent tuning
// only), and the default pump time structure.
struct CrystalFile {
    CrystalSpec crystal;
    double lambda_p_m = 0.0;
    double lambda_s_m = 0.0;
    FieldIndex pump, signal, idler;
    bool has_bracket = false;
    double bracket_lo_rad = 0.0;
    double bracket_hi_rad = 0.0;
    PumpRegime regime;
};

namespace detail {

inline FieldIndex parse_field(const json& j, const std::string& path) {
    check_object(j, path, {}, {"axis", "tuned_axes"});
    FieldIndex f;
    const bool fixed = j.contains("axis");
    if (fixed == j.contains("tuned_axes"))
        config_fail(path, "exactly one of 'axis' or 'tuned_axes' is required");
    if (fixed) {
        f.axis_a = string_at(j["axis"], path + ".axis");
    } else {
        const json& t = j["tuned_axes"];
        if (!t.is_array() || t.size() != 2)
            config_fail(path + ".tuned_axes", "expected an array of two axis labels");
        f.axis_a = string_at(t[0], path + ".tuned_axes[0]");
        f.axis_b = string_at(t[1], path + ".tuned_axes[1]");
    }
    return f;
}

inline SellmeierSet parse_sellmeier(const json& j, const std::string& path) {
    check_object(j, path,
                 {"axis", "form", "wavelength_unit", "coefficients", "valid_range_m", "source"});
    SellmeierSet s;
    s.axis = string_at(j["axis"], path + ".axis");
    const std::string form = string_at(j["form"], path + ".form");
    if (form == "resonance_series")
        s.form = SellmeierForm::resonance_series;
    else if (form == "pole_series")
        s.form = SellmeierForm::pole_series;
    else
        config_fail(path + ".form",
                    "unknown form '" + form + "' (expected 'resonance_series' or 'pole_series')");
    if (string_at(j["wavelength_unit"], path + ".wavelength_unit") != "um")
        config_fail(path + ".wavelength_unit", "only 'um' is supported");
    s.coefficients = number_list_at(j["coefficients"], path + ".coefficients", 2);
    const auto vr = number_list_at(j["valid_range_m"], path + ".valid_range_m", 2);
    if (vr.size() != 2 || !(vr[0] < vr[1]))
        config_fail(path + ".valid_range_m", "expected [min, max] with min < max");
    s.valid_min_m = vr[0];
    s.valid_max_m = vr[1];
    s.source = string_at(j["source"], path + ".source");
    return s;
}

}  // namespace detail

inline CrystalFile parse_crystal_config(const json& j, const std::string& path = "crystal") {
    detail::check_object(j, path,
                         {"schema_version", "name", "pm_type", "length_m", "cross_section_m",
                          "transparency_range_m", "sellmeier", "defaults"},
                         {"temperature_c"});
    if (detail::number_at(j["schema_version"], path + ".schema_version") != 1.0)
        detail::config_fail(path + ".schema_version", "unsupported schema version (expected 1)");
    CrystalFile cf;
    cf.crystal.name = detail::string_at(j["name"], path + ".name");
    const std::string pm = detail::string_at(j["pm_type"], path + ".pm_type");
    if (pm == "type0_qpm")
        cf.crystal.pm_type = PmType::type0_qpm;
    else if (pm == "type1_angle")
        cf.crystal.pm_type = PmType::type1_angle;
    else if (pm == "type2_qpm")
        cf.crystal.pm_type = PmType::type2_qpm;
    else
        detail::config_fail(path + ".pm_type", "unknown phasematching type '" + pm + "'");
    cf.crystal.length_m = detail::number_at(j["length_m"], path + ".length_m");
    const auto cs = detail::number_list_at(j["cross_section_m"], path + ".cross_section_m", 2);
    if (cs.size() != 2)
        detail::config_fail(path + ".cross_section_m", "expected [width, height]");
    cf.crystal.cross_section_m = {cs[0], cs[1]};
    if (j.contains("temperature_c"))
        cf.crystal.temperature_c = detail::number_at(j["temperature_c"], path + ".temperature_c");
    const auto tr =
        detail::number_list_at(j["transparency_range_m"], path + ".transparency_range_m", 2);
    if (tr.size() != 2 || !(tr[0] < tr[1]))
        detail::config_fail(path + ".transparency_range_m", "expected [min, max] with min < max");
    cf.crystal.transparency_min_m = tr[0];
    cf.crystal.transparency_max_m = tr[1];
    const json& sm = j["sellmeier"];
    if (!sm.is_array() || sm.empty())
        detail::config_fail(path + ".sellmeier", "expected a non-empty array");
    for (std::size_t i = 0; i < sm.size(); ++i)
        cf.crystal.sellmeier.push_back(
            detail::parse_sellmeier(sm[i], path + ".sellmeier[" + std::to_string(i) + "]"));

    const json& d = j["defaults"];
    detail::check_object(d, path + ".defaults", {"lambda_p_m", "lambda_s_m", "fields", "pump_regime"},
                         {"pm_angle_bracket_rad"});
    cf.lambda_p_m = detail::number_at(d["lambda_p_m"], path + ".defaults.lambda_p_m");
    cf.lambda_s_m = detail::number_at(d["lambda_s_m"], path + ".defaults.lambda_s_m");
    if (!(cf.lambda_s_m > cf.lambda_p_m))
        detail::config_fail(path + ".defaults.lambda_s_m",
                            "signal wavelength must exceed the pump wavelength");
    const json& f = d["fields"];
    detail::check_object(f, path + ".defaults.fields", {"pump", "signal", "idler"});
    cf.pump = detail::parse_field(f["pump"], path + ".defaults.fields.pump");
    cf.signal = detail::parse_field(f["signal"], path + ".defaults.fields.signal");
    cf.idler = detail::parse_field(f["idler"], path + ".defaults.fields.idler");
    if (d.contains("pm_angle_bracket_rad")) {
        const auto br = detail::number_list_at(d["pm_angle_bracket_rad"],
                                               path + ".defaults.pm_angle_bracket_rad", 2);
        if (br.size() != 2 || !(br[0] < br[1]))
            detail::config_fail(path + ".defaults.pm_angle_bracket_rad",
                                "expected [low, high] with low < high");
        cf.has_bracket = true;
        cf.bracket_lo_rad = br[0];
        cf.bracket_hi_rad = br[1];
    }
    const json& pr = d["pump_regime"];
    detail::check_object(pr, path + ".defaults.pump_regime", {"kind"}, {"duration_fwhm_s"});
    const std::string kind = detail::string_at(pr["kind"], path + ".defaults.pump_regime.kind");
    if (kind == "cw") {
        cf.regime.pulsed = false;
    } else if (kind == "pulsed") {
        cf.regime.pulsed = true;
        if (!pr.contains("duration_fwhm_s"))
            detail::config_fail(path + ".defaults.pump_regime.duration_fwhm_s",
                                "missing required key for a pulsed regime");
        cf.regime.duration_fwhm_s =
            detail::number_at(pr["duration_fwhm_s"], path + ".defaults.pump_regime.duration_fwhm_s");
        if (!(cf.regime.duration_fwhm_s > 0.0))
            detail::config_fail(path + ".defaults.pump_regime.duration_fwhm_s",
                                "expected a positive duration");
    } else {
        detail::config_fail(path + ".defaults.pump_regime.kind", "expected 'cw' or 'pulsed'");
    }
    validate_crystal(cf.crystal);
    return cf;
}

// Inverse of parse_crystal_config; show/export round-trips through the parser.
inline json crystal_to_json(const CrystalFile& cf) {
    const auto field_json = [](const FieldIndex& f) {
        json j;
        if (f.tuned())
            j["tuned_axes"] = {f.axis_a, f.axis_b};
        else
            j["axis"] = f.axis_a;
        return j;
    };
    json j;
    j["schema_version"] = 1;
    j["name"] = cf.crystal.name;
    j["pm_type"] = pm_type_name(cf.crystal.pm_type);
    j["length_m"] = cf.crystal.length_m;
    j["cross_section_m"] = {cf.crystal.cross_section_m[0], cf.crystal.cross_section_m[1]};
    j["temperature_c"] = cf.crystal.temperature_c;
    j["transparency_range_m"] = {cf.crystal.transparency_min_m, cf.crystal.transparency_max_m};
    json sm = json::array();
    for (const SellmeierSet& s : cf.crystal.sellmeier) {
        json e;
        e["axis"] = s.axis;
        e["form"] = s.form == SellmeierForm::resonance_series ? "resonance_series" : "pole_series";
        e["wavelength_unit"] = "um";
        e["coefficients"] = s.coefficients;
        e["valid_range_m"] = {s.valid_min_m, s.valid_max_m};
        e["source"] = s.source;
        sm.push_back(e);
    }
    j["sellmeier"] = sm;
    json d;
    d["lambda_p_m"] = cf.lambda_p_m;
    d["lambda_s_m"] = cf.lambda_s_m;
    json flds;
    flds["pump"] = field_json(cf.pump);
    flds["signal"] = field_json(cf.signal);
    flds["idler"] = field_json(cf.idler);
    d["fields"] = flds;
    if (cf.has_bracket) d["pm_angle_bracket_rad"] = {cf.bracket_lo_rad, cf.bracket_hi_rad};
    json pr;
    pr["kind"] = cf.regime.pulsed ? "pulsed" : "cw";
    if (cf.regime.pulsed) pr["duration_fwhm_s"] = cf.regime.duration_fwhm_s;
    d["pump_regime"] = pr;
    j["defaults"] = d;
    return j;
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw domain_error("cannot open file '" + path + "'");
    try {
        return json::parse(in);
    } catch (const std::exception& e) {
        throw domain_error("file '" + path + "' is not valid JSON: " + e.what());
    }
}

inline CrystalFile load_crystal_file(const std::string& path) {
    return parse_crystal_config(read_json_file(path), "crystal");
}

inline std::vector<std::string> catalog_paths(const std::string& dir) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir))
        throw domain_error("crystal catalog directory '" + dir + "' does not exist");
    std::vector<std::string> out;
    for (const auto& ent : fs::directory_iterator(dir))
        if (ent.path().extension() == ".json") out.push_back(ent.path().string());
    std::sort(out.begin(), out.end());
    return out;
}

struct CatalogEntry {
    std::string path;
    CrystalFile file;
};

inline std::vector<CatalogEntry> load_catalog(const std::string& dir) {
    std::vector<CatalogEntry> out;
    for (const std::string& p : catalog_paths(dir)) out.push_back({p, load_crystal_file(p)});
    std::sort(out.begin(), out.end(), [](const CatalogEntry& a, const CatalogEntry& b) {
        return a.file.crystal.name < b.file.crystal.name;
    });
    return out;
}

inline std::string find_crystal_path(const std::string& dir, const std::string& name) {
    const std::string want = detail::ascii_lower(name);
    std::vector<std::string> available;
    for (const std::string& p : catalog_paths(dir)) {
        const std::string stem = std::filesystem::path(p).stem().string();
        std::string label = stem;
        try {
            label = load_crystal_file(p).crystal.name;
        } catch (const std::exception&) {
            // an unreadable catalog entry should not mask lookups of the others
        }
        if (detail::ascii_lower(label) == want || detail::ascii_lower(stem) == want) return p;
        available.push_back(label);
    }
    std::string avail;
    for (std::size_t i = 0; i < available.size(); ++i) avail += (i ? ", " : "") + available[i];
    throw domain_error("unknown crystal '" + name + "'; available: " + avail);
}

// Resolve the defaults into a ready-to-use interaction: idler from energy
// conservation, then the phasematching unknown (grating period or tuning
// angle) from the solvers. Explicit wavelengths override the file defaults.
inline InteractionSpec build_interaction(const CrystalFile& cf, double lambda_p_m = 0.0,
                                         double lambda_s_m = 0.0) {
    InteractionSpec ia;
    ia.crystal = cf.crystal;
    ia.lambda_p_m = lambda_p_m > 0.0 ? lambda_p_m : cf.lambda_p_m;
    ia.lambda_s_m = lambda_s_m > 0.0 ? lambda_s_m : cf.lambda_s_m;
    ia.lambda_i_m = energy_match(ia.lambda_p_m, ia.lambda_s_m);
    ia.pump = cf.pump;
    ia.signal = cf.signal;
    ia.idler = cf.idler;
    ia.poling_period_m = 0.0;
    if (ia.pump.tuned() || ia.signal.tuned() || ia.idler.tuned()) {
        if (!cf.has_bracket)
            throw domain_error("crystal '" + cf.crystal.name +
                               "': a tuned axis requires 'pm_angle_bracket_rad' in the defaults");
        solve_pm_angle(ia, cf.bracket_lo_rad, cf.bracket_hi_rad);
    }
    if (cf.crystal.pm_type == PmType::type0_qpm || cf.crystal.pm_type == PmType::type2_qpm)
        ia.poling_period_m = solve_poling_period(ia).period_m;
    return ia;
}

// ---------------------------------------------------------------------------
// Run configuration: one JSON document driving a CLI invocation. Flags mirror
// these keys and override them; unknown keys are rejected with their path.
// ---------------------------------------------------------------------------
struct RunConfig {
    std::string crystal_name;
    std::optional<CrystalFile> inline_crystal;
    double lambda_p_m = 0.0;  // 0 means "use the crystal default"
    double lambda_s_m = 0.0;
    std::optional<PumpRegime> regime;
    double xi = 0.0;  // 0 means "use the standard 0.02"
    std::optional<double> pump_waist_m;
    GridOptions grid;
    std::vector<double> scan_pump_waists_m;
    std::vector<double> scan_collection_angles_rad;
    double scan_reference_angle_rad = 0.0;
    std::optional<LensCatalog> lenses;
    std::string out_path;
    std::string format;  // "csv" | "json"; empty means command default
};

inline RunConfig parse_run_config(const json& j, const std::string& path = "config") {
    detail::check_object(j, path, {"schema_version"},
                         {"crystal", "wavelengths", "pump", "grid", "scan", "lenses", "output"});
    if (detail::number_at(j["schema_version"], path + ".schema_version") != 1.0)
        detail::config_fail(path + ".schema_version", "unsupported schema version (expected 1)");
    RunConfig rc;
    if (j.contains("crystal")) {
        const json& c = j["crystal"];
        if (c.is_string())
            rc.crystal_name = c.get<std::string>();
        else
            rc.inline_crystal = parse_crystal_config(c, path + ".crystal");
    }
    if (j.contains("wavelengths")) {
        const json& w = j["wavelengths"];
        detail::check_object(w, path + ".wavelengths", {}, {"pump_m", "signal_m"});
        if (w.contains("pump_m")) {
            rc.lambda_p_m = detail::number_at(w["pump_m"], path + ".wavelengths.pump_m");
            if (!(rc.lambda_p_m > 0.0))
                detail::config_fail(path + ".wavelengths.pump_m", "expected a positive wavelength");
        }
        if (w.contains("signal_m")) {
            rc.lambda_s_m = detail::number_at(w["signal_m"], path + ".wavelengths.signal_m");
            if (!(rc.lambda_s_m > 0.0))
                detail::config_fail(path + ".wavelengths.signal_m",
                                    "expected a positive wavelength");
        }
    }
    if (j.contains("pump")) {
        const json& p = j["pump"];
        detail::check_object(p, path + ".pump", {}, {"regime", "duration_fwhm_s", "xi", "waist_m"});
        if (p.contains("regime")) {
            const std::string kind = detail::string_at(p["regime"], path + ".pump.regime");
            PumpRegime reg;
            if (kind == "cw") {
                reg.pulsed = false;
            } else if (kind == "pulsed") {
                reg.pulsed = true;
                if (!p.contains("duration_fwhm_s"))
                    detail::config_fail(path + ".pump.duration_fwhm_s",
                                        "missing required key for a pulsed regime");
                reg.duration_fwhm_s =
                    detail::number_at(p["duration_fwhm_s"], path + ".pump.duration_fwhm_s");
                if (!(reg.duration_fwhm_s > 0.0))
                    detail::config_fail(path + ".pump.duration_fwhm_s",
                                        "expected a positive duration");
            } else {
                detail::config_fail(path + ".pump.regime", "expected 'cw' or 'pulsed'");
            }
            rc.regime = reg;
        } else if (p.contains("duration_fwhm_s")) {
            detail::config_fail(path + ".pump.duration_fwhm_s",
                                "requires \"regime\": \"pulsed\"");
        }
        if (p.contains("xi")) {
            rc.xi = detail::number_at(p["xi"], path + ".pump.xi");
            if (!(rc.xi > 0.0)) detail::config_fail(path + ".pump.xi", "expected a positive value");
        }
        if (p.contains("waist_m")) {
            const double w = detail::number_at(p["waist_m"], path + ".pump.waist_m");
            if (!(w > 0.0)) detail::config_fail(path + ".pump.waist_m", "expected a positive waist");
            rc.pump_waist_m = w;
        }
    }
    if (j.contains("grid")) {
        const json& g = j["grid"];
        detail::check_object(g, path + ".grid", {},
                             {"spectral_samples", "angular_samples", "pump_nodes", "window_sigmas",
                              "plateau_tolerance", "band_factor"});
        if (g.contains("spectral_samples"))
            rc.grid.spectral_samples = detail::index_at(g["spectral_samples"],
                                                        path + ".grid.spectral_samples", 8);
        if (g.contains("angular_samples"))
            rc.grid.angular_samples =
                detail::index_at(g["angular_samples"], path + ".grid.angular_samples", 8);
        if (g.contains("pump_nodes"))
            rc.grid.pump_nodes = detail::index_at(g["pump_nodes"], path + ".grid.pump_nodes", 1);
        if (g.contains("window_sigmas")) {
            rc.grid.window_sigmas = detail::number_at(g["window_sigmas"],
                                                      path + ".grid.window_sigmas");
            if (!(rc.grid.window_sigmas > 0.0))
                detail::config_fail(path + ".grid.window_sigmas", "expected a positive value");
        }
        if (g.contains("plateau_tolerance")) {
            rc.grid.plateau.tolerance =
                detail::number_at(g["plateau_tolerance"], path + ".grid.plateau_tolerance");
            if (!(rc.grid.plateau.tolerance > 0.0))
                detail::config_fail(path + ".grid.plateau_tolerance", "expected a positive value");
        }
        if (g.contains("band_factor")) {
            rc.grid.plateau.band_factor =
                detail::number_at(g["band_factor"], path + ".grid.band_factor");
            if (!(rc.grid.plateau.band_factor > 0.0))
                detail::config_fail(path + ".grid.band_factor", "expected a positive value");
        }
    }
    if (j.contains("scan")) {
        const json& s = j["scan"];
        detail::check_object(s, path + ".scan", {},
                             {"pump_waists_m", "collection_angles_rad", "reference_angle_rad"});
        if (s.contains("pump_waists_m"))
            rc.scan_pump_waists_m =
                detail::number_list_at(s["pump_waists_m"], path + ".scan.pump_waists_m", 1);
        if (s.contains("collection_angles_rad"))
            rc.scan_collection_angles_rad = detail::number_list_at(
                s["collection_angles_rad"], path + ".scan.collection_angles_rad", 1);
        if (s.contains("reference_angle_rad")) {
            rc.scan_reference_angle_rad =
                detail::number_at(s["reference_angle_rad"], path + ".scan.reference_angle_rad");
            if (!(rc.scan_reference_angle_rad > 0.0))
                detail::config_fail(path + ".scan.reference_angle_rad",
                                    "expected a positive angle");
        }
    }
    if (j.contains("lenses")) {
        const json& l = j["lenses"];
        detail::check_object(l, path + ".lenses", {"focal_pairs_m"},
                             {"fiber_mfd_signal_m", "fiber_mfd_idler_m"});
        LensCatalog cat;
        const json& fp = l["focal_pairs_m"];
        if (!fp.is_array() || fp.empty())
            detail::config_fail(path + ".lenses.focal_pairs_m", "expected a non-empty array");
        for (std::size_t i = 0; i < fp.size(); ++i) {
            const auto pair = detail::number_list_at(
                fp[i], path + ".lenses.focal_pairs_m[" + std::to_string(i) + "]", 2);
            if (pair.size() != 2)
                detail::config_fail(path + ".lenses.focal_pairs_m[" + std::to_string(i) + "]",
                                    "expected [collimating, focusing]");
            cat.focal_pairs_m.emplace_back(pair[0], pair[1]);
        }
        if (l.contains("fiber_mfd_signal_m"))
            cat.fiber_mfd_signal_m =
                detail::number_at(l["fiber_mfd_signal_m"], path + ".lenses.fiber_mfd_signal_m");
        if (l.contains("fiber_mfd_idler_m"))
            cat.fiber_mfd_idler_m =
                detail::number_at(l["fiber_mfd_idler_m"], path + ".lenses.fiber_mfd_idler_m");
        rc.lenses = cat;
    }
    if (j.contains("output")) {
        const json& o = j["output"];
        detail::check_object(o, path + ".output", {}, {"path", "format"});
        if (o.contains("path")) rc.out_path = detail::string_at(o["path"], path + ".output.path");
        if (o.contains("format")) {
            rc.format = detail::string_at(o["format"], path + ".output.format");
            if (rc.format != "csv" && rc.format != "json")
                detail::config_fail(path + ".output.format", "expected 'csv' or 'json'");
        }
    }
    return rc;
}

inline RunConfig load_run_config(const std::string& path) {
    return parse_run_config(read_json_file(path), "config");
}

}  // namespace spdc
