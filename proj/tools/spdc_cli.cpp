// Command-line front end for the photon-pair source design toolkit.
//
// Subcommands: crystals, solve, jsa, scan, design, efficiency, toy.
// Exit codes: 0 success, 1 invalid input/config, 2 numeric/convergence failure.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <spdc/spdc.hpp>

namespace {

using spdc::json;

std::string g6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string f3(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

// Options shared by the computing subcommands. Flags mirror the config keys
// and override whatever --config supplies.
struct Shared {
    std::string config_path;
    std::string crystal;
    double lambda_p = 0.0;
    double lambda_s = 0.0;
    std::string regime;
    double duration = 0.0;
    double xi = 0.0;
    double pump_waist = 0.0;
    long long n_spectral = 0;
    long long n_angular = 0;
    long long pump_nodes = 0;
    double sigmas = 0.0;
    double plateau_tol = 0.0;
    double band_factor = 0.0;
    std::string out;
    std::string format;
};

void add_input_options(CLI::App* cmd, Shared& s, bool with_pump, bool with_grid) {
    cmd->add_option("--config", s.config_path, "JSON run configuration file");
    cmd->add_option("--crystal", s.crystal, "catalog crystal name");
    cmd->add_option("--lambda-p", s.lambda_p, "pump wavelength [m]");
    cmd->add_option("--lambda-s", s.lambda_s, "signal wavelength [m]");
    if (with_pump) {
        cmd->add_option("--regime", s.regime, "pump time structure: cw | pulsed")
            ->check(CLI::IsMember({"cw", "pulsed"}));
        cmd->add_option("--duration", s.duration, "pump pulse FWHM duration [s]");
        cmd->add_option("--xi", s.xi, "pump focusing parameter (default 0.02)");
        cmd->add_option("--pump-waist", s.pump_waist, "explicit pump waist [m] (overrides --xi)");
    }
    if (with_grid) {
        cmd->add_option("--spectral-samples", s.n_spectral, "spectral grid size (default 256)");
        cmd->add_option("--angular-samples", s.n_angular, "angular grid size (default 256)");
        cmd->add_option("--pump-nodes", s.pump_nodes,
                        "pump spectrum quadrature nodes (default 13)");
        cmd->add_option("--window-sigmas", s.sigmas, "grid window half-width factor (default 3)");
        cmd->add_option("--plateau-tolerance", s.plateau_tol,
                        "plateau flatness tolerance (default 0.025)");
        cmd->add_option("--band-factor", s.band_factor,
                        "plateau centroid band in units of the conditional FWHM (default 1.5)");
    }
}

void add_output_options(CLI::App* cmd, Shared& s) {
    cmd->add_option("--out", s.out, "output file path (default: print to stdout)");
    cmd->add_option("--format", s.format, "output format: csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
}

spdc::RunConfig resolve_config(const Shared& s) {
    spdc::RunConfig rc;
    if (!s.config_path.empty()) rc = spdc::load_run_config(s.config_path);
    if (!s.crystal.empty()) {
        rc.crystal_name = s.crystal;
        rc.inline_crystal.reset();
    }
    if (s.lambda_p > 0.0) rc.lambda_p_m = s.lambda_p;
    if (s.lambda_s > 0.0) rc.lambda_s_m = s.lambda_s;
    if (s.regime == "cw") {
        rc.regime = spdc::PumpRegime{false, 0.0};
    } else if (s.regime == "pulsed") {
        double dur = s.duration;
        if (dur <= 0.0 && rc.regime && rc.regime->pulsed) dur = rc.regime->duration_fwhm_s;
        if (dur <= 0.0)
            throw spdc::domain_error("--regime pulsed requires --duration (pulse FWHM in s)");
        rc.regime = spdc::PumpRegime{true, dur};
    } else if (s.duration > 0.0) {
        rc.regime = spdc::PumpRegime{true, s.duration};
    }
    if (s.xi > 0.0) rc.xi = s.xi;
    if (s.pump_waist > 0.0) rc.pump_waist_m = s.pump_waist;
    if (s.n_spectral > 0) rc.grid.spectral_samples = static_cast<std::size_t>(s.n_spectral);
    if (s.n_angular > 0) rc.grid.angular_samples = static_cast<std::size_t>(s.n_angular);
    if (s.pump_nodes > 0) rc.grid.pump_nodes = static_cast<std::size_t>(s.pump_nodes);
    if (s.sigmas > 0.0) rc.grid.window_sigmas = s.sigmas;
    if (s.plateau_tol > 0.0) rc.grid.plateau.tolerance = s.plateau_tol;
    if (s.band_factor > 0.0) rc.grid.plateau.band_factor = s.band_factor;
    if (!s.out.empty()) rc.out_path = s.out;
    if (!s.format.empty()) rc.format = s.format;
    return rc;
}

spdc::CrystalFile load_crystal(const spdc::RunConfig& rc, const std::string& crystals_dir) {
    if (rc.inline_crystal) return *rc.inline_crystal;
    if (rc.crystal_name.empty())
        throw spdc::domain_error(
            "no crystal specified: pass --crystal NAME or a config with a 'crystal' entry");
    return spdc::load_crystal_file(spdc::find_crystal_path(crystals_dir, rc.crystal_name));
}

spdc::PumpRegime regime_of(const spdc::RunConfig& rc, const spdc::CrystalFile& cf) {
    return rc.regime ? *rc.regime : cf.regime;
}

spdc::PumpSpec pump_of(const spdc::RunConfig& rc, const spdc::CrystalFile& cf,
                       const spdc::InteractionSpec& ia) {
    const spdc::PumpRegime reg = regime_of(rc, cf);
    const double xi = rc.xi > 0.0 ? rc.xi : 0.02;
    spdc::PumpSpec p;
    p.lambda_m = ia.lambda_p_m;
    p.waist_m = rc.pump_waist_m
                    ? *rc.pump_waist_m
                    : spdc::waist_for_focusing(ia.lambda_p_m, ia.crystal.length_m, xi);
    p.pulsed = reg.pulsed;
    p.duration_fwhm_s = reg.duration_fwhm_s;
    return p;
}

spdc::Metadata base_metadata(const spdc::InteractionSpec& ia, const spdc::PumpSpec& pump) {
    spdc::Metadata m;
    m.emplace_back("crystal", ia.crystal.name);
    m.emplace_back("pm_type", spdc::pm_type_name(ia.crystal.pm_type));
    m.emplace_back("lambda_p_m", spdc::format_g17(ia.lambda_p_m));
    m.emplace_back("lambda_s_m", spdc::format_g17(ia.lambda_s_m));
    m.emplace_back("lambda_i_m", spdc::format_g17(ia.lambda_i_m));
    if (ia.poling_period_m > 0.0)
        m.emplace_back("poling_period_m", spdc::format_g17(ia.poling_period_m));
    if (ia.pump.tuned()) m.emplace_back("pm_angle_rad", spdc::format_g17(ia.pump.theta));
    m.emplace_back("pump_regime", pump.pulsed ? "pulsed" : "cw");
    if (pump.pulsed)
        m.emplace_back("pump_duration_fwhm_s", spdc::format_g17(pump.duration_fwhm_s));
    m.emplace_back("pump_waist_m", spdc::format_g17(pump.waist_m));
    return m;
}

// Payload goes to --out when given, else to stdout ahead of the summary line.
void emit(const spdc::RunConfig& rc, const std::string& default_format,
          const std::function<std::string()>& make_csv, const std::function<json()>& make_json) {
    const std::string fmt = !rc.format.empty() ? rc.format : default_format;
    const std::string payload = fmt == "json" ? make_json().dump(2) + "\n" : make_csv();
    if (!rc.out_path.empty())
        spdc::write_text_file(rc.out_path, payload);
    else
        std::cout << payload;
}

std::string written_note(const spdc::RunConfig& rc) {
    return rc.out_path.empty() ? std::string() : " -> " + rc.out_path;
}

std::vector<std::pair<double, double>> lens_pairs_from_string(const std::string& text) {
    std::vector<std::pair<double, double>> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        const std::string item = text.substr(pos, comma - pos);
        const std::size_t colon = item.find(':');
        if (colon == std::string::npos)
            throw spdc::domain_error("--lens-pairs expects 'f_collimating:f_focusing[,...]', got '" +
                                     item + "'");
        try {
            out.emplace_back(std::stod(item.substr(0, colon)), std::stod(item.substr(colon + 1)));
        } catch (const std::exception&) {
            throw spdc::domain_error("--lens-pairs: cannot parse '" + item + "' as two numbers");
        }
        pos = comma + 1;
    }
    if (out.empty()) throw spdc::domain_error("--lens-pairs: empty list");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Photon-pair source design toolkit: phasematching, joint amplitudes, "
                 "Schmidt purity, heralding efficiency, and collection-mode design"};
    app.require_subcommand(1);

    std::string data_root =
#ifdef SPDC_DATA_DIR
        SPDC_DATA_DIR;
#else
        "data";
#endif
    app.add_option("--data-dir", data_root, "data directory containing crystals/")
        ->envname("SPDC_DATA_DIR");
    const auto crystals_dir = [&data_root] { return data_root + "/crystals"; };

    // ---- crystals ---------------------------------------------------------
    auto* crystals = app.add_subcommand("crystals", "crystal catalog");
    crystals->require_subcommand(1);
    Shared cr_shared;
    auto* cr_list = crystals->add_subcommand("list", "list catalog entries with source notes");
    add_output_options(cr_list, cr_shared);
    cr_list->callback([&] {
        const auto entries = spdc::load_catalog(crystals_dir());
        if (cr_shared.format == "json") {
            json j = json::array();
            for (const auto& e : entries) j.push_back(spdc::crystal_to_json(e.file));
            const std::string payload = j.dump(2) + "\n";
            if (!cr_shared.out.empty())
                spdc::write_text_file(cr_shared.out, payload);
            else
                std::cout << payload;
            return;
        }
        std::string payload;
        for (const auto& e : entries) {
            const spdc::CrystalSpec& c = e.file.crystal;
            payload += c.name + "  " + spdc::pm_type_name(c.pm_type) +
                       "  L=" + g6(c.length_m) + " m  aperture=" + g6(c.cross_section_m[0]) +
                       "x" + g6(c.cross_section_m[1]) + " m\n";
            for (const auto& s : c.sellmeier)
                payload += "    axis " + s.axis + ": " + s.source + "\n";
        }
        if (!cr_shared.out.empty())
            spdc::write_text_file(cr_shared.out, payload);
        else
            std::cout << payload;
    });
    std::string show_name;
    auto* cr_show = crystals->add_subcommand("show", "dump one catalog entry as schema JSON");
    cr_show->add_option("name", show_name, "crystal name")->required();
    cr_show->callback([&] {
        const spdc::CrystalFile cf =
            spdc::load_crystal_file(spdc::find_crystal_path(crystals_dir(), show_name));
        std::cout << spdc::crystal_to_json(cf).dump(2) << "\n";
    });

    // ---- solve ------------------------------------------------------------
    Shared so;
    auto* solve = app.add_subcommand(
        "solve", "solve the phasematching unknown (poling period or tuning angle)");
    add_input_options(solve, so, false, false);
    add_output_options(solve, so);
    solve->callback([&] {
        const spdc::RunConfig rc = resolve_config(so);
        const spdc::CrystalFile cf = load_crystal(rc, crystals_dir());
        const spdc::InteractionSpec ia =
            spdc::build_interaction(cf, rc.lambda_p_m, rc.lambda_s_m);
        const double residual = std::fabs(spdc::delta_k_longitudinal(ia, 0, 0, 0, 0));
        json j;
        j["schema_version"] = 1;
        j["kind"] = "phasematching";
        j["crystal"] = ia.crystal.name;
        j["pm_type"] = spdc::pm_type_name(ia.crystal.pm_type);
        j["lambda_p_m"] = ia.lambda_p_m;
        j["lambda_s_m"] = ia.lambda_s_m;
        j["lambda_i_m"] = ia.lambda_i_m;
        j["residual_rad_per_m"] = residual;
        std::string what;
        if (ia.poling_period_m > 0.0) {
            j["poling_period_m"] = ia.poling_period_m;
            what = "poling_period_m=" + spdc::format_g17(ia.poling_period_m);
        }
        if (ia.pump.tuned() || ia.signal.tuned() || ia.idler.tuned()) {
            const double th = ia.pump.tuned() ? ia.pump.theta
                              : ia.signal.tuned() ? ia.signal.theta
                                                  : ia.idler.theta;
            j["pm_angle_rad"] = th;
            if (!what.empty()) what += " ";
            what += "pm_angle_rad=" + spdc::format_g17(th) + " (" +
                    g6(th * 180.0 / spdc::pi) + " deg)";
        }
        emit(rc, "json",
             [&] {
                 std::string out = "# kind: phasematching\n# crystal: " + ia.crystal.name +
                                   "\nkey,value\n";
                 out += "lambda_p_m," + spdc::format_g17(ia.lambda_p_m) + "\n";
                 out += "lambda_s_m," + spdc::format_g17(ia.lambda_s_m) + "\n";
                 out += "lambda_i_m," + spdc::format_g17(ia.lambda_i_m) + "\n";
                 if (ia.poling_period_m > 0.0)
                     out += "poling_period_m," + spdc::format_g17(ia.poling_period_m) + "\n";
                 if (j.contains("pm_angle_rad"))
                     out += "pm_angle_rad," + spdc::format_g17(j["pm_angle_rad"].get<double>()) +
                            "\n";
                 out += "residual_rad_per_m," + spdc::format_g17(residual) + "\n";
                 return out;
             },
             [&] { return j; });
        std::cout << "solve " << ia.crystal.name << ": " << what
                  << " residual_rad_per_m=" << g6(residual) << written_note(rc) << "\n";
    });

    // ---- jsa --------------------------------------------------------------
    Shared ja;
    std::string jsa_kind = "spectral";
    auto* jsa = app.add_subcommand("jsa", "compute a joint amplitude or intensity grid");
    jsa->add_option("--kind", jsa_kind, "spectral | angular | spectral-spatial")
        ->check(CLI::IsMember({"spectral", "angular", "spectral-spatial"}));
    add_input_options(jsa, ja, true, true);
    add_output_options(jsa, ja);
    jsa->callback([&] {
        const spdc::RunConfig rc = resolve_config(ja);
        const spdc::CrystalFile cf = load_crystal(rc, crystals_dir());
        const spdc::InteractionSpec ia =
            spdc::build_interaction(cf, rc.lambda_p_m, rc.lambda_s_m);
        const spdc::PumpSpec pump = pump_of(rc, cf, ia);
        spdc::Metadata meta = base_metadata(ia, pump);
        double purity = 0.0;
        std::size_t n = rc.grid.spectral_samples;
        if (jsa_kind == "spectral") {
            const spdc::JointAmplitude amp =
                spdc::joint_spectral(ia, pump, n, rc.grid.window_sigmas);
            purity = spdc::schmidt_decompose(amp).purity;
            meta.emplace_back("grid", std::to_string(n) + "x" + std::to_string(n));
            emit(rc, "csv", [&] { return spdc::csv_grid(amp, meta); },
                 [&] { return spdc::json_grid(amp, "joint-spectral-amplitude", meta); });
        } else if (jsa_kind == "angular") {
            n = rc.grid.angular_samples;
            const spdc::JointAmplitude amp =
                spdc::joint_angular(ia, pump, n, rc.grid.window_sigmas);
            purity = spdc::schmidt_decompose(amp).purity;
            meta.emplace_back("grid", std::to_string(n) + "x" + std::to_string(n));
            emit(rc, "csv", [&] { return spdc::csv_grid(amp, meta); },
                 [&] { return spdc::json_grid(amp, "joint-angular-amplitude", meta); });
        } else {
            const spdc::IntensityGrid map = spdc::spectral_spatial(
                ia, pump, spdc::Photon::signal, rc.grid.spectral_samples,
                rc.grid.angular_samples, rc.grid.pump_nodes, rc.grid.window_sigmas);
            purity = spdc::schmidt_decompose(map).purity;
            meta.emplace_back("grid", std::to_string(rc.grid.spectral_samples) + "x" +
                                          std::to_string(rc.grid.angular_samples));
            emit(rc, "csv", [&] { return spdc::csv_grid(map, meta); },
                 [&] { return spdc::json_grid(map, "spectral-spatial-intensity", meta); });
        }
        std::cout << "jsa " << jsa_kind << " " << ia.crystal.name << ": purity=" << g6(purity)
                  << written_note(rc) << "\n";
    });

    // ---- scan -------------------------------------------------------------
    auto* scan = app.add_subcommand("scan", "sweep a parameter and report the purity trend");
    scan->require_subcommand(1);

    Shared spw;
    std::vector<double> waists;
    auto* scan_waist =
        scan->add_subcommand("purity-vs-pump-waist", "spectral purity against the pump waist");
    scan_waist->add_option("--waists", waists, "pump waists [m], comma separated")
        ->delimiter(',');
    add_input_options(scan_waist, spw, true, true);
    add_output_options(scan_waist, spw);
    scan_waist->callback([&] {
        const spdc::RunConfig rc = resolve_config(spw);
        const spdc::CrystalFile cf = load_crystal(rc, crystals_dir());
        const spdc::InteractionSpec ia =
            spdc::build_interaction(cf, rc.lambda_p_m, rc.lambda_s_m);
        const spdc::PumpSpec pump = pump_of(rc, cf, ia);
        const std::vector<double>& list = !waists.empty() ? waists : rc.scan_pump_waists_m;
        if (list.empty())
            throw spdc::domain_error("scan purity-vs-pump-waist: empty scan list "
                                     "(pass --waists or a config scan block)");
        const auto points =
            spdc::purity_vs_pump_waist(ia, pump, list, rc.grid.angular_samples);
        spdc::Metadata meta = base_metadata(ia, pump);
        meta.emplace_back("grid", std::to_string(rc.grid.angular_samples) + "x" +
                                      std::to_string(rc.grid.angular_samples));
        emit(rc, "csv", [&] { return spdc::csv_pairs("pump_waist_m", "purity", points, meta); },
             [&] {
                 return spdc::json_pairs("purity-vs-pump-waist", "pump_waist_m", "purity",
                                         points, meta);
             });
        std::cout << "scan purity-vs-pump-waist " << ia.crystal.name << ": " << points.size()
                  << " points, purity " << g6(points.front().second) << " .. "
                  << g6(points.back().second) << written_note(rc) << "\n";
    });

    Shared svc;
    std::vector<double> angles;
    double reference_angle = 0.0;
    auto* scan_coll = scan->add_subcommand(
        "purity-vs-collection",
        "coupled symmetric efficiency against the signal collection angle");
    scan_coll->add_option("--angles", angles, "signal collection angles [rad], comma separated")
        ->delimiter(',');
    scan_coll->add_option("--reference", reference_angle,
                          "designed signal collection angle [rad]; the idler mode is held at "
                          "twice this value");
    add_input_options(scan_coll, svc, true, true);
    add_output_options(scan_coll, svc);
    scan_coll->callback([&] {
        const spdc::RunConfig rc = resolve_config(svc);
        const spdc::CrystalFile cf = load_crystal(rc, crystals_dir());
        const spdc::InteractionSpec ia =
            spdc::build_interaction(cf, rc.lambda_p_m, rc.lambda_s_m);
        const spdc::PumpSpec pump = pump_of(rc, cf, ia);
        const std::vector<double>& list =
            !angles.empty() ? angles : rc.scan_collection_angles_rad;
        if (list.empty())
            throw spdc::domain_error("scan purity-vs-collection: empty scan list "
                                     "(pass --angles or a config scan block)");
        const double ref =
            reference_angle > 0.0 ? reference_angle : rc.scan_reference_angle_rad;
        if (!(ref > 0.0))
            throw spdc::domain_error(
                "scan purity-vs-collection: --reference (or scan.reference_angle_rad) is "
                "required and must be positive");
        const auto points =
            spdc::purity_vs_collection(ia, pump, list, ref, rc.grid.angular_samples);
        spdc::Metadata meta = base_metadata(ia, pump);
        meta.emplace_back("grid", std::to_string(rc.grid.angular_samples) + "x" +
                                      std::to_string(rc.grid.angular_samples));
        meta.emplace_back("reference_angle_rad", spdc::format_g17(ref));
        meta.emplace_back("quantity", "symmetric coupled-mode efficiency mu_si");
        emit(rc, "csv",
             [&] { return spdc::csv_pairs("collection_angle_rad", "mu_si", points, meta); },
             [&] {
                 return spdc::json_pairs("purity-vs-collection", "collection_angle_rad",
                                         "mu_si", points, meta);
             });
        std::string knee_note = "knee not crossed";
        try {
            const double knee = spdc::scan_knee(points, 0.95);
            knee_note = "knee_rad=" + g6(knee) + " (" + g6(knee * 180.0 / spdc::pi) + " deg)";
        } catch (const spdc::numeric_error&) {
        }
        std::cout << "scan purity-vs-collection " << ia.crystal.name << ": " << points.size()
                  << " points, " << knee_note << written_note(rc) << "\n";
    });

    // ---- design -----------------------------------------------------------
    Shared de;
    std::string lens_pairs_text;
    double mfd_signal = 0.0, mfd_idler = 0.0;
    auto* design = app.add_subcommand(
        "design", "choose pump focusing and both collection modes, then report couplings");
    add_input_options(design, de, true, true);
    add_output_options(design, de);
    design->add_option("--lens-pairs", lens_pairs_text,
                       "candidate 'collimating:focusing' focal pairs [m], comma separated");
    design->add_option("--mfd-signal", mfd_signal, "signal-arm fiber mode-field diameter [m]");
    design->add_option("--mfd-idler", mfd_idler, "idler-arm fiber mode-field diameter [m]");
    design->callback([&] {
        const spdc::RunConfig rc = resolve_config(de);
        const spdc::CrystalFile cf = load_crystal(rc, crystals_dir());
        const spdc::InteractionSpec ia =
            spdc::build_interaction(cf, rc.lambda_p_m, rc.lambda_s_m);
        const spdc::PumpRegime reg = regime_of(rc, cf);
        double xi = rc.xi > 0.0 ? rc.xi : 0.02;
        if (rc.pump_waist_m)
            xi = spdc::focusing_parameter(ia.lambda_p_m, ia.crystal.length_m, *rc.pump_waist_m);
        std::optional<spdc::LensCatalog> lenses = rc.lenses;
        if (!lens_pairs_text.empty()) {
            spdc::LensCatalog cat = lenses ? *lenses : spdc::LensCatalog{};
            cat.focal_pairs_m = lens_pairs_from_string(lens_pairs_text);
            lenses = cat;
        }
        if (lenses) {
            if (mfd_signal > 0.0) lenses->fiber_mfd_signal_m = mfd_signal;
            if (mfd_idler > 0.0) lenses->fiber_mfd_idler_m = mfd_idler;
        }
        const spdc::DesignReport rep = spdc::design(ia, reg, xi, rc.grid, lenses);
        emit(rc, "json", [&] { return spdc::csv_report(rep); },
             [&] { return spdc::json_report(rep); });
        for (const std::string& w : rep.warnings) std::cerr << "warning: " << w << "\n";
        std::cout << "design " << rep.crystal << " (" << rep.regime
                  << "): pump_waist_m=" << g6(rep.pump.waist_m)
                  << " signal_angle_rad=" << g6(rep.signal.angular_spread_rad)
                  << " signal_waist_m=" << g6(rep.signal.waist_m)
                  << " idler_waist_m=" << g6(rep.idler.waist_m)
                  << " mu_si=" << g6(rep.mu_si) << written_note(rc) << "\n";
    });

    // ---- efficiency -------------------------------------------------------
    spdc::CountRecord rec;
    Shared ef;
    auto* eff = app.add_subcommand("efficiency",
                                   "heralding efficiencies from measured count rates");
    eff->add_option("--coincidences", rec.coincidences, "coincidence rate [1/s]")->required();
    eff->add_option("--singles-signal", rec.singles_signal, "signal singles rate [1/s]")
        ->required();
    eff->add_option("--singles-idler", rec.singles_idler, "idler singles rate [1/s]")->required();
    eff->add_option("--eta-signal", rec.detector_efficiency_signal,
                    "signal detector efficiency (default 1)");
    eff->add_option("--eta-idler", rec.detector_efficiency_idler,
                    "idler detector efficiency (default 1)");
    eff->add_option("--t-signal", rec.path_transmission_signal,
                    "signal path transmission (default 1)");
    eff->add_option("--t-idler", rec.path_transmission_idler,
                    "idler path transmission (default 1)");
    eff->add_option("--noise-signal", rec.noise_signal, "signal noise rate [1/s] (default 0)");
    eff->add_option("--noise-idler", rec.noise_idler, "idler noise rate [1/s] (default 0)");
    add_output_options(eff, ef);
    eff->callback([&] {
        spdc::RunConfig rc;
        rc.out_path = ef.out;
        rc.format = ef.format;
        const spdc::EfficiencyReport rep = spdc::counts_to_efficiency(rec);
        emit(rc, "csv", [&] { return spdc::csv_efficiency(rep); },
             [&] { return spdc::json_efficiency(rep); });
        if (rep.warning) std::cerr << "warning: " << rep.warning_message << "\n";
        std::cout << "efficiency: mu_s=" << f3(rep.mu_s) << " mu_i=" << f3(rep.mu_i)
                  << " mu_si=" << f3(rep.mu_si) << written_note(rc) << "\n";
    });

    // ---- toy --------------------------------------------------------------
    double toy_kp = 0.0, toy_sigma = 0.0, toy_span = 8.0;
    long long toy_n = 4096;
    Shared to;
    auto* toy = app.add_subcommand(
        "toy", "1-D toy pair: herald one photon, inspect the partner wavepacket");
    toy->add_option("--kp", toy_kp, "heralded wavenumber k_p [1/x units]")->required();
    toy->add_option("--sigma", toy_sigma, "pair position spread sigma")->required();
    toy->add_option("--n", toy_n, "grid samples (default 4096)");
    toy->add_option("--span", toy_span, "grid half-width in units of sigma (default 8)");
    add_output_options(toy, to);
    toy->callback([&] {
        if (toy_n < 8) throw spdc::domain_error("toy: --n must be at least 8");
        const std::vector<double> grid =
            spdc::make_position_grid(toy_sigma, static_cast<std::size_t>(toy_n), toy_span);
        const spdc::Wavefunction1D wf = spdc::herald_signal(toy_kp, toy_sigma, grid);
        spdc::Wavefunction1D closed = spdc::heralded_closed_form(toy_kp, toy_sigma, grid);
        closed.normalize();
        const double fid = spdc::fidelity(wf, closed);
        const double width = spdc::fitted_width(wf);
        const double slope = spdc::phase_slope(wf, 2.0 * toy_sigma);
        spdc::Metadata meta = {{"kind", "heralded-wavepacket"},
                               {"k_p", spdc::format_g17(toy_kp)},
                               {"sigma", spdc::format_g17(toy_sigma)},
                               {"fidelity_vs_closed_form", spdc::format_g17(fid)},
                               {"fitted_width", spdc::format_g17(width)},
                               {"phase_slope", spdc::format_g17(slope)}};
        spdc::RunConfig rc;
        rc.out_path = to.out;
        rc.format = to.format;
        emit(rc, "csv", [&] { return spdc::csv_wavefunction(wf, meta); },
             [&] { return spdc::json_wavefunction(wf, meta); });
        std::cout << "toy: fidelity=" << spdc::format_g17(fid) << " width=" << g6(width)
                  << " (sigma=" << g6(toy_sigma) << ") phase_slope=" << g6(slope)
                  << " (k_p=" << g6(toy_kp) << ")" << written_note(rc) << "\n";
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const spdc::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const spdc::numeric_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
