#include <catch2/catch_amalgamated.hpp>

#include <spdc/config.hpp>

#include <cmath>
#include <string>
#include <vector>

using namespace spdc;
using Catch::Approx;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::MessageMatches;

namespace {
const std::string kCrystalDir = std::string(SPDC_DATA_DIR) + "/crystals";
}

TEST_CASE("the catalog lists every shipped crystal, sorted by name", "[config]") {
    const auto cat = load_catalog(kCrystalDir);
    REQUIRE(cat.size() == 3);
    REQUIRE(cat[0].file.crystal.name == "KNbO3");
    REQUIRE(cat[1].file.crystal.name == "PPKTP");
    REQUIRE(cat[2].file.crystal.name == "PPLN");
    for (const auto& e : cat) REQUIRE_FALSE(e.file.crystal.sellmeier.empty());
    REQUIRE_THROWS_AS(load_catalog(kCrystalDir + "/nope"), domain_error);
}

TEST_CASE("crystal lookup is case-insensitive and reports alternatives", "[config]") {
    REQUIRE(find_crystal_path(kCrystalDir, "ppln") == find_crystal_path(kCrystalDir, "PPLN"));
    REQUIRE(find_crystal_path(kCrystalDir, "KNBO3") == find_crystal_path(kCrystalDir, "knbo3"));
    REQUIRE_THROWS_MATCHES(find_crystal_path(kCrystalDir, "bbo"), domain_error,
                           MessageMatches(ContainsSubstring("available")));
}

TEST_CASE("crystal files round-trip through their JSON form", "[config]") {
    const CrystalFile cf = load_crystal_file(find_crystal_path(kCrystalDir, "knbo3"));
    const CrystalFile back = parse_crystal_config(crystal_to_json(cf));
    REQUIRE(back.crystal.name == cf.crystal.name);
    REQUIRE(back.crystal.length_m == cf.crystal.length_m);
    REQUIRE(back.lambda_p_m == cf.lambda_p_m);
    REQUIRE(back.lambda_s_m == cf.lambda_s_m);
    REQUIRE(back.has_bracket == cf.has_bracket);
    REQUIRE(back.regime.pulsed == cf.regime.pulsed);
    REQUIRE(back.regime.duration_fwhm_s == cf.regime.duration_fwhm_s);
    REQUIRE(back.pump.axis_a == cf.pump.axis_a);
    REQUIRE(back.pump.axis_b == cf.pump.axis_b);
    REQUIRE(back.crystal.sellmeier.size() == cf.crystal.sellmeier.size());
    REQUIRE(back.crystal.sellmeier[0].coefficients == cf.crystal.sellmeier[0].coefficients);
}

TEST_CASE("crystal validation rejects nonphysical dispersion data", "[config]") {
    const CrystalFile cf = load_crystal_file(find_crystal_path(kCrystalDir, "ppln"));
    json j = crystal_to_json(cf);
    j["sellmeier"][0]["coefficients"] = {-1.0, 0.0, 0.01};
    REQUIRE_THROWS_AS(parse_crystal_config(j), std::runtime_error);
}

TEST_CASE("unknown keys are rejected with their path", "[config]") {
    const CrystalFile cf = load_crystal_file(find_crystal_path(kCrystalDir, "ppln"));
    json j = crystal_to_json(cf);
    j["surprise"] = 1;
    REQUIRE_THROWS_MATCHES(parse_crystal_config(j), domain_error,
                           MessageMatches(ContainsSubstring("crystal.surprise")));

    json run;
    run["schema_version"] = 1;
    run["grid"]["bogus"] = 3;
    REQUIRE_THROWS_MATCHES(parse_run_config(run), domain_error,
                           MessageMatches(ContainsSubstring("config.grid.bogus")));
}

TEST_CASE("run configs parse every block", "[config]") {
    json j;
    j["schema_version"] = 1;
    j["crystal"] = "knbo3";
    j["wavelengths"]["pump_m"] = 532e-9;
    j["wavelengths"]["signal_m"] = 810e-9;
    j["pump"]["regime"] = "pulsed";
    j["pump"]["duration_fwhm_s"] = 8e-12;
    j["pump"]["xi"] = 0.02;
    j["grid"]["spectral_samples"] = 64;
    j["grid"]["angular_samples"] = 96;
    j["grid"]["pump_nodes"] = 9;
    j["grid"]["plateau_tolerance"] = 0.03;
    j["scan"]["pump_waists_m"] = {50e-6, 100e-6};
    j["scan"]["collection_angles_rad"] = {1e-3, 2e-3};
    j["scan"]["reference_angle_rad"] = 3.6e-3;
    j["lenses"]["focal_pairs_m"] = {{0.15, 0.0075}, {0.15, 0.0031}};
    j["lenses"]["fiber_mfd_signal_m"] = 5.6e-6;
    j["output"]["path"] = "out.json";
    j["output"]["format"] = "json";

    const RunConfig rc = parse_run_config(j);
    REQUIRE(rc.crystal_name == "knbo3");
    REQUIRE_FALSE(rc.inline_crystal.has_value());
    REQUIRE(rc.lambda_p_m == Approx(532e-9));
    REQUIRE(rc.lambda_s_m == Approx(810e-9));
    REQUIRE(rc.regime.has_value());
    REQUIRE(rc.regime->pulsed);
    REQUIRE(rc.regime->duration_fwhm_s == Approx(8e-12));
    REQUIRE(rc.xi == Approx(0.02));
    REQUIRE(rc.grid.spectral_samples == 64);
    REQUIRE(rc.grid.angular_samples == 96);
    REQUIRE(rc.grid.pump_nodes == 9);
    REQUIRE(rc.grid.plateau.tolerance == Approx(0.03));
    REQUIRE(rc.scan_pump_waists_m == std::vector<double>{50e-6, 100e-6});
    REQUIRE(rc.scan_collection_angles_rad.size() == 2);
    REQUIRE(rc.scan_reference_angle_rad == Approx(3.6e-3));
    REQUIRE(rc.lenses.has_value());
    REQUIRE(rc.lenses->focal_pairs_m.size() == 2);
    REQUIRE(rc.lenses->fiber_mfd_signal_m == Approx(5.6e-6));
    REQUIRE(rc.out_path == "out.json");
    REQUIRE(rc.format == "json");
}

TEST_CASE("run configs accept an inline crystal", "[config]") {
    const CrystalFile cf = load_crystal_file(find_crystal_path(kCrystalDir, "ppln"));
    json j;
    j["schema_version"] = 1;
    j["crystal"] = crystal_to_json(cf);
    const RunConfig rc = parse_run_config(j);
    REQUIRE(rc.crystal_name.empty());
    REQUIRE(rc.inline_crystal.has_value());
    REQUIRE(rc.inline_crystal->crystal.name == "PPLN");
}

TEST_CASE("run config validation failures carry the offending path", "[config]") {
    json j;
    j["schema_version"] = 2;
    REQUIRE_THROWS_MATCHES(parse_run_config(j), domain_error,
                           MessageMatches(ContainsSubstring("schema_version")));

    json missing;
    REQUIRE_THROWS_AS(parse_run_config(missing), domain_error);

    json dur;
    dur["schema_version"] = 1;
    dur["pump"]["duration_fwhm_s"] = 8e-12;  // duration without a pulsed regime
    REQUIRE_THROWS_MATCHES(parse_run_config(dur), domain_error,
                           MessageMatches(ContainsSubstring("pump.duration_fwhm_s")));

    json fmt;
    fmt["schema_version"] = 1;
    fmt["output"]["format"] = "xml";
    REQUIRE_THROWS_MATCHES(parse_run_config(fmt), domain_error,
                           MessageMatches(ContainsSubstring("output.format")));

    json neg;
    neg["schema_version"] = 1;
    neg["pump"]["xi"] = -0.5;
    REQUIRE_THROWS_MATCHES(parse_run_config(neg), domain_error,
                           MessageMatches(ContainsSubstring("pump.xi")));

    json typ;
    typ["schema_version"] = "one";
    REQUIRE_THROWS_MATCHES(parse_run_config(typ), domain_error,
                           MessageMatches(ContainsSubstring("expected a number")));
}

TEST_CASE("interactions build from crystal files", "[config]") {
    const CrystalFile kn = load_crystal_file(find_crystal_path(kCrystalDir, "knbo3"));
    const InteractionSpec ia = build_interaction(kn);
    REQUIRE(ia.lambda_p_m == Approx(532e-9));
    REQUIRE(ia.lambda_i_m == Approx(1.5500719424460438e-6).epsilon(1e-12));
    REQUIRE(ia.pump.theta == Approx(0.6452933652422697).margin(1e-9));
    REQUIRE(ia.poling_period_m == 0.0);

    // angle-tuned interactions cannot solve without a bracket
    CrystalFile nobracket = kn;
    nobracket.has_bracket = false;
    REQUIRE_THROWS_AS(build_interaction(nobracket), domain_error);

    // wavelength overrides re-solve the grating period
    const CrystalFile ln = load_crystal_file(find_crystal_path(kCrystalDir, "ppln"));
    const InteractionSpec base = build_interaction(ln);
    const InteractionSpec moved = build_interaction(ln, 0.0, 800e-9);
    REQUIRE(moved.lambda_s_m == Approx(800e-9));
    REQUIRE(moved.lambda_i_m == Approx(energy_match(ln.lambda_p_m, 800e-9)).epsilon(1e-12));
    REQUIRE(moved.poling_period_m != base.poling_period_m);
}

TEST_CASE("json file loading failures", "[config]") {
    REQUIRE_THROWS_AS(read_json_file("/nonexistent/path.json"), domain_error);
}
