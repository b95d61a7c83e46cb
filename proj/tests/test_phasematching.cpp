#include <catch2/catch_amalgamated.hpp>

#include <spdc/config.hpp>
#include <spdc/phasematching.hpp>

#include <cmath>
#include <string>

using namespace spdc;
using Catch::Approx;

namespace {
const std::string kCrystalDir = std::string(SPDC_DATA_DIR) + "/crystals";

InteractionSpec load_interaction(const std::string& name) {
    return build_interaction(load_crystal_file(find_crystal_path(kCrystalDir, name)));
}

// Dispersionless two-axis crystal: pump sees n = 2.1 along "p", daughters see
// n = 2.0 along "d". Collinear mismatch at 1 um -> 2+2 um is 2*pi*1e5 1/m, so
// the first-order grating period must come out at exactly 10 um.
InteractionSpec constant_index_interaction() {
    CrystalSpec c;
    c.name = "synthetic";
    c.pm_type = PmType::type0_qpm;
    c.length_m = 10e-3;
    c.transparency_min_m = 0.1e-6;
    c.transparency_max_m = 20e-6;
    SellmeierSet p;
    p.axis = "p";
    p.form = SellmeierForm::resonance_series;
    p.coefficients = {2.1 * 2.1, 0.0, 0.01};
    SellmeierSet d = p;
    d.axis = "d";
    d.coefficients = {4.0, 0.0, 0.01};
    c.sellmeier = {p, d};

    InteractionSpec ia;
    ia.crystal = c;
    ia.lambda_p_m = 1e-6;
    ia.lambda_s_m = 2e-6;
    ia.lambda_i_m = 2e-6;
    ia.pump.axis_a = "p";
    ia.signal.axis_a = "d";
    ia.idler.axis_a = "d";
    return ia;
}
}  // namespace

TEST_CASE("energy conservation fixes the partner wavelength", "[phasematching]") {
    REQUIRE(energy_match(532e-9, 810e-9) == Approx(1.5500719424460438e-6).epsilon(1e-14));
    // involution: applying the rule twice returns the input
    const double ls = 803.7e-9;
    const double li = energy_match(532e-9, ls);
    REQUIRE(energy_match(532e-9, li) == Approx(ls).epsilon(1e-12));
    REQUIRE_THROWS_AS(energy_match(532e-9, 400e-9), domain_error);
    REQUIRE_THROWS_AS(energy_match(-1.0, 810e-9), domain_error);
}

TEST_CASE("poling period of a dispersionless crystal is exact", "[phasematching]") {
    InteractionSpec ia = constant_index_interaction();
    const PolingSolution sol = solve_poling_period(ia);
    REQUIRE(sol.period_m == Approx(10e-6).epsilon(1e-12));
    REQUIRE(sol.residual < 1e-6);

    ia.poling_period_m = sol.period_m;
    REQUIRE(std::fabs(delta_k_longitudinal(ia, 0.0, 0.0, 0.0, 0.0)) < 1e-6);
}

TEST_CASE("negative collinear mismatch refuses a first-order grating", "[phasematching]") {
    InteractionSpec ia = constant_index_interaction();
    // swap the axes so k_p < k_s + k_i
    ia.pump.axis_a = "d";
    ia.signal.axis_a = "p";
    ia.idler.axis_a = "p";
    REQUIRE_THROWS_AS(solve_poling_period(ia), domain_error);
}

TEST_CASE("catalog grating periods reproduce the frozen solutions", "[phasematching]") {
    const InteractionSpec ppln = load_interaction("ppln");
    REQUIRE(ppln.poling_period_m == Approx(7.406574595723205e-6).epsilon(1e-12));
    REQUIRE(std::fabs(delta_k_longitudinal(ppln, 0.0, 0.0, 0.0, 0.0)) < 1e-6);
    REQUIRE(ppln.lambda_i_m == Approx(1.5500719424460438e-6).epsilon(1e-14));

    const InteractionSpec ppktp = load_interaction("ppktp");
    REQUIRE(ppktp.poling_period_m == Approx(1.0948185076525055e-5).epsilon(1e-12));
    REQUIRE(std::fabs(delta_k_longitudinal(ppktp, 0.0, 0.0, 0.0, 0.0)) < 1e-6);
}

TEST_CASE("angle tuning solves the birefringent phasematching", "[phasematching]") {
    const InteractionSpec ia = load_interaction("knbo3");
    REQUIRE(ia.pump.tuned());
    REQUIRE(ia.pump.theta == Approx(0.6452933652422697).margin(1e-9));
    REQUIRE(ia.poling_period_m == 0.0);
    REQUIRE(std::fabs(delta_k_longitudinal(ia, 0.0, 0.0, 0.0, 0.0)) < 1e-6);

    // group indices at the solved working point
    REQUIRE(ia.group_index(Photon::pump) == Approx(2.537463).margin(2e-6));
    REQUIRE(ia.group_index(Photon::signal) == Approx(2.388879).margin(2e-6));
    REQUIRE(ia.group_index(Photon::idler) == Approx(2.276010).margin(2e-6));
}

TEST_CASE("angle solver diagnostics", "[phasematching]") {
    CrystalFile cf = load_crystal_file(find_crystal_path(kCrystalDir, "knbo3"));
    InteractionSpec ia = build_interaction(cf);  // ia.pump.theta already solved

    InteractionSpec fresh = ia;
    REQUIRE_THROWS_AS(solve_pm_angle(fresh, 1.2, 0.8), domain_error);
    // no sign change in [0.8, 1.2]: the mismatch is negative on both ends
    REQUIRE_THROWS_AS(solve_pm_angle(fresh, 0.8, 1.2), numeric_error);

    AngleSolution sol = solve_pm_angle(fresh, 0.2, 1.2);
    REQUIRE(sol.theta_rad == Approx(0.6452933652422697).margin(1e-9));
    REQUIRE(sol.residual < 1e-6);
    REQUIRE(fresh.pump.theta == Approx(sol.theta_rad));
}

TEST_CASE("longitudinal mismatch is even in a joint transverse flip", "[phasematching]") {
    const InteractionSpec ia = load_interaction("knbo3");
    const double nu_s = 3.1e11, nu_i = -1.7e11;
    const double q_s = 4.2e4, q_i = -2.9e4;
    const double a = delta_k_longitudinal(ia, nu_s, nu_i, q_s, q_i);
    const double b = delta_k_longitudinal(ia, nu_s, nu_i, -q_s, -q_i);
    REQUIRE(a == b);  // bitwise: q enters only squared
    REQUIRE(a != delta_k_longitudinal(ia, nu_s, nu_i, q_s, -q_i));
}

TEST_CASE("transverse components beyond the wavevector are evanescent", "[phasematching]") {
    const InteractionSpec ia = load_interaction("ppln");
    const double k_s = ia.k_of(Photon::signal);
    REQUIRE_THROWS_AS(delta_k_longitudinal(ia, 0.0, 0.0, 1.01 * k_s, 0.0), domain_error);
}

TEST_CASE("phasematching amplitude is the signed sinc of the mismatch", "[phasematching]") {
    const InteractionSpec ia = load_interaction("ppln");
    const double dk = delta_k_longitudinal(ia, 2.5e11, -1.0e11, 1e4, -3e3);
    const double L = ia.crystal.length_m;
    REQUIRE(pm_amplitude(dk, L) == Approx(sinc(dk * L / 2.0)).epsilon(1e-14));
    REQUIRE(pm_amplitude(0.0, L) == 1.0);
    // first sidelobe is negative and must stay negative
    REQUIRE(pm_amplitude(2.0 * 4.49 / L, L) < 0.0);
}

TEST_CASE("detuned wavevectors follow the dispersion relation", "[phasematching]") {
    const InteractionSpec ia = load_interaction("ppln");
    const double nu = 2.0e11;
    const double nu0 = c_light / ia.lambda_s_m;
    const double lam = c_light / (nu0 + nu);
    const double expect = two_pi * ia.signal.index(ia.crystal, lam) / lam;
    REQUIRE(ia.k_of(Photon::signal, nu) == Approx(expect).epsilon(1e-14));
}
