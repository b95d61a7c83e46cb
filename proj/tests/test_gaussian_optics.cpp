#include <catch2/catch_amalgamated.hpp>

#include <spdc/gaussian_optics.hpp>
#include <spdc/numeric.hpp>

#include <cmath>
#include <complex>
#include <vector>

using namespace spdc;
using Catch::Approx;

TEST_CASE("ray matrices compose right-to-left", "[optics]") {
    // lens then distance f: a collimated ray height h focuses to the axis
    const RayMatrix m = free_space(0.2) * thin_lens(0.2);
    REQUIRE(m.a == Approx(0.0).margin(1e-15));
    REQUIRE(m.b == Approx(0.2).epsilon(1e-15));
    REQUIRE(m.c == Approx(-5.0).epsilon(1e-15));
    REQUIRE(m.d == Approx(1.0).epsilon(1e-15));
    REQUIRE_THROWS_AS(thin_lens(0.0), domain_error);
}

TEST_CASE("telescopic relay is a pure magnifier", "[optics]") {
    const RayMatrix m = relay_matrix(0.15, 0.0075);
    REQUIRE(m.a == Approx(-0.05).epsilon(1e-12));
    REQUIRE(m.d == Approx(-20.0).epsilon(1e-12));
    REQUIRE(std::fabs(m.b) < 1e-12);
    REQUIRE(std::fabs(m.c) < 1e-9);
    // determinant 1 for any sequence of lossless elements
    REQUIRE(m.a * m.d - m.b * m.c == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("a 150/7.5 relay images a 140 um waist to 7 um", "[optics]") {
    for (double lam : {810e-9, 1550e-9}) {
        const std::complex<double> q0 = q_at_waist(140e-6, lam);
        const std::complex<double> q1 = propagate_q(relay_matrix(0.15, 0.0075), q0);
        REQUIRE(std::fabs(q1.real()) < 1e-9);  // waist sits at the output plane
        REQUIRE(spot_radius_from_q(q1, lam) == Approx(7e-6).epsilon(1e-9));
    }
}

TEST_CASE("q parameter propagation through free space", "[optics]") {
    const double w0 = 50e-6, lam = 810e-9;
    const double zr = pi * w0 * w0 / lam;
    const std::complex<double> q0 = q_at_waist(w0, lam);
    REQUIRE(q0.real() == 0.0);
    REQUIRE(q0.imag() == Approx(zr).epsilon(1e-12));
    const std::complex<double> q1 = propagate_q(free_space(zr), q0);
    REQUIRE(spot_radius_from_q(q1, lam) == Approx(std::sqrt(2.0) * w0).epsilon(1e-12));
}

TEST_CASE("power overlap of collocated waists matches the closed form", "[optics]") {
    const double lam = 1550e-9;
    const double wa = 5.1e-6, wb = 7.0e-6;
    const double eta = std::pow(2.0 * wa * wb / (wa * wa + wb * wb), 2);
    REQUIRE(power_overlap(q_at_waist(wa, lam), q_at_waist(wb, lam), lam) ==
            Approx(eta).epsilon(1e-12));
    // identical beams couple perfectly; the overlap is symmetric
    REQUIRE(power_overlap(q_at_waist(wa, lam), q_at_waist(wa, lam), lam) ==
            Approx(1.0).epsilon(1e-12));
    const std::complex<double> qa = q_at_waist(wa, lam);
    const std::complex<double> qb = propagate_q(free_space(1e-4), q_at_waist(wb, lam));
    REQUIRE(power_overlap(qa, qb, lam) == Approx(power_overlap(qb, qa, lam)).epsilon(1e-12));
    REQUIRE(power_overlap(qa, qb, lam) < 1.0);
}

TEST_CASE("lens pairs are ranked by fiber coupling", "[optics]") {
    const std::vector<std::pair<double, double>> pairs{{0.15, 0.0075}, {0.15, 0.0031}};

    // telecom arm: 140 um waist into a 10.2 um MFD fiber favors f = 7.5 mm
    const LensRanking tele = suggest_lenses(140e-6, 1550e-9, 10.2e-6, pairs);
    REQUIRE(tele.suggestions.size() == 2);
    REQUIRE(tele.suggestions[0].focusing_focal_m == Approx(0.0075));
    REQUIRE(tele.suggestions[0].overlap > 0.85);
    REQUIRE(tele.suggestions[0].overlap < 0.95);
    REQUIRE(tele.suggestions[0].waist_at_fiber_m == Approx(7e-6).epsilon(1e-9));
    REQUIRE(tele.suggestions[1].overlap <= tele.suggestions[0].overlap);
    REQUIRE_FALSE(tele.warning);

    // near-IR arm: 140 um waist into a 5.6 um MFD fiber needs the shorter
    // focal length; the 7.5 mm candidate couples below 0.5 and is dropped
    const LensRanking nir = suggest_lenses(140e-6, 810e-9, 5.6e-6, pairs);
    REQUIRE(nir.suggestions.size() == 1);
    REQUIRE(nir.suggestions[0].focusing_focal_m == Approx(0.0031));
    REQUIRE(nir.suggestions[0].overlap > 0.9);
    REQUIRE(nir.suggestions[0].focusing_focal_m < tele.suggestions[0].focusing_focal_m);

    // nothing couples into an absurd fiber: empty ranking plus a warning
    const LensRanking none = suggest_lenses(140e-6, 810e-9, 60e-6, pairs);
    REQUIRE(none.suggestions.empty());
    REQUIRE(none.warning);
    REQUIRE_FALSE(none.warning_message.empty());

    REQUIRE_THROWS_AS(suggest_lenses(0.0, 810e-9, 5.6e-6, pairs), domain_error);
}
