#include <catch2/catch_amalgamated.hpp>

#include <spdc/numeric.hpp>
#include <spdc/toy_model.hpp>

#include <cmath>
#include <complex>
#include <vector>

using namespace spdc;
using Catch::Approx;

TEST_CASE("position grid construction and span guard", "[toy]") {
    const double sig = 0.8;
    const auto x = make_position_grid(sig, 512);
    REQUIRE(x.size() == 512);
    REQUIRE(x.front() == Approx(-8.0 * sig));
    REQUIRE(x.back() == Approx(8.0 * sig));
    REQUIRE_THROWS_AS(make_position_grid(-1.0, 512), domain_error);
    // narrower than +-6 sigma is rejected downstream
    const auto narrow = make_position_grid(sig, 512, 5.0);
    REQUIRE_THROWS_AS(gaussian_mode_position(sig, narrow), domain_error);
    REQUIRE_THROWS_AS(herald_signal(3.0, sig, narrow), domain_error);
}

TEST_CASE("Fourier transforms are unitary and invert each other", "[toy]") {
    const double sig = 0.6;
    const auto x = make_position_grid(sig, 1024);
    const Wavefunction1D pos = gaussian_mode_position(sig, x);
    REQUIRE(pos.squared_norm() == Approx(1.0).epsilon(1e-12));

    const auto k = linspace(-6.0 / sig, 6.0 / sig, 1024);
    const Wavefunction1D mom = fourier_to_momentum(pos, k);
    // the transform carries the discrete norm up to the measure factor
    REQUIRE(mom.squared_norm() * mom.step() / pos.step() ==
            Approx(pos.squared_norm() * 1.0).epsilon(1e-3));

    // analytic image: a position Gaussian of width sigma maps to a momentum
    // Gaussian of width 1/(2 sigma)
    const Wavefunction1D expect = gaussian_mode_momentum(sig, k);
    Wavefunction1D got = mom;
    got.normalize();
    double worst = 0.0;
    for (std::size_t i = 0; i < k.size(); ++i)
        worst = std::max(worst, std::abs(got.values[i] - expect.values[i]));
    REQUIRE(worst < 1e-6);

    Wavefunction1D back = fourier_to_position(mom, x);
    back.normalize();
    double round = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        round = std::max(round, std::abs(back.values[i] - pos.values[i]));
    REQUIRE(round < 1e-8);
}

TEST_CASE("heralded wavefunction matches the closed form", "[toy]") {
    const double k_p = 12.0, sig = 0.8;
    const auto x = make_position_grid(sig);
    const Wavefunction1D numeric = herald_signal(k_p, sig, x);
    const Wavefunction1D exact = heralded_closed_form(k_p, sig, x);
    REQUIRE(numeric.squared_norm() == Approx(1.0).epsilon(1e-12));
    REQUIRE(exact.squared_norm() == Approx(1.0).epsilon(1e-12));
    REQUIRE(fidelity(numeric, exact) >= 1.0 - 1e-9);
}

TEST_CASE("heralded width and phase recover the construction", "[toy]") {
    const double k_p = 12.0, sig = 0.8;
    const auto x = make_position_grid(sig);
    const Wavefunction1D wf = herald_signal(k_p, sig, x);
    REQUIRE(fitted_width(wf) == Approx(sig).epsilon(1e-2));
    REQUIRE(phase_slope(wf, 2.0 * sig) == Approx(k_p).epsilon(1e-2));

    // a resting pump produces a real, flat-phase wavepacket
    const Wavefunction1D still = herald_signal(0.0, sig, x);
    REQUIRE(std::fabs(phase_slope(still, 2.0 * sig)) < 1e-9);
}

TEST_CASE("phase unwrapping survives fast carriers", "[toy]") {
    const double k_p = 40.0, sig = 1.0;
    const auto x = make_position_grid(sig);  // k_p * dx ~ 0.16 << pi
    const Wavefunction1D wf = heralded_closed_form(k_p, sig, x);
    REQUIRE(phase_slope(wf, 2.0 * sig) == Approx(k_p).epsilon(1e-3));
}

TEST_CASE("aliased momentum content is rejected", "[toy]") {
    // 64 samples over +-8 sigma: dx = 0.254, and (|k_p| + 6/sigma) dx > pi
    const auto coarse = make_position_grid(1.0, 64);
    REQUIRE_THROWS_AS(herald_signal(20.0, 1.0, coarse), domain_error);
}

TEST_CASE("fidelity is symmetric and bounded", "[toy]") {
    const double sig = 0.5;
    const auto x = make_position_grid(sig, 2048);
    const Wavefunction1D a = herald_signal(5.0, sig, x);
    const Wavefunction1D b = herald_signal(9.0, sig, x);
    REQUIRE(fidelity(a, a) == Approx(1.0).epsilon(1e-12));
    REQUIRE(fidelity(a, b) == Approx(fidelity(b, a)).epsilon(1e-12));
    REQUIRE(fidelity(a, b) < 1.0);
    REQUIRE(fidelity(a, b) >= 0.0);
}
