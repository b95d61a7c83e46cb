#include <catch2/catch_amalgamated.hpp>

#include <spdc/config.hpp>
#include <spdc/joint_amplitude.hpp>
#include <spdc/schmidt.hpp>

#include <cmath>
#include <complex>
#include <random>
#include <string>
#include <vector>

using namespace spdc;
using Catch::Approx;

namespace {
const std::string kCrystalDir = std::string(SPDC_DATA_DIR) + "/crystals";

InteractionSpec knbo3() {
    return build_interaction(load_crystal_file(find_crystal_path(kCrystalDir, "knbo3")));
}

PumpSpec pulsed_pump() {
    PumpSpec p;
    p.lambda_m = 532e-9;
    p.waist_m = 205.75523046193544e-6;
    p.pulsed = true;
    p.duration_fwhm_s = 8e-12;
    return p;
}
}  // namespace

TEST_CASE("diagonal matrices decompose exactly", "[schmidt]") {
    // singular values 3 and 4: weights 9/25, 16/25, purity 337/625
    std::vector<std::complex<double>> m(4, 0.0);
    m[0] = 3.0;
    m[3] = 4.0;
    const SchmidtSpectrum s = schmidt_decompose(2, 2, m);
    REQUIRE(s.coefficients.size() == 2);
    REQUIRE(s.coefficients[0] == Approx(16.0 / 25.0).epsilon(1e-12));
    REQUIRE(s.coefficients[1] == Approx(9.0 / 25.0).epsilon(1e-12));
    REQUIRE(s.purity == Approx(337.0 / 625.0).epsilon(1e-12));
    REQUIRE(s.schmidt_number == Approx(625.0 / 337.0).epsilon(1e-12));
}

TEST_CASE("separable grids have unit purity", "[schmidt]") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<std::complex<double>> f(24), g(17);
    for (auto& v : f) v = {u(rng), u(rng)};
    for (auto& v : g) v = {u(rng), u(rng)};
    std::vector<std::complex<double>> m;
    m.reserve(f.size() * g.size());
    for (const auto& a : f)
        for (const auto& b : g) m.push_back(a * b);
    const SchmidtSpectrum s = schmidt_decompose(f.size(), g.size(), m);
    REQUIRE(std::fabs(s.purity - 1.0) < 1e-9);
    REQUIRE(s.coefficients.front() == Approx(1.0).margin(1e-9));
}

TEST_CASE("uniform diagonal gives purity 1/N", "[schmidt]") {
    const std::size_t n = 7;
    std::vector<double> m(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) m[i * n + i] = 0.31;
    const SchmidtSpectrum s = schmidt_decompose(n, n, m);
    REQUIRE(std::fabs(s.purity - 1.0 / static_cast<double>(n)) < 1e-9);
    REQUIRE(s.schmidt_number == Approx(static_cast<double>(n)).epsilon(1e-9));
}

TEST_CASE("weights are sorted, normalized, and shape-checked", "[schmidt]") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<std::complex<double>> m(12 * 9);
    for (auto& v : m) v = {u(rng), u(rng)};
    const SchmidtSpectrum s = schmidt_decompose(12, 9, m);
    double sum = 0.0;
    for (std::size_t i = 0; i < s.coefficients.size(); ++i) {
        sum += s.coefficients[i];
        if (i) REQUIRE(s.coefficients[i] <= s.coefficients[i - 1]);
    }
    REQUIRE(sum == Approx(1.0).epsilon(1e-12));
    REQUIRE(s.schmidt_number == Approx(1.0 / s.purity).epsilon(1e-12));
    REQUIRE_THROWS_AS(schmidt_decompose(5, 5, m), domain_error);
}

TEST_CASE("double-Gaussian purity matches the closed form", "[schmidt]") {
    // exp(-(x+y)^2/(4a^2)) * exp(-(x-y)^2/(4b^2)): purity = 2ab/(a^2+b^2)
    const double a = 1.0, b = 0.35;
    const std::size_t n = 256;
    const auto x = linspace(-6.0, 6.0, n);
    std::vector<double> m(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double sp = x[i] + x[j], sm = x[i] - x[j];
            m[i * n + j] = std::exp(-sp * sp / (4 * a * a) - sm * sm / (4 * b * b));
        }
    const double expect = 2.0 * a * b / (a * a + b * b);
    REQUIRE(schmidt_decompose(n, n, m).purity == Approx(expect).epsilon(1e-3));
}

TEST_CASE("purity falls monotonically with pump waist", "[schmidt][scan]") {
    const InteractionSpec ia = knbo3();
    const std::vector<double> waists{25e-6, 50e-6, 100e-6, 200e-6, 400e-6};
    const auto pts = purity_vs_pump_waist(ia, pulsed_pump(), waists);
    REQUIRE(pts.size() == waists.size());

    const std::vector<double> expect{0.775713, 0.473870, 0.251278, 0.127677, 0.064104};
    for (std::size_t i = 0; i < pts.size(); ++i) {
        REQUIRE(pts[i].first == Approx(waists[i]));
        REQUIRE(pts[i].second == Approx(expect[i]).epsilon(2e-3));
        if (i) REQUIRE(pts[i].second < pts[i - 1].second);
    }
    REQUIRE_THROWS_AS(purity_vs_pump_waist(ia, pulsed_pump(), {}), domain_error);
    REQUIRE_THROWS_AS(purity_vs_pump_waist(ia, pulsed_pump(), {-1e-6}), domain_error);
}

TEST_CASE("mode coupling vs signal collection angle", "[schmidt][scan]") {
    const InteractionSpec ia = knbo3();
    const double deg = pi / 180.0;
    std::vector<double> angles;
    for (double d : {0.05, 0.10, 0.15, 0.20, 0.25, 0.30, 0.35, 0.40, 0.50, 0.60, 0.80, 1.00, 1.20})
        angles.push_back(d * deg);
    const double ref = 0.0036428576650174;
    const auto pts = purity_vs_collection(ia, pulsed_pump(), angles, ref);
    REQUIRE(pts.size() == angles.size());

    const std::vector<double> expect{0.588878, 0.807683, 0.929032, 0.979168, 0.980807,
                                     0.953720, 0.912019, 0.864516, 0.769841, 0.686925,
                                     0.562717, 0.480180, 0.423259};
    for (std::size_t i = 0; i < pts.size(); ++i)
        REQUIRE(pts[i].second == Approx(expect[i]).epsilon(2e-3));

    // rises onto a plateau around 0.25 deg, then falls through 0.95 just past 0.3 deg
    REQUIRE(scan_knee(pts, 0.95) == Approx(0.3045 * deg).epsilon(2e-3));

    REQUIRE_THROWS_AS(purity_vs_collection(ia, pulsed_pump(), {}, ref), domain_error);
    REQUIRE_THROWS_AS(purity_vs_collection(ia, pulsed_pump(), {1e-3}, 0.0), domain_error);
}

TEST_CASE("knee finder interpolates the first downward crossing", "[schmidt]") {
    const std::vector<std::pair<double, double>> pts{
        {0.0, 1.0}, {1.0, 0.98}, {2.0, 0.90}, {3.0, 0.96}, {4.0, 0.40}};
    // first crossing of 0.95 happens between 1 and 2
    REQUIRE(scan_knee(pts, 0.95) == Approx(1.0 + 0.03 / 0.08).epsilon(1e-12));
    REQUIRE_THROWS_AS(scan_knee(pts, 0.1), numeric_error);
    REQUIRE_THROWS_AS(scan_knee({{0.0, 1.0}}, 0.95), numeric_error);
}
