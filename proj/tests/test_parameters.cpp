#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "qwrabi/parameters.hpp"

using namespace qwrabi;

namespace {
const MaterialSpec reference{};          // g = 1.52, m0 = 9e-31 kg, m/m0 = 0.15
const FieldPoint field01{0.01};
} // namespace

TEST_CASE("mapping reproduces the reference magnitudes", "[parameters]") {
    const MappedParams p = map_parameters(reference, field01, SocStrengths{1.0, 1.0});
    CHECK(p.Ea == Catch::Approx(1.35e9).epsilon(0.01));
    // |lambda| per unit velocity
    CHECK(std::abs(p.lambda1) == Catch::Approx(5.52e6).epsilon(0.01));
    CHECK(std::abs(p.lambda2) == Catch::Approx(5.52e6).epsilon(0.01));
    CHECK(p.Eb > 0.0);
}

TEST_CASE("zero SOC strengths give exactly zero couplings", "[parameters]") {
    const MappedParams p = map_parameters(reference, field01, SocStrengths{0.0, 1.0});
    CHECK(p.lambda1 == std::complex<double>(0.0, 0.0));
    CHECK(p.lambda2 != std::complex<double>(0.0, 0.0));
    const MappedParams q = map_parameters(reference, field01, SocStrengths{1.0, 0.0});
    CHECK(q.lambda2 == std::complex<double>(0.0, 0.0));
}

TEST_CASE("field scaling: B -> 4B doubles couplings and quadruples energies exactly",
          "[parameters]") {
    const SocStrengths soc{3.0, 7.0};
    const MappedParams p = map_parameters(reference, field01, soc);
    const MappedParams p4 = map_parameters(reference, FieldPoint{4.0 * field01.B}, soc);
    CHECK(p4.Ea == 4.0 * p.Ea);
    CHECK(p4.Eb == 4.0 * p.Eb);
    CHECK(std::abs(p4.lambda1) == 2.0 * std::abs(p.lambda1));
    CHECK(std::abs(p4.lambda2) == 2.0 * std::abs(p.lambda2));
}

TEST_CASE("phase lock and linearity", "[parameters]") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> vel(0.1, 1000.0);
    for (int i = 0; i < 50; ++i) {
        const double a = vel(rng), b = vel(rng);
        const MappedParams p = map_parameters(reference, field01, SocStrengths{a, b});
        // arg(lambda1) = pi/2, arg(lambda2) = 0
        CHECK(p.lambda1.real() == 0.0);
        CHECK(p.lambda1.imag() > 0.0);
        CHECK(p.lambda2.imag() == 0.0);
        CHECK(p.lambda2.real() > 0.0);
        // linear in the SOC velocity; bare energies untouched
        const MappedParams p2 = map_parameters(reference, field01, SocStrengths{2.0 * a, b});
        CHECK(p2.lambda1 == 2.0 * p.lambda1);
        CHECK(p2.lambda2 == p.lambda2);
        CHECK(p2.Ea == p.Ea);
        CHECK(p2.Eb == p.Eb);
    }
}

TEST_CASE("round trip recovers the SOC velocity", "[parameters]") {
    const double alpha = 137.5;
    const MappedParams p = map_parameters(reference, field01, SocStrengths{alpha, 0.0});
    const double back = std::abs(p.lambda1) / soc_coupling_coefficient(field01.B);
    CHECK(std::abs(back - alpha) / alpha <= 1e-12);
}

TEST_CASE("invalid inputs are rejected", "[parameters]") {
    CHECK_THROWS_AS(map_parameters(reference, FieldPoint{0.0}, SocStrengths{}), input_error);
    CHECK_THROWS_AS(map_parameters(reference, FieldPoint{-0.01}, SocStrengths{}), input_error);
    CHECK_THROWS_AS(map_parameters(reference, field01, SocStrengths{-1.0, 0.0}), input_error);
    MaterialSpec bad = reference;
    bad.electron_mass = 0.0;
    CHECK_THROWS_AS(map_parameters(bad, field01, SocStrengths{}), input_error);
    bad = reference;
    bad.effective_mass_ratio = -0.15;
    CHECK_THROWS_AS(map_parameters(bad, field01, SocStrengths{}), input_error);
    bad = reference;
    bad.g_factor = 0.0;
    CHECK_THROWS_AS(map_parameters(bad, field01, SocStrengths{}), input_error);
}

TEST_CASE("anchored material pins the bare energies at the reference field",
          "[parameters]") {
    const MaterialSpec anchored = anchored_material();
    const MappedParams p = map_parameters(anchored, field01, SocStrengths{});
    CHECK(p.Ea == Catch::Approx(1.35e9).epsilon(1e-12));
    CHECK(p.Eb == Catch::Approx(1.70e9).epsilon(1e-12));
    // physical scaling preserved away from the anchor
    const MappedParams p4 = map_parameters(anchored, FieldPoint{0.04}, SocStrengths{});
    CHECK(p4.Ea == Catch::Approx(4.0 * 1.35e9).epsilon(1e-12));
    CHECK(p4.Eb == Catch::Approx(4.0 * 1.70e9).epsilon(1e-12));
}
