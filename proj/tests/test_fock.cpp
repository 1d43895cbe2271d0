#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>

#include "qwrabi/fock.hpp"

using namespace qwrabi;
using cd = std::complex<double>;

namespace {

const MaterialSpec anchored = anchored_material();

MappedParams at(double alpha, double beta) {
    return map_parameters(anchored, FieldPoint{0.01}, SocStrengths{alpha, beta});
}

} // namespace

TEST_CASE("uncoupled Hamiltonian is diagonal with ladder energies", "[fock]") {
    const MappedParams p{1.0, 2.0, cd(0, 0), cd(0, 0)};
    const Eigen::MatrixXcd H = fock::build_hamiltonian(p, 4);
    for (Eigen::Index n = 0; n < 4; ++n) {
        CHECK(H(basis_index(n, spin_g), basis_index(n, spin_g)) == cd(2.0 * n - 0.5, 0.0));
        CHECK(H(basis_index(n, spin_e), basis_index(n, spin_e)) == cd(2.0 * n + 0.5, 0.0));
    }
    CHECK(H.cwiseAbs().sum() == Catch::Approx(H.diagonal().cwiseAbs().sum()));

    const fock::SpectrumExact s = fock::exact_spectrum(p, 4, 3);
    CHECK(s.energies[0] == Catch::Approx(-0.5).margin(1e-14));
    CHECK(s.energies[1] == Catch::Approx(0.5).margin(1e-14));
    CHECK(s.energies[2] == Catch::Approx(1.5).margin(1e-14));
    CHECK(std::abs(s.states[0].amplitudes[basis_index(0, spin_g)]) ==
          Catch::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("one-excitation block carries the half-coupling element", "[fock]") {
    const MappedParams p{1.0, 2.0, cd(0.0, 0.6), cd(0, 0)};
    const Eigen::MatrixXcd H = fock::build_hamiltonian(p, 2);
    CHECK(H(basis_index(1, spin_g), basis_index(0, spin_e)) == p.lambda1 / 2.0);
    CHECK(H(basis_index(0, spin_e), basis_index(1, spin_g)) == std::conj(p.lambda1) / 2.0);
}

TEST_CASE("Hamiltonian is Hermitian by construction", "[fock]") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> en(0.2e9, 3e9), cpl(0.0, 6e9);
    for (int i = 0; i < 10; ++i) {
        const MappedParams p{en(rng), en(rng), cd(0.0, cpl(rng)), cd(cpl(rng), 0.0)};
        const Eigen::MatrixXcd H = fock::build_hamiltonian(p, 12);
        CHECK((H - H.adjoint()).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("exact gap changes sign at the closed-form crossing", "[fock]") {
    const MappedParams base = at(0.0, 0.0);
    const double lc = 2.0 * std::sqrt(base.Ea * base.Eb);
    const auto gap = [&](double l1) {
        const MappedParams p{base.Ea, base.Eb, cd(0.0, l1), cd(0, 0)};
        return fock::signed_parity_gap(fock::exact_spectrum(p, 16, 4));
    };
    double lo = 0.5 * lc, hi = 2.0 * lc;
    REQUIRE(gap(lo) > 0.0);
    REQUIRE(gap(hi) < 0.0);
    while (hi - lo > 1e-7 * lc) {
        const double mid = 0.5 * (lo + hi);
        (gap(mid) > 0.0 ? lo : hi) = mid;
    }
    CHECK(0.5 * (lo + hi) == Catch::Approx(lc).epsilon(1e-6));
}

TEST_CASE("strong-coupling ground state has definite parity", "[fock]") {
    const fock::SpectrumExact s = fock::converge_truncation(at(1000.0, 100.0), 16, 1.0);
    REQUIRE(s.converged);
    const double pexp = parity_expectation(s.states[0].amplitudes);
    CHECK(std::abs(pexp) > 1.0 - 1e-8);
    CHECK(s.states[0].parity != Parity::Mixed);
}

TEST_CASE("truncation convergence", "[fock]") {
    SECTION("uncoupled spectrum converges at the first doubling") {
        const MappedParams p{1.0e9, 2.0e9, cd(0, 0), cd(0, 0)};
        const fock::SpectrumExact s = fock::converge_truncation(p, 4, 1e-3);
        CHECK(s.converged);
        CHECK(s.truncation == 8);
        CHECK(s.energies[0] == Catch::Approx(-0.5e9).epsilon(1e-12));
    }
    SECTION("strongest reference coupling converges at desk scale") {
        const fock::SpectrumExact s = fock::converge_truncation(at(1000.0, 100.0), 16, 1.0);
        CHECK(s.converged);
        CHECK(s.truncation <= 128);
    }
    SECTION("ground energy never rises with refinement beyond tol") {
        const MappedParams p = at(700.0, 60.0);
        double prev = fock::exact_spectrum(p, 8, 1).energies[0];
        for (const Eigen::Index N : {16, 32, 64}) {
            const double e = fock::exact_spectrum(p, N, 1).energies[0];
            CHECK(e <= prev + 1.0);
            prev = e;
        }
    }
}

TEST_CASE("eigenstates are orthonormal", "[fock]") {
    const fock::SpectrumExact s = fock::exact_spectrum(at(700.0, 60.0), 32, 6);
    for (std::size_t i = 0; i < s.states.size(); ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            const cd o = overlap(s.states[i], s.states[j]);
            CHECK(std::abs(o - (i == j ? cd(1, 0) : cd(0, 0))) <= 1e-10);
        }
}

TEST_CASE("degenerate pair at the crossing is parity-resolved, +1 first", "[fock]") {
    const MappedParams base = at(0.0, 0.0);
    const double lc = 2.0 * std::sqrt(base.Ea * base.Eb);
    const MappedParams p{base.Ea, base.Eb, cd(0.0, lc), cd(0, 0)};
    const fock::SpectrumExact s = fock::exact_spectrum(p, 16, 2);
    CHECK(std::abs(s.energies[1] - s.energies[0]) <= 1e-6 * (base.Ea + base.Eb));
    CHECK(s.states[0].parity == Parity::Plus);
    CHECK(s.states[1].parity == Parity::Minus);
}

TEST_CASE("invalid sizes are rejected", "[fock]") {
    const MappedParams p{1.0, 2.0, cd(0, 0), cd(0, 0)};
    CHECK_THROWS_AS(fock::build_hamiltonian(p, 1), input_error);
    CHECK_THROWS_AS(fock::exact_spectrum(p, 4, 0), input_error);
    CHECK_THROWS_AS(fock::exact_spectrum(p, 4, 9), input_error);
    CHECK_THROWS_AS(fock::converge_truncation(p, 1, 1.0), input_error);
}
