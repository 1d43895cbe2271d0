#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "qwrabi/qfi.hpp"
#include "qwrabi/sweep.hpp"

using namespace qwrabi;
using cd = std::complex<double>;

namespace {

const MaterialSpec anchored = anchored_material();
const double B0 = 0.01;

// |psi(B)> = cos(cB)|0;g> + sin(cB)|1;e>, a one-parameter family whose QFI is
// exactly 4c^2 (hand differentiation of the pure-state formula).
qfi::StateFamily rotor_family(double c, double chi = 0.0) {
    return [c, chi](double B) {
        Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(8);
        const cd phase = std::exp(cd(0.0, chi * B));
        amps[basis_index(0, spin_g)] = phase * std::cos(c * B);
        amps[basis_index(1, spin_e)] = phase * std::sin(c * B);
        return StateVector(std::move(amps), 4);
    };
}

} // namespace

TEST_CASE("constant family has zero QFI", "[qfi]") {
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(8);
    amps[basis_index(0, spin_g)] = 1.0;
    const StateVector fixed(std::move(amps), 4);
    const double step = 1e-8;
    const qfi::QfiResult r =
        qfi::qfi_overlap_fd([&](double) { return fixed; }, B0, step);
    CHECK(std::abs(r.value) <= 1e-6 / (step * step));
    CHECK(r.gauge_overlap == Catch::Approx(1.0));
}

TEST_CASE("rotor family has QFI 4c^2", "[qfi]") {
    const double c = 3.7e3;
    const double step = 1e-6 * B0;
    const qfi::QfiResult r = qfi::qfi_overlap_fd(rotor_family(c), B0, step);
    CHECK(r.value == Catch::Approx(4.0 * c * c).epsilon(1e-6));
    const qfi::QfiResult f = qfi::qfi_fidelity_susceptibility(rotor_family(c), B0, step);
    CHECK(f.value == Catch::Approx(4.0 * c * c).epsilon(1e-4));
}

TEST_CASE("global phase drift is gauged away", "[qfi]") {
    const double c = 3.7e3;
    const double step = 1e-6 * B0;
    const double plain = qfi::qfi_overlap_fd(rotor_family(c, 0.0), B0, step).value;
    const double gauged = qfi::qfi_overlap_fd(rotor_family(c, 2.5e3), B0, step).value;
    CHECK(std::abs(plain - gauged) / plain <= 1e-8);
}

TEST_CASE("too-large step is rejected by the gauge fix", "[qfi]") {
    // overlap |cos(c*step)| = cos(2) < 0.5
    const double c = 2.0e8, step = 1e-8;
    CHECK_THROWS_AS(qfi::qfi_overlap_fd(rotor_family(c), B0, step), input_error);
}

TEST_CASE("mismatched truncations are rejected", "[qfi]") {
    Eigen::VectorXcd a = Eigen::VectorXcd::Zero(8);
    a[0] = 1.0;
    Eigen::VectorXcd b = Eigen::VectorXcd::Zero(12);
    b[0] = 1.0;
    const StateVector sa(a, 4), sb(b, 6);
    CHECK_THROWS_AS(qfi::qfi_overlap_fd(sa, sa, sb, 1e-8), input_error);
}

TEST_CASE("no Dresselhaus SOC means zero field sensitivity on the G1 branch",
          "[qfi]") {
    const qfi::QfiResult r =
        qfi::qfi_analytic_g1(anchored, SocStrengths{200.0, 0.0}, B0);
    CHECK(r.value == 0.0); // xi(B) is identically zero
    const qfi::GroundQfi g = qfi::qfi_ground(anchored, SocStrengths{200.0, 0.0}, B0,
                                             0.0, qfi::GroundSource::Approx);
    CHECK(std::abs(g.qfi.value) <= 1e-6);
    CHECK(g.branch == qfi::BranchLabel::G1);
}

TEST_CASE("small-beta QFI matches the hand-differentiated linearized xi", "[qfi]") {
    // xi ~ lambda2/(2(Ea+Eb)) with lambda2 = beta c sqrt(B), Ea+Eb = s B:
    // xi(B) = (beta c)/(2 s) B^(-1/2), so F = 4|dxi/dB|^2 = beta^2 c^2/(4 s^2 B^3).
    const double e = constants::elementary_charge;
    const double ea_per_T = anchored.g_factor * e / (2.0 * anchored.electron_mass);
    const double eb_per_T = e / (anchored.effective_mass_ratio * anchored.electron_mass);
    const double s = ea_per_T + eb_per_T;
    const double c2 = 2.0 * e / constants::hbar;
    for (const double beta : {0.5, 1.0}) {
        const double predicted = beta * beta * c2 / (4.0 * s * s * B0 * B0 * B0);
        const qfi::QfiResult r = qfi::qfi_analytic_g1(anchored, SocStrengths{0.0, beta}, B0);
        CHECK(r.value == Catch::Approx(predicted).epsilon(0.01));
    }
}

TEST_CASE("the three estimators agree on the |G1> family", "[qfi]") {
    const SocStrengths soc{300.0, 40.0};
    const double step = 1e-3 * B0;
    qfi::GroundOptions opts;
    const double analytic = qfi::qfi_analytic_g1(anchored, soc, B0, step).value;
    const double overlap =
        qfi::qfi_ground(anchored, soc, B0, step, qfi::GroundSource::Approx, opts).qfi.value;
    opts.method = qfi::QfiMethod::FidelitySusceptibility;
    const double fidsus =
        qfi::qfi_ground(anchored, soc, B0, step, qfi::GroundSource::Approx, opts).qfi.value;
    CHECK(std::abs(analytic - overlap) / overlap <= 1e-4);
    CHECK(std::abs(fidsus - overlap) / overlap <= 1e-4);
}

TEST_CASE("overlap and fidelity-susceptibility discrepancy shrinks 4x per halving",
          "[qfi]") {
    const SocStrengths soc{300.0, 40.0};
    double prev = 0.0;
    double ratios[2] = {0.0, 0.0};
    int k = 0;
    for (const double step : {2e-2 * B0, 1e-2 * B0, 5e-3 * B0}) {
        qfi::GroundOptions opts;
        const double overlap =
            qfi::qfi_ground(anchored, soc, B0, step, qfi::GroundSource::Approx, opts)
                .qfi.value;
        opts.method = qfi::QfiMethod::FidelitySusceptibility;
        const double fidsus =
            qfi::qfi_ground(anchored, soc, B0, step, qfi::GroundSource::Approx, opts)
                .qfi.value;
        const double d = std::abs(overlap - fidsus);
        if (prev > 0.0) ratios[k++] = prev / d;
        prev = d;
    }
    CHECK(ratios[0] == Catch::Approx(4.0).margin(1.0));
    CHECK(ratios[1] == Catch::Approx(4.0).margin(1.0));
}

TEST_CASE("reported value is stable under step halving", "[qfi]") {
    const SocStrengths soc{300.0, 40.0};
    const double f1 =
        qfi::qfi_ground(anchored, soc, B0, 2e-6 * B0, qfi::GroundSource::Approx).qfi.value;
    const double f2 =
        qfi::qfi_ground(anchored, soc, B0, 1e-6 * B0, qfi::GroundSource::Approx).qfi.value;
    CHECK(std::abs(f1 - f2) / f2 <= 1e-3);
}

TEST_CASE("below-crossing QFI is insensitive to the Rashba strength", "[qfi]") {
    const double f200 =
        qfi::qfi_ground(anchored, SocStrengths{200.0, 40.0}, B0, 0.0,
                        qfi::GroundSource::Approx)
            .qfi.value;
    const double f400 =
        qfi::qfi_ground(anchored, SocStrengths{400.0, 40.0}, B0, 0.0,
                        qfi::GroundSource::Approx)
            .qfi.value;
    CHECK(std::abs(f200 - f400) / std::max(f200, f400) <= 0.01);
}

TEST_CASE("differencing across the crossing is refused", "[qfi]") {
    const sweep::CrossingPoint cross =
        sweep::find_crossing(anchored, B0, 40.0, 300.0, 900.0, qfi::GroundSource::Approx,
                             1e-4);
    CHECK_THROWS_AS(qfi::qfi_ground(anchored, SocStrengths{cross.alpha_c, 40.0}, B0,
                                    1e-3 * B0, qfi::GroundSource::Approx),
                    branch_crossed_error);
}

TEST_CASE("oracle-family QFI is positive below the crossing and matches the "
          "independent reference value", "[qfi]") {
    const qfi::GroundQfi g = qfi::qfi_ground(anchored, SocStrengths{200.0, 40.0}, B0,
                                             1e-8, qfi::GroundSource::Oracle);
    CHECK(g.branch == qfi::BranchLabel::ParityMinus);
    // frozen from an independent full-diagonalization implementation
    CHECK(g.qfi.value == Catch::Approx(21.908).epsilon(0.01));
}
