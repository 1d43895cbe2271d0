// qfi.hpp — Quantum Fisher information of pure ground states with respect to
// the magnetic field: gauge-fixed central-difference overlap estimator, the
// fidelity-susceptibility form, and the closed-form route 4|d(xi)/dB|^2 for
// the |G1> family.

#pragma once

#include <cmath>
#include <complex>
#include <functional>

#include "qwrabi/fock.hpp"
#include "qwrabi/parameters.hpp"
#include "qwrabi/polaron.hpp"
#include "qwrabi/state_vector.hpp"

namespace qwrabi::qfi {

using cd = std::complex<double>;

enum class QfiMethod { AnalyticG1, OverlapFD, FidelitySusceptibility };
enum class GroundSource { Approx, Oracle };
enum class BranchLabel { G1, G2, ParityPlus, ParityMinus };

struct QfiResult {
    double value = 0.0;          // F_B, 1/T^2
    QfiMethod method = QfiMethod::OverlapFD;
    double step = 0.0;           // finite-difference step in tesla, 0 for analytic
    double gauge_overlap = 1.0;  // |<psi(B)|psi(B+step)>| diagnostic
};

struct GroundQfi {
    QfiResult qfi;
    BranchLabel branch = BranchLabel::G1; // shared by all three field points
};

using StateFamily = std::function<StateVector(double)>;

namespace detail {

inline void check_nonnegative(double value, const char* who) {
    if (value < -1e-8)
        throw numeric_error(std::string(who) + ": QFI came out negative (" +
                            std::to_string(value) + ")");
}

// Rotate the neighbor's global phase so its overlap with the center state is
// real positive; eigensolvers hand back arbitrary phases.
inline Eigen::VectorXcd gauge_fixed(const StateVector& center, const StateVector& neighbor,
                                    double& abs_overlap) {
    const cd o = overlap(center, neighbor);
    abs_overlap = std::abs(o);
    if (abs_overlap < 0.5)
        throw input_error("qfi_overlap_fd: |<psi(B)|psi(B+/-step)>| < 0.5; "
                          "step too large for the gauge fix");
    return neighbor.amplitudes * (std::conj(o) / abs_overlap);
}

} // namespace detail

// F = 4(<d psi|d psi> - |<psi|d psi>|^2) with d psi by central differences of
// the gauge-fixed neighbors.
inline QfiResult qfi_overlap_fd(const StateVector& at_minus, const StateVector& at_center,
                                const StateVector& at_plus, double step) {
    if (!(step > 0.0))
        throw input_error("qfi_overlap_fd: step must be positive");
    if (at_minus.truncation != at_center.truncation ||
        at_plus.truncation != at_center.truncation)
        throw input_error("qfi_overlap_fd: mismatched truncations");

    double om = 0.0, op = 0.0;
    const Eigen::VectorXcd minus = detail::gauge_fixed(at_center, at_minus, om);
    const Eigen::VectorXcd plus = detail::gauge_fixed(at_center, at_plus, op);

    const Eigen::VectorXcd d = (plus - minus) / (2.0 * step);
    const double dd = d.squaredNorm();
    const cd pd = at_center.amplitudes.dot(d);
    QfiResult r;
    r.value = 4.0 * (dd - std::norm(pd));
    r.method = QfiMethod::OverlapFD;
    r.step = step;
    r.gauge_overlap = op;
    detail::check_nonnegative(r.value, "qfi_overlap_fd");
    return r;
}

inline QfiResult qfi_overlap_fd(const StateFamily& state_at, double B, double step) {
    const StateVector sm = state_at(B - step);
    const StateVector s0 = state_at(B);
    const StateVector sp = state_at(B + step);
    return qfi_overlap_fd(sm, s0, sp, step);
}

// Symmetric fidelity-susceptibility estimator 4(2 - |<psi0|psi+>| - |<psi0|psi->|)/step^2.
// Averaging the two-point forms over ±step keeps the leading error O(step^2).
inline QfiResult qfi_fidelity_susceptibility(const StateVector& at_minus,
                                             const StateVector& at_center,
                                             const StateVector& at_plus, double step) {
    if (!(step > 0.0))
        throw input_error("qfi_fidelity_susceptibility: step must be positive");
    if (at_minus.truncation != at_center.truncation ||
        at_plus.truncation != at_center.truncation)
        throw input_error("qfi_fidelity_susceptibility: mismatched truncations");
    const double om = std::abs(overlap(at_center, at_minus));
    const double op = std::abs(overlap(at_center, at_plus));
    QfiResult r;
    r.value = 4.0 * (2.0 - om - op) / (step * step);
    r.method = QfiMethod::FidelitySusceptibility;
    r.step = step;
    r.gauge_overlap = op;
    detail::check_nonnegative(r.value, "qfi_fidelity_susceptibility");
    return r;
}

inline QfiResult qfi_fidelity_susceptibility(const StateFamily& state_at, double B,
                                             double step) {
    return qfi_fidelity_susceptibility(state_at(B - step), state_at(B), state_at(B + step),
                                       step);
}

inline double default_fd_step(double B) { return 1e-6 * B; }

namespace detail {

inline cd xi_at(const MaterialSpec& material, const SocStrengths& soc, double B,
                double xi_tol) {
    const MappedParams p = map_parameters(material, FieldPoint{B}, soc);
    const polaron::XiSolution sol = polaron::solve_xi(p, xi_tol);
    if (!sol.converged)
        throw numeric_error("qfi_analytic_g1: xi solver did not converge at B = " +
                            std::to_string(B));
    return sol.xi;
}

inline polaron::ApproxSpectrum spectrum_at(const MaterialSpec& material,
                                           const SocStrengths& soc, double B,
                                           double xi_tol, polaron::XiSolution* sol_out) {
    const MappedParams p = map_parameters(material, FieldPoint{B}, soc);
    const polaron::XiSolution sol = polaron::solve_xi(p, xi_tol);
    if (!sol.converged)
        throw numeric_error("ground family: xi solver did not converge at B = " +
                            std::to_string(B));
    if (sol_out) *sol_out = sol;
    return polaron::approx_spectrum(p, polaron::transformed_params(p, sol));
}

} // namespace detail

// F_B = 4[(d Re xi/dB)^2 + (d Im xi/dB)^2] on the |G1> branch, with the
// derivative by Richardson-refined central differences of the xi solver.
inline QfiResult qfi_analytic_g1(const MaterialSpec& material, const SocStrengths& soc,
                                 double B, double step = 0.0, double xi_tol = 1e-12) {
    if (step == 0.0) step = default_fd_step(B);
    if (!(step > 0.0) || !(B > step))
        throw input_error("qfi_analytic_g1: need 0 < step < B");

    for (const double Bq : {B - step, B, B + step}) {
        const polaron::ApproxSpectrum s =
            detail::spectrum_at(material, soc, Bq, xi_tol, nullptr);
        if (s.ground_branch != polaron::ApproxBranch::G1)
            throw input_error("qfi_analytic_g1: not on the G1 branch (gap <= 0) at B = " +
                              std::to_string(Bq));
    }

    const auto central = [&](double h) {
        const cd xp = detail::xi_at(material, soc, B + h, xi_tol);
        const cd xm = detail::xi_at(material, soc, B - h, xi_tol);
        return (xp - xm) / (2.0 * h);
    };
    const cd d1 = central(step);
    const cd d2 = central(step / 2.0);
    const cd d = (4.0 * d2 - d1) / 3.0;

    QfiResult r;
    r.value = 4.0 * std::norm(d);
    r.method = QfiMethod::AnalyticG1;
    r.step = step;
    r.gauge_overlap = 1.0;
    detail::check_nonnegative(r.value, "qfi_analytic_g1");
    return r;
}

struct GroundOptions {
    Eigen::Index truncation = 0;   // 0: choose automatically
    double xi_tol = 1e-12;
    double oracle_tol = 1.0;       // rad/s, truncation convergence for the oracle
    QfiMethod method = QfiMethod::OverlapFD; // OverlapFD or FidelitySusceptibility
};

// QFI of the selected ground-state family. Refuses to difference across a
// branch change: the ground state is discontinuous at the crossing and the
// derivative is undefined there.
inline GroundQfi qfi_ground(const MaterialSpec& material, const SocStrengths& soc,
                            double B, double step, GroundSource source,
                            const GroundOptions& opts = {}) {
    if (step == 0.0) step = default_fd_step(B);
    if (!(step > 0.0) || !(B > step))
        throw input_error("qfi_ground: need 0 < step < B");

    const double points[3] = {B - step, B, B + step};
    StateVector states[3];
    BranchLabel branch{};

    if (source == GroundSource::Approx) {
        polaron::XiSolution sol_center;
        detail::spectrum_at(material, soc, B, opts.xi_tol, &sol_center);
        Eigen::Index N = opts.truncation;
        if (N == 0) N = polaron::truncation_for_xi(sol_center.xi);

        polaron::ApproxBranch branches[3];
        for (int i = 0; i < 3; ++i) {
            polaron::XiSolution sol;
            const polaron::ApproxSpectrum spec =
                detail::spectrum_at(material, soc, points[i], opts.xi_tol, &sol);
            branches[i] = spec.ground_branch;
            if (spec.ground_branch == polaron::ApproxBranch::Degenerate)
                throw branch_crossed_error("qfi_ground: degenerate gap at B = " +
                                           std::to_string(points[i]));
            states[i] = spec.ground_branch == polaron::ApproxBranch::G1
                            ? polaron::ground_state_g1(sol, N)
                            : polaron::ground_state_g2(sol, spec, N);
        }
        if (branches[0] != branches[1] || branches[2] != branches[1])
            throw branch_crossed_error(
                "qfi_ground: the three field points do not share a ground branch; "
                "shrink the step or accept a one-sided difference");
        branch = branches[1] == polaron::ApproxBranch::G1 ? BranchLabel::G1
                                                          : BranchLabel::G2;
    } else {
        Eigen::Index N = opts.truncation;
        if (N == 0) {
            const MappedParams pc = map_parameters(material, FieldPoint{B}, soc);
            const fock::SpectrumExact conv =
                fock::converge_truncation(pc, 16, opts.oracle_tol);
            if (!conv.converged)
                throw numeric_error("qfi_ground: oracle truncation did not converge");
            N = conv.truncation;
        }
        Parity parities[3];
        for (int i = 0; i < 3; ++i) {
            const MappedParams p = map_parameters(material, FieldPoint{points[i]}, soc);
            fock::SpectrumExact spec = fock::exact_spectrum(p, N, 2);
            states[i] = std::move(spec.states[0]);
            parities[i] = states[i].parity;
            if (parities[i] == Parity::Mixed)
                throw branch_crossed_error("qfi_ground: oracle ground state has mixed "
                                           "parity (degenerate crossing) at B = " +
                                           std::to_string(points[i]));
        }
        if (parities[0] != parities[1] || parities[2] != parities[1])
            throw branch_crossed_error(
                "qfi_ground: oracle ground parity changes across the field points; "
                "shrink the step or accept a one-sided difference");
        branch = parities[1] == Parity::Plus ? BranchLabel::ParityPlus
                                             : BranchLabel::ParityMinus;
    }

    GroundQfi out;
    out.branch = branch;
    out.qfi = opts.method == QfiMethod::FidelitySusceptibility
                  ? qfi_fidelity_susceptibility(states[0], states[1], states[2], step)
                  : qfi_overlap_fd(states[0], states[1], states[2], step);
    return out;
}

} // namespace qwrabi::qfi
