// polaron.hpp — Displacement transformation e^S with S = (xi b† - xi* b) sigma_x:
// self-consistent solution of the elimination condition for xi, the transformed
// JC-form parameters, the approximate low-lying spectrum, and the ground states
// |G1>, |G2>.

#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>

#include "qwrabi/parameters.hpp"
#include "qwrabi/state_vector.hpp"

namespace qwrabi::polaron {

using cd = std::complex<double>;

struct XiSolution {
    cd xi{};                 // dimensionless displacement
    double residual = 0.0;   // |condition mismatch| / (Ea + Eb)
    int iterations = 0;
    bool converged = false;
    bool regime_warning = false; // |xi| >= 1: the H_c neglect is not justified
};

struct TransformedParams {
    double eta = 1.0;        // e^(-2|xi|^2)
    double Ea_tilde = 0.0;   // Ea eta - Eb_tilde
    double Eb_tilde = 0.0;   // Re[xi* (lambda1 - lambda2)]
    cd Ec_tilde{};           // i Im[xi* (lambda1 - lambda2)], pure imaginary
    cd g_tilde{};            // (lambda1 + lambda2)/2 - 2 Eb xi
    double E_shift = 0.0;    // Eb|xi|^2 - Re[(lambda1 + lambda2) xi]/2
    double Delta_tilde = 0.0;// (Eb + Eb_tilde - Ea_tilde)/2
};

enum class ApproxBranch { G1, G2, Degenerate };

struct ApproxSpectrum {
    double E0d = 0.0;
    double E1d_plus = 0.0;
    double E1d_minus = 0.0;
    double gap = 0.0;     // E1d_minus - E0d; sign change marks the level crossing
    double theta_d = 0.0; // atan2(|g_tilde|, Delta_tilde)
    double phi = 0.0;     // atan2(Im g_tilde, Re g_tilde)
    ApproxBranch ground_branch = ApproxBranch::G1;
};

// Mismatch of the elimination condition
//   eta^-1 ((l1+l2)/4 - Eb xi) - Ea xi - (l1-l2)/4 + xi Ec_tilde
// as a single complex number (two real equations in Re xi, Im xi).
inline cd condition_mismatch(const MappedParams& p, cd xi) {
    const cd u = p.lambda1 + p.lambda2;
    const cd v = p.lambda1 - p.lambda2;
    const double etainv = std::exp(2.0 * std::norm(xi));
    const cd Ec = cd(0.0, std::imag(std::conj(xi) * v));
    return etainv * (u / 4.0 - p.Eb * xi) - p.Ea * xi - v / 4.0 + xi * Ec;
}

namespace detail {

// Partials of the mismatch with respect to x = Re xi and y = Im xi.
inline void mismatch_jacobian(const MappedParams& p, cd xi, cd& dRdx, cd& dRdy) {
    const cd u = p.lambda1 + p.lambda2;
    const cd v = p.lambda1 - p.lambda2;
    const double x = xi.real(), y = xi.imag();
    const double etainv = std::exp(2.0 * (x * x + y * y));
    const cd P = u / 4.0 - p.Eb * xi;
    const cd Ec = cd(0.0, x * v.imag() - y * v.real());
    const cd i(0.0, 1.0);
    dRdx = 4.0 * x * etainv * P - etainv * p.Eb - p.Ea + Ec + i * xi * v.imag();
    dRdy = 4.0 * y * etainv * P - i * etainv * p.Eb - i * p.Ea + i * Ec - i * xi * v.real();
}

// Fixed-point form of the condition, used when the Newton system degenerates.
inline cd fixed_point_step(const MappedParams& p, cd xi) {
    const cd u = p.lambda1 + p.lambda2;
    const cd v = p.lambda1 - p.lambda2;
    const double etainv = std::exp(2.0 * std::norm(xi));
    const cd Ec = cd(0.0, std::imag(std::conj(xi) * v));
    return (etainv * u / 4.0 - v / 4.0) / (etainv * p.Eb + p.Ea - Ec);
}

} // namespace detail

// Damped Newton on the two-real-variable mismatch, starting from the
// linearized root xi0 = lambda2 / (2(Ea + Eb)). Deterministic; follows the
// root continuously connected to xi0 (the small-|xi| branch). Iteration
// continues past tol toward the roundoff floor so the certified residual
// carries margin; stagnation ends it.
inline XiSolution solve_xi(const MappedParams& p, double tol = 1e-12, int max_iter = 200) {
    if (!(tol > 0.0))
        throw input_error("solve_xi: tol must be positive");
    const double scale = p.Ea + p.Eb;
    const double target = tol * 1e-3;

    XiSolution best;
    cd xi = p.lambda2 / (2.0 * scale);
    double res = std::abs(condition_mismatch(p, xi)) / scale;
    best.xi = xi;
    best.residual = res;

    int it = 0;
    int stalled = 0;
    while (res > target && it < max_iter && stalled < 3) {
        ++it;
        cd dRdx, dRdy;
        detail::mismatch_jacobian(p, xi, dRdx, dRdy);
        const double a = dRdx.real(), b = dRdy.real();
        const double c = dRdx.imag(), d = dRdy.imag();
        const double det = a * d - b * c;
        const cd R = condition_mismatch(p, xi);

        cd step;
        const double det_floor = 1e-14 * (std::abs(a * d) + std::abs(b * c) + scale * scale);
        if (std::abs(det) > det_floor) {
            const double dx = (-R.real() * d + R.imag() * b) / det;
            const double dy = (-a * R.imag() + c * R.real()) / det;
            step = cd(dx, dy);
        } else {
            step = detail::fixed_point_step(p, xi) - xi;
        }

        // backtracking line search on the raw mismatch norm
        double t = 1.0;
        const double base = std::abs(R);
        while (t > 1.0 / 1024.0 &&
               std::abs(condition_mismatch(p, xi + t * step)) >= base)
            t /= 2.0;
        xi += t * step;
        res = std::abs(condition_mismatch(p, xi)) / scale;
        if (res < 0.9 * best.residual) {
            stalled = 0;
        } else {
            ++stalled;
        }
        if (res < best.residual) {
            best.xi = xi;
            best.residual = res;
        }
    }

    XiSolution out = best;
    out.iterations = it;
    out.converged = (out.residual <= tol);
    out.regime_warning = (std::abs(out.xi) >= 1.0);
    return out;
}

inline TransformedParams transformed_params(const MappedParams& p, const XiSolution& sol) {
    if (!sol.converged)
        throw numeric_error("transformed_params: xi solution did not converge "
                            "(residual " + std::to_string(sol.residual) + ")");
    const cd xi = sol.xi;
    const cd v = p.lambda1 - p.lambda2;
    const cd u = p.lambda1 + p.lambda2;
    TransformedParams t;
    t.eta = std::exp(-2.0 * std::norm(xi));
    t.Eb_tilde = std::real(std::conj(xi) * v);
    t.Ea_tilde = p.Ea * t.eta - t.Eb_tilde;
    t.Ec_tilde = cd(0.0, std::imag(std::conj(xi) * v));
    t.g_tilde = u / 2.0 - 2.0 * p.Eb * xi;
    t.E_shift = p.Eb * std::norm(xi) - std::real(u * xi) / 2.0;
    t.Delta_tilde = (p.Eb + t.Eb_tilde - t.Ea_tilde) / 2.0;
    return t;
}

inline ApproxSpectrum approx_spectrum(const MappedParams& p, const TransformedParams& t,
                                      double tie_rel = 1e-12) {
    ApproxSpectrum s;
    const double root = std::hypot(std::abs(t.g_tilde), t.Delta_tilde);
    const double mean = t.E_shift + (p.Eb + t.Eb_tilde) / 2.0;
    s.E0d = -t.Ea_tilde / 2.0 + t.E_shift;
    s.E1d_plus = mean + root;
    s.E1d_minus = mean - root;
    s.gap = s.E1d_minus - s.E0d;
    s.theta_d = std::atan2(std::abs(t.g_tilde), t.Delta_tilde);
    s.phi = std::atan2(t.g_tilde.imag(), t.g_tilde.real());
    const double tie = tie_rel * (p.Ea + p.Eb);
    s.ground_branch = s.gap > tie    ? ApproxBranch::G1
                      : s.gap < -tie ? ApproxBranch::G2
                                     : ApproxBranch::Degenerate;
    return s;
}

// Truncated matrix of the displacement operator D(z) = exp(z b† - z* b) on the
// N-level Fock space. Exponential of an anti-Hermitian matrix: unitary up to
// roundoff.
inline Eigen::MatrixXcd displacement_operator(cd z, Eigen::Index N) {
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(N, N);
    for (Eigen::Index n = 0; n + 1 < N; ++n) {
        const double r = std::sqrt(double(n + 1));
        A(n + 1, n) = z * r;
        A(n, n + 1) = -std::conj(z) * r;
    }
    return A.exp();
}

namespace detail {

inline void require_tail(cd xi, Eigen::Index N, const char* who) {
    if (N < 2)
        throw input_error(std::string(who) + ": truncation must be >= 2");
    const double axi = std::abs(xi);
    if (axi == 0.0) return;
    // coherent tail bound |xi|^N / sqrt(N!) < 1e-12, checked in log space
    const double log_tail = N * std::log(axi) - 0.5 * std::lgamma(double(N) + 1.0);
    if (log_tail >= std::log(1e-12))
        throw input_error(std::string(who) + ": truncation too small for |xi| = " +
                          std::to_string(axi));
}

} // namespace detail

// Smallest power-of-two truncation whose coherent tail passes the |G1>/|G2>
// bound, with margin for the finite-difference neighbors.
inline Eigen::Index truncation_for_xi(cd xi, Eigen::Index minimum = 16) {
    const double axi = 1.5 * std::abs(xi) + 1e-3;
    Eigen::Index N = minimum;
    while (N * std::log(axi) - 0.5 * std::lgamma(double(N) + 1.0) >= std::log(1e-13) &&
           N < 4096)
        N *= 2;
    return N;
}

// |G1> = e^{-S}|0;g> = (|-xi;+> - |xi;->)/sqrt(2), written out in the Fock⊗spin
// basis through the coherent expansion <n|z> = e^{-|z|^2/2} z^n / sqrt(n!).
inline StateVector ground_state_g1(const XiSolution& sol, Eigen::Index truncation) {
    const cd xi = sol.xi;
    detail::require_tail(xi, truncation, "ground_state_g1");
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(2 * truncation);
    const double pref = std::exp(-0.5 * std::norm(xi));
    cd pow_m(pref, 0.0); // e^{-|xi|^2/2} (-xi)^n / sqrt(n!)
    cd pow_p(pref, 0.0); // e^{-|xi|^2/2} (+xi)^n / sqrt(n!)
    for (Eigen::Index n = 0; n < truncation; ++n) {
        if (n > 0) {
            const double r = std::sqrt(double(n));
            pow_m *= -xi / r;
            pow_p *= xi / r;
        }
        amps[basis_index(n, spin_g)] = 0.5 * (pow_m + pow_p);
        amps[basis_index(n, spin_e)] = 0.5 * (pow_m - pow_p);
    }
    return StateVector(std::move(amps), truncation);
}

// |G2> = e^{-S} [cos(theta_d/2)|0;e> - sin(theta_d/2) e^{i phi} |1;g>].
// e^{-S} = D(-xi) P+ + D(xi) P- with P± the sigma_x projectors, so one
// truncated displacement exponential covers both spin sectors.
inline StateVector ground_state_g2(const XiSolution& sol, const ApproxSpectrum& spec,
                                   Eigen::Index truncation) {
    const cd xi = sol.xi;
    detail::require_tail(xi, truncation, "ground_state_g2");
    const Eigen::Index N = truncation;

    Eigen::VectorXcd we = Eigen::VectorXcd::Zero(N);
    Eigen::VectorXcd wg = Eigen::VectorXcd::Zero(N);
    we[0] = cd(std::cos(spec.theta_d / 2.0), 0.0);
    wg[1] = -std::sin(spec.theta_d / 2.0) * std::exp(cd(0.0, spec.phi));

    const Eigen::MatrixXcd D = displacement_operator(xi, N);
    const Eigen::VectorXcd plus = 0.5 * (we + wg);
    const Eigen::VectorXcd minus = 0.5 * (we - wg);
    const Eigen::VectorXcd dp = D.adjoint() * plus; // D(-xi) = D(xi)†
    const Eigen::VectorXcd dm = D * minus;

    Eigen::VectorXcd amps(2 * N);
    for (Eigen::Index n = 0; n < N; ++n) {
        amps[basis_index(n, spin_e)] = dp[n] + dm[n];
        amps[basis_index(n, spin_g)] = dp[n] - dm[n];
    }
    return StateVector(std::move(amps), N);
}

} // namespace qwrabi::polaron
