// fock.hpp — Brute-force oracle: the mapped Hamiltonian in a truncated
// Fock ⊗ spin basis, dense Hermitian diagonalization, parity labels, and
// truncation convergence by doubling.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "qwrabi/parameters.hpp"
#include "qwrabi/state_vector.hpp"

namespace qwrabi::fock {

using cd = std::complex<double>;

inline constexpr Eigen::Index max_truncation = 4096;

// H = Eb b†b + (Ea/2) sigma_z + [(lambda1/2) b† sigma_- + (lambda2/2) b sigma_- + h.c.]
// in the basis index(n, s) = 2n + s. Lower triangle is filled and mirrored, so
// Hermiticity is exact by construction.
inline Eigen::MatrixXcd build_hamiltonian(const MappedParams& p, Eigen::Index N) {
    if (N < 2)
        throw input_error("build_hamiltonian: truncation must be >= 2");
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(2 * N, 2 * N);
    for (Eigen::Index n = 0; n < N; ++n) {
        H(basis_index(n, spin_g), basis_index(n, spin_g)) = p.Eb * double(n) - p.Ea / 2.0;
        H(basis_index(n, spin_e), basis_index(n, spin_e)) = p.Eb * double(n) + p.Ea / 2.0;
    }
    for (Eigen::Index n = 0; n + 1 < N; ++n) {
        // <n+1;g|H|n;e> = (lambda1/2) sqrt(n+1)   (rotating)
        const cd el = p.lambda1 / 2.0 * std::sqrt(double(n + 1));
        H(basis_index(n + 1, spin_g), basis_index(n, spin_e)) = el;
        H(basis_index(n, spin_e), basis_index(n + 1, spin_g)) = std::conj(el);
    }
    for (Eigen::Index n = 1; n < N; ++n) {
        // <n-1;g|H|n;e> = (lambda2/2) sqrt(n)   (anti-rotating)
        const cd el = p.lambda2 / 2.0 * std::sqrt(double(n));
        H(basis_index(n, spin_e), basis_index(n - 1, spin_g)) = std::conj(el);
        H(basis_index(n - 1, spin_g), basis_index(n, spin_e)) = el;
    }
    return H;
}

struct SpectrumExact {
    std::vector<double> energies;    // ascending, lowest k
    std::vector<StateVector> states; // matching eigenvectors
    Eigen::Index truncation = 0;
    bool converged = false;          // set by converge_truncation only
};

namespace detail {

// Rotate a (near-)degenerate group of eigenvectors into parity eigenstates and
// order the group with parity +1 first.
inline void parity_resolve(Eigen::MatrixXcd& vectors, Eigen::Index lo, Eigen::Index hi) {
    const Eigen::Index m = hi - lo;
    if (m < 2) return;
    Eigen::MatrixXcd block = vectors.middleCols(lo, m);
    Eigen::MatrixXcd G(m, m);
    for (Eigen::Index a = 0; a < m; ++a)
        for (Eigen::Index b = 0; b < m; ++b) {
            cd acc = 0.0;
            for (Eigen::Index i = 0; i < block.rows(); ++i)
                acc += std::conj(block(i, a)) * parity_sign(i) * block(i, b);
            G(a, b) = acc;
        }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G);
    if (es.info() != Eigen::Success) return; // leave the group as returned
    // eigenvalues ascend; reverse so parity +1 comes first
    Eigen::MatrixXcd rotated = block * es.eigenvectors();
    for (Eigen::Index a = 0; a < m; ++a)
        vectors.col(lo + a) = rotated.col(m - 1 - a);
}

} // namespace detail

// k lowest eigenpairs of the truncated Hamiltonian. Ordering is ascending in
// energy; members of a degenerate group are rotated into parity eigenstates
// and listed with parity +1 first.
inline SpectrumExact exact_spectrum(const MappedParams& p, Eigen::Index N, Eigen::Index k) {
    if (N < 2)
        throw input_error("exact_spectrum: truncation must be >= 2");
    if (k < 1 || k > 2 * N)
        throw input_error("exact_spectrum: k must be in [1, 2N]");

    const Eigen::MatrixXcd H = build_hamiltonian(p, N);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(H);
    if (solver.info() != Eigen::Success)
        throw numeric_error("exact_spectrum: eigensolver failed at N = " + std::to_string(N));

    Eigen::VectorXd evals = solver.eigenvalues();
    Eigen::MatrixXcd evecs = solver.eigenvectors();

    const double deg_tol = 1e-11 * std::max(std::abs(evals[0]), std::abs(evals[2 * N - 1]));
    // close the last group past k so a straddling degenerate pair is rotated whole
    Eigen::Index kext = k;
    while (kext < 2 * N && evals[kext] - evals[kext - 1] <= deg_tol) ++kext;
    for (Eigen::Index lo = 0; lo < kext;) {
        Eigen::Index hi = lo + 1;
        while (hi < kext && evals[hi] - evals[hi - 1] <= deg_tol) ++hi;
        detail::parity_resolve(evecs, lo, hi);
        lo = hi;
    }

    SpectrumExact out;
    out.truncation = N;
    out.energies.reserve(k);
    out.states.reserve(k);
    for (Eigen::Index i = 0; i < k; ++i) {
        out.energies.push_back(evals[i]);
        out.states.emplace_back(evecs.col(i), N);
    }
    return out;
}

// Double N until the lowest two energies each move by less than tol (rad/s)
// between successive truncations; gives up above max_truncation.
inline SpectrumExact converge_truncation(const MappedParams& p, Eigen::Index N0,
                                         double tol, Eigen::Index k = 6) {
    if (N0 < 2)
        throw input_error("converge_truncation: initial truncation must be >= 2");
    if (!(tol > 0.0))
        throw input_error("converge_truncation: tol must be positive");

    Eigen::Index N = N0;
    SpectrumExact prev = exact_spectrum(p, N, std::min<Eigen::Index>(k, 2 * N));
    while (2 * N <= max_truncation) {
        N *= 2;
        SpectrumExact next = exact_spectrum(p, N, std::min<Eigen::Index>(k, 2 * N));
        const double d0 = std::abs(next.energies[0] - prev.energies[0]);
        const double d1 = next.energies.size() > 1 && prev.energies.size() > 1
                              ? std::abs(next.energies[1] - prev.energies[1])
                              : 0.0;
        if (d0 < tol && d1 < tol) {
            next.converged = true;
            return next;
        }
        prev = std::move(next);
    }
    prev.converged = false;
    return prev;
}

// Signed crossing observable: E(lowest even-parity) - E(lowest odd-parity).
// Positive below the ground-state crossing (odd |0;g>-like ground), negative
// above it; the sign change is the true crossing between parity sectors.
inline double signed_parity_gap(const SpectrumExact& spectrum) {
    double e_plus = 0.0, e_minus = 0.0;
    bool have_plus = false, have_minus = false;
    for (std::size_t i = 0; i < spectrum.states.size(); ++i) {
        const Parity par = spectrum.states[i].parity;
        if (par == Parity::Plus && !have_plus) {
            e_plus = spectrum.energies[i];
            have_plus = true;
        } else if (par == Parity::Minus && !have_minus) {
            e_minus = spectrum.energies[i];
            have_minus = true;
        }
        if (have_plus && have_minus) break;
    }
    if (!have_plus || !have_minus)
        throw numeric_error("signed_parity_gap: spectrum window lacks one parity sector; "
                            "increase k");
    return e_plus - e_minus;
}

} // namespace qwrabi::fock
