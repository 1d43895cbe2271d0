// state_vector.hpp — Normalized amplitude vectors over the truncated
// Fock ⊗ spin basis, with parity bookkeeping.
//
// Basis ordering is Fock-major, spin-minor: index(n, s) = 2n + s with
// s = 0 for |g> and s = 1 for |e>, n in [0, N). All modules share it.
//
// The parity operator is Pi = sigma_z (-1)^(b†b); every term of the mapped
// Hamiltonian changes n + excitation by 0 or 2, so Pi is an exact symmetry.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstddef>

#include "qwrabi/errors.hpp"

namespace qwrabi {

enum class Parity { Plus, Minus, Mixed };

inline constexpr int spin_g = 0;
inline constexpr int spin_e = 1;

inline Eigen::Index basis_index(Eigen::Index n, int spin) { return 2 * n + spin; }

// Eigenvalue of Pi on the basis state with flat index i.
inline double parity_sign(Eigen::Index i) {
    const Eigen::Index n = i / 2;
    const int spin = static_cast<int>(i % 2);
    const double boson = (n % 2 == 0) ? 1.0 : -1.0;
    return spin == spin_e ? boson : -boson;
}

inline double parity_expectation(const Eigen::VectorXcd& amplitudes) {
    double p = 0.0;
    for (Eigen::Index i = 0; i < amplitudes.size(); ++i)
        p += parity_sign(i) * std::norm(amplitudes[i]);
    return p;
}

inline Parity classify_parity(double expectation, double window = 1e-8) {
    if (expectation > 1.0 - window) return Parity::Plus;
    if (expectation < -1.0 + window) return Parity::Minus;
    return Parity::Mixed;
}

struct StateVector {
    Eigen::VectorXcd amplitudes; // length 2N
    Eigen::Index truncation = 0; // N
    Parity parity = Parity::Mixed;

    StateVector() = default;

    StateVector(Eigen::VectorXcd amps, Eigen::Index N)
        : amplitudes(std::move(amps)), truncation(N) {
        if (amplitudes.size() != 2 * N)
            throw input_error("StateVector: amplitude vector length must be 2N");
        const double nrm = amplitudes.norm();
        if (!(nrm > 0.0))
            throw input_error("StateVector: zero vector");
        amplitudes /= nrm;
        parity = classify_parity(parity_expectation(amplitudes));
    }
};

// <a|b>; both must live in the same truncated basis.
inline std::complex<double> overlap(const StateVector& a, const StateVector& b) {
    if (a.truncation != b.truncation)
        throw input_error("overlap: mismatched truncations");
    return a.amplitudes.dot(b.amplitudes);
}

} // namespace qwrabi
