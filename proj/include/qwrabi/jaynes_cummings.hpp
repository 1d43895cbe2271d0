// jaynes_cummings.hpp — Closed-form spectrum, dressed states, and the
// ground-state crossing condition in the JC limit (lambda2 = 0).

#pragma once

#include <cmath>
#include <complex>

#include "qwrabi/parameters.hpp"
#include "qwrabi/state_vector.hpp"

namespace qwrabi::jc {

struct JcSpectrum {
    double E0 = 0.0;               // -Ea/2, the |0;g> energy
    double E1_plus = 0.0;          // Eb/2 + sqrt(Delta^2 + |lambda1|^2)/2
    double E1_minus = 0.0;         // minus root, always; branch labels follow it
    double theta = 0.0;            // mixing angle, atan2(|lambda1|, Delta) in [0, pi]
    double Delta = 0.0;            // Eb - Ea
    double lambda1_crossing = 0.0; // 2 sqrt(Ea Eb)
};

enum class GroundBranch { Separable, Dressed, Degenerate };
enum class DressedBranch { Plus, Minus };

namespace detail {
inline void require_jc(const MappedParams& p, const char* who) {
    if (p.lambda2 != std::complex<double>(0.0, 0.0))
        throw input_error(std::string(who) +
                          ": lambda2 must be zero in the JC limit (use the polaron"
                          " transform or the Fock oracle instead)");
}
} // namespace detail

inline JcSpectrum jc_spectrum(const MappedParams& p) {
    detail::require_jc(p, "jc_spectrum");
    JcSpectrum s;
    s.Delta = p.Eb - p.Ea;
    const double l1 = std::abs(p.lambda1);
    const double root = std::hypot(s.Delta, l1);
    s.E0 = -p.Ea / 2.0;
    s.E1_plus = p.Eb / 2.0 + root / 2.0;
    s.E1_minus = p.Eb / 2.0 - root / 2.0;
    s.theta = std::atan2(l1, s.Delta);
    s.lambda1_crossing = 2.0 * std::sqrt(p.Ea * p.Eb);
    return s;
}

// Which state is the ground state: |0;g> (Separable) or |1-> (Dressed).
// Exact degeneracy is reported, not tie-broken.
inline GroundBranch jc_ground_branch(const MappedParams& p, double tie_rel = 1e-12) {
    const JcSpectrum s = jc_spectrum(p);
    const double gap = s.E1_minus - s.E0;
    const double tie = tie_rel * (p.Ea + p.Eb);
    if (gap > tie) return GroundBranch::Separable;
    if (gap < -tie) return GroundBranch::Dressed;
    return GroundBranch::Degenerate;
}

// |1-> = cos(theta/2)|0;e> - i sin(theta/2)|1;g>
// |1+> = -cos(theta/2)|1;g> + i sin(theta/2)|0;e>
inline StateVector jc_dressed_state(const MappedParams& p, DressedBranch branch,
                                    Eigen::Index truncation) {
    detail::require_jc(p, "jc_dressed_state");
    if (truncation < 2)
        throw input_error("jc_dressed_state: truncation must be >= 2");
    const JcSpectrum s = jc_spectrum(p);
    const double c = std::cos(s.theta / 2.0);
    const double sn = std::sin(s.theta / 2.0);
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(2 * truncation);
    using cd = std::complex<double>;
    if (branch == DressedBranch::Minus) {
        amps[basis_index(0, spin_e)] = cd(c, 0.0);
        amps[basis_index(1, spin_g)] = cd(0.0, -sn);
    } else {
        amps[basis_index(1, spin_g)] = cd(-c, 0.0);
        amps[basis_index(0, spin_e)] = cd(0.0, sn);
    }
    return StateVector(std::move(amps), truncation);
}

} // namespace qwrabi::jc
