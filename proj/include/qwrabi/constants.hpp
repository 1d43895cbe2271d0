// constants.hpp — Physical constants and reference anchor values

#pragma once

namespace qwrabi::constants {

// CODATA values, pinned so results are bit-reproducible.
inline constexpr double hbar = 1.0545718e-34;                // J s
inline constexpr double elementary_charge = 1.602176634e-19; // C

// AlAs-like reference material (Lande factor, bare electron mass, m/m0).
inline constexpr double reference_g_factor = 1.52;
inline constexpr double reference_electron_mass = 9e-31;     // kg
inline constexpr double reference_mass_ratio = 0.15;

// Anchor values for the "anchored" material mode: the bare energies are fixed
// to these at the reference field and scale linearly in B from there.
inline constexpr double anchor_Ea = 1.35e9;   // rad/s
inline constexpr double anchor_Eb = 1.70e9;   // rad/s
inline constexpr double anchor_B = 0.01;      // T

} // namespace qwrabi::constants
