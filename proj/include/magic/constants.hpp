// constants.hpp — Physical constants and unit conventions shared by all modules.
//
// All internal frequencies are angular (rad/s); user-facing reports divide by
// 2*pi. Constants are CODATA-2018 recommended values, fixed for the process
// lifetime.

#pragma once

namespace magic::constants {

inline constexpr double hbar = 1.054571817e-34;               // J s
inline constexpr double elementary_charge = 1.602176634e-19;  // C
inline constexpr double vacuum_permittivity = 8.8541878128e-12;  // F/m
inline constexpr double bohr_magneton = 9.2740100783e-24;     // J/T
inline constexpr double atomic_mass_unit = 1.66053906660e-27; // kg
inline constexpr double electron_mass = 9.1093837015e-31;     // kg

inline constexpr double two_pi = 6.28318530717958647692528676655900577;

// Singly charged Yb-171: neutral atomic mass (170.936323 u) minus one electron.
inline constexpr double yb171_ion_mass =
    170.936323 * atomic_mass_unit - electron_mass;

}  // namespace magic::constants
