#pragma once

// CODATA 2018 values, SI units.
namespace spinorlz::constants {

inline constexpr double pi = 3.141592653589793238462643383279502884;

inline constexpr double hbar = 1.054571817e-34;        // J s
inline constexpr double bohr_magneton = 9.2740100783e-24; // J/T
inline constexpr double bohr_radius = 5.29177210903e-11;  // m
inline constexpr double atomic_mass_unit = 1.66053906660e-27; // kg

inline constexpr double tesla_per_gauss = 1e-4;
inline constexpr double m3_per_cm3 = 1e-6;

} // namespace spinorlz::constants
