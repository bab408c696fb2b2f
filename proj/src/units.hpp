#pragma once

#include <cmath>

// Unit conventions used throughout the library:
//   - natural units, hbar = 1: every frequency-like quantity (Rabi frequency,
//     detuning, noise amplitude, energy) is an angular frequency in rad/s
//   - user-facing configs take ordinary frequencies in kHz and are converted
//     with the 2*pi factor exactly once, at parse time
//   - times in seconds internally, milliseconds at the config surface

namespace xsim {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// ordinary frequency -> angular frequency
inline constexpr double from_hz(double f) { return kTwoPi * f; }
inline constexpr double from_khz(double f) { return kTwoPi * 1.0e3 * f; }
inline constexpr double from_mhz(double f) { return kTwoPi * 1.0e6 * f; }

inline constexpr double ms_to_s(double t) { return 1.0e-3 * t; }
inline constexpr double rad_per_ms_to_rad_per_s(double r) { return 1.0e3 * r; }
inline constexpr double gauss_to_tesla(double b) { return 1.0e-4 * b; }

// CODATA physical constants (SI)
inline constexpr double kHbar = 1.054571817e-34;          // J s
inline constexpr double kBohrMagneton = 9.2740100783e-24; // J/T
inline constexpr double kAtomicMassUnit = 1.66053906660e-27; // kg

// energy response of the |+-1> levels to magnetic field, as angular frequency
inline constexpr double kBohrResponse = kBohrMagneton / kHbar; // rad/(s T)

inline constexpr double kYb171Mass = 170.9363302 * kAtomicMassUnit; // kg

} // namespace xsim
