#pragma once

#include <numbers>

namespace pairwave::consts {

inline constexpr double c = 299792458.0;          // m/s
inline constexpr double hbar = 1.054571817e-34;   // J s
inline constexpr double eps0 = 8.8541878128e-12;  // F/m
inline constexpr double pi = std::numbers::pi;

}  // namespace pairwave::consts

namespace pairwave {

inline double omega_from_wavelength(double lambda) { return 2.0 * consts::pi * consts::c / lambda; }
inline double wavelength_from_omega(double omega) { return 2.0 * consts::pi * consts::c / omega; }

}  // namespace pairwave
