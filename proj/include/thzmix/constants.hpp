#pragma once

// Physical constants in Gaussian/CGS units.
namespace thzmix::constants {

inline constexpr double c_light = 2.99792458e10;     // cm/s
inline constexpr double hbar = 1.054571817e-27;      // erg*s
inline constexpr double kB = 1.380649e-16;           // erg/K
inline constexpr double amu = 1.66053906660e-24;     // g
inline constexpr double pi = 3.14159265358979323846;

// erg/s/cm^2 per W/cm^2
inline constexpr double erg_per_W = 1.0e7;

}  // namespace thzmix::constants
