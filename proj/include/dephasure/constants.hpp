// Physical constants (CODATA 2018) and mathematical constants used throughout.
// Everything is SI; angular frequencies are rad/s.

#pragma once

namespace dephasure::constants {

inline constexpr double hbar = 1.054571817e-34;            // J s
inline constexpr double boltzmann = 1.380649e-23;          // J/K
inline constexpr double speed_of_light = 2.99792458e8;     // m/s
inline constexpr double vacuum_permittivity = 8.8541878128e-12;  // F/m

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double euler_gamma = 0.577215664901532860606512090082402431;

}  // namespace dephasure::constants
