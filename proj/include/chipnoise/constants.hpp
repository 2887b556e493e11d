#ifndef CHIPNOISE_CONSTANTS_HPP
#define CHIPNOISE_CONSTANTS_HPP

// Physical constants, CODATA 2018, SI units throughout.
// Everything internal to the library is strictly SI; unit conversion
// happens only at the config / CLI boundary (see units.hpp).

namespace chipnoise {
namespace constants {

inline constexpr double mu0      = 1.25663706212e-6;   // vacuum permeability [T m / A]
inline constexpr double kB       = 1.380649e-23;       // Boltzmann constant [J / K]
inline constexpr double hbar     = 1.054571817e-34;    // reduced Planck constant [J s]
inline constexpr double e_charge = 1.602176634e-19;    // elementary charge [C]
inline constexpr double muB      = 9.274010078e-24;    // Bohr magneton [J / T]
inline constexpr double amu      = 1.660539067e-27;    // atomic mass unit [kg]
inline constexpr double m_e      = 9.109383702e-31;    // electron mass [kg]
inline constexpr double g_grav   = 9.80665;            // standard gravity [m / s^2]
inline constexpr double c_light  = 2.99792458e8;       // speed of light [m / s]

inline constexpr double pi     = 3.14159265358979323846;
inline constexpr double two_pi = 6.28318530717958647692;

// Reference values used by the scaling estimates.
inline constexpr double rho_copper = 1.7e-8;   // copper resistivity [Ohm m]

}  // namespace constants
}  // namespace chipnoise

#endif
