#pragma once

// Physical constants (CODATA 2018, SI) and the derived values the
// simulator works with. Energies are in eV and lengths in nm everywhere
// else in the library.

namespace atomristor::constants {

inline constexpr double pi = 3.14159265358979323846;

inline constexpr double hbar = 1.054571817e-34;            // J s
inline constexpr double planck = 6.62607015e-34;           // J s
inline constexpr double electron_mass = 9.1093837015e-31;  // kg
inline constexpr double elementary_charge = 1.602176634e-19;  // C
inline constexpr double boltzmann = 1.380649e-23;          // J/K
inline constexpr double vacuum_permittivity = 8.8541878128e-12;  // F/m

inline constexpr double boltzmann_ev = boltzmann / elementary_charge;  // eV/K

// hbar^2 / (2 m0) in eV nm^2 (~0.0381)
inline constexpr double hbar2_over_2m0_ev_nm2 =
    hbar * hbar / (2.0 * electron_mass) / elementary_charge * 1e18;

// q / eps0 in V nm: turns an areal charge count (1/nm^2) into a field.
inline constexpr double charge_over_eps0_v_nm =
    elementary_charge / vacuum_permittivity * 1e9;

}  // namespace atomristor::constants
