#pragma once

namespace atomristor {

// Thermal energy k_B T in eV.
double thermal_energy_ev(double temperature_k);

// Fermi-Dirac occupation 1 / (1 + exp((E - mu) / kT)). Evaluated from the
// non-positive exponent side so it never overflows, and so that
// fermi(mu + d) + fermi(mu - d) == 1 exactly.
double fermi(double energy_ev, double mu_ev, double temperature_k);

}  // namespace atomristor
