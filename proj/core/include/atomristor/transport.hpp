#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "atomristor/device.hpp"
#include "atomristor/fermi.hpp"
#include "atomristor/hamiltonian.hpp"
#include "atomristor/negf.hpp"

namespace atomristor {

struct EnergyGridSpec {
  double base_step_ev = 1e-3;
  int refinement = 4;           // step divisor inside mu +- window_kt kT
  double window_kt = 10.0;
  double upper_kt = 15.0;       // grid ends at max(mu1, mu2) + upper_kt kT
  double below_minimum_ev = 0.2;
  int band_edge_points = 20;    // geometric points above each lead band bottom

  void validate() const;
  bool operator==(const EnergyGridSpec&) const = default;
};

// Sorted energies from min(profile) - below_minimum_ev up to
// max(mu1, mu2) + upper_kt kT. The lead band bottoms get a geometric
// cluster of extra points so 1/sqrt(E) van Hove edges integrate cleanly.
std::vector<double> energy_grid(const PotentialProfile& profile, double mu_left_ev,
                                double mu_right_ev, double temperature_k,
                                const EnergyGridSpec& spec = {});

// Landauer current (2q/h) int T(E) [f1 - f2] dE in A, spin included.
double current_1d(std::span<const double> energies_ev, std::span<const double> transmission,
                  double mu_left_ev, double mu_right_ev, double temperature_k);

// Tsu-Esaki current density in A/cm^2:
//   J = q m* kT / (2 pi^2 hbar^3) int T(E) ln[(1 + e^{(mu1-E)/kT}) / (1 + e^{(mu2-E)/kT})] dE
double current_density(std::span<const double> energies_ev, std::span<const double> transmission,
                       double mu_left_ev, double mu_right_ev, double temperature_k,
                       double transverse_mass_ratio);

struct TransportSettings {
  std::optional<HoppingSet> hoppings;           // derived from the masses when empty
  std::optional<double> transverse_mass_ratio;  // insulator mass when empty
  EnergyGridSpec energy_grid;
  GreensOptions greens;
};

HoppingSet resolve_hoppings(const DeviceSpec& spec, const TransportSettings& settings);

struct BiasPoint {
  double bias_v = 0.0;
  double current_a = 0.0;
  double current_density_a_cm2 = 0.0;
  bool truncated = false;
};

// Current through an explicit profile. The left lead sits at mu, the right
// at mu - bias.
BiasPoint evaluate_profile(const DeviceSpec& spec, const PotentialProfile& profile,
                           double temperature_k, const TransportSettings& settings);

struct IvRow {
  double bias_v = 0.0;
  double current_a = 0.0;
  double current_density_a_cm2 = 0.0;
  ResistanceState state = ResistanceState::hrs;
  double temperature_k = 0.0;
};

struct IvTable {
  std::vector<IvRow> rows;
};

// Supplies the potential profile for a state and bias; defaults to the
// frozen HRS/LRS profiles.
using ProfileSource = std::function<PotentialProfile(ResistanceState, double bias_v)>;

IvTable iv_sweep(const DeviceSpec& spec, ResistanceState state, std::span<const double> biases_v,
                 double temperature_k, const TransportSettings& settings,
                 const ProfileSource& source = {});

// HRS rows for every bias up to set_voltage (ascending), then LRS rows from
// set_voltage back down.
IvTable hysteresis_sweep(const DeviceSpec& spec, std::span<const double> biases_v,
                         double set_voltage_v, double temperature_k,
                         const TransportSettings& settings, const ProfileSource& source = {});

struct NvrsResult {
  double bias_v = 0.0;
  double ratio = 0.0;  // J_LRS / J_HRS = R_off / R_on
  double hrs_current_density_a_cm2 = 0.0;
  double lrs_current_density_a_cm2 = 0.0;
  bool reliable = true;  // false when the HRS current underflows 1e-30 A
};

NvrsResult nvrs_ratio(const DeviceSpec& spec, double bias_v, double temperature_k,
                      const TransportSettings& settings, const ProfileSource& source = {});

struct RatioRow {
  double bias_v = 0.0;
  double ratio = 0.0;
  bool reliable = true;
};

struct RatioTable {
  std::vector<RatioRow> rows;
};

RatioTable ratio_sweep(const DeviceSpec& spec, std::span<const double> biases_v,
                       double temperature_k, const TransportSettings& settings,
                       const ProfileSource& source = {});

}  // namespace atomristor
