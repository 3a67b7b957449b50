#include "atomristor/hamiltonian.hpp"

#include <algorithm>
#include <cmath>

#include "atomristor/constants.hpp"
#include "atomristor/error.hpp"

namespace atomristor {

void HoppingSet::validate() const {
  if (!(metal_ev > 0.0 && insulator_ev > 0.0 && junction_ev > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "hopping energies must be > 0");
  }
  const double lo = std::min(metal_ev, insulator_ev);
  const double hi = std::max(metal_ev, insulator_ev);
  if (junction_ev < lo || junction_ev > hi) {
    throw Error(ErrorCode::invalid_argument,
                "junction hopping must lie between the metal and insulator hoppings");
  }
}

double hopping_from_mass(double mass_ratio, double spacing_nm) {
  if (!(mass_ratio > 0.0) || !(spacing_nm > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "mass ratio and spacing must be > 0");
  }
  return constants::hbar2_over_2m0_ev_nm2 / (mass_ratio * spacing_nm * spacing_nm);
}

double junction_hopping(double metal_ev, double insulator_ev) {
  return 0.5 * (metal_ev + insulator_ev);
}

HoppingSet computed_hoppings(const DeviceSpec& spec) {
  HoppingSet h;
  h.metal_ev = hopping_from_mass(spec.metal.effective_mass_ratio, spec.grid_spacing_nm);
  h.insulator_ev = hopping_from_mass(spec.insulator.effective_mass_ratio, spec.grid_spacing_nm);
  h.junction_ev = junction_hopping(h.metal_ev, h.insulator_ev);
  return h;
}

TridiagonalHamiltonian assemble(const Grid& grid, const PotentialProfile& profile,
                                const HoppingSet& hoppings) {
  hoppings.validate();
  const int x = grid.metal_points;
  const int y = grid.insulator_points;
  const int n = static_cast<int>(grid.size());
  if (n < 5) throw Error(ErrorCode::device_too_small, "device needs at least 5 grid points");
  if (profile.values_ev.size() != grid.size()) {
    throw Error(ErrorCode::invalid_argument, "profile length does not match the grid");
  }

  TridiagonalHamiltonian h;
  h.diagonal.resize(static_cast<std::size_t>(n));
  h.off_diagonal.resize(static_cast<std::size_t>(n - 1));

  for (int i = 1; i <= n; ++i) {
    double t = hoppings.junction_ev;
    if (i <= x - 2 || i >= x + y + 2) {
      t = hoppings.metal_ev;
    } else if (i >= x + 2 && i <= x + y - 2) {
      t = hoppings.insulator_ev;
    }
    const auto idx = static_cast<std::size_t>(i - 1);
    h.diagonal[idx] = 2.0 * t + profile.values_ev[idx];
  }
  for (int i = 1; i < n; ++i) {
    double t = hoppings.junction_ev;
    if (i <= x - 1 || i >= x + y + 1) {
      t = hoppings.metal_ev;
    } else if (i >= x + 1 && i <= x + y - 1) {
      t = hoppings.insulator_ev;
    }
    h.off_diagonal[static_cast<std::size_t>(i - 1)] = -t;
  }

  h.left = {profile.values_ev.front(), hoppings.metal_ev};
  h.right = {profile.values_ev.back(), hoppings.metal_ev};
  return h;
}

}  // namespace atomristor
