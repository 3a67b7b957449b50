#pragma once

#include <cstddef>
#include <vector>

#include "atomristor/device.hpp"

namespace atomristor {

struct HoppingSet {
  double metal_ev = 0.0;
  double insulator_ev = 0.0;
  double junction_ev = 0.0;

  void validate() const;
  bool operator==(const HoppingSet&) const = default;
};

// Semi-infinite lead attached to one end of the device: on-site energy
// 2 t + band_bottom, nearest-neighbour coupling -t.
struct LeadParams {
  double band_bottom_ev = 0.0;
  double hopping_ev = 0.0;
};

// Real symmetric tridiagonal matrix; off_diagonal[i] couples i and i + 1.
struct TridiagonalHamiltonian {
  std::vector<double> diagonal;
  std::vector<double> off_diagonal;
  LeadParams left;
  LeadParams right;

  std::size_t size() const { return diagonal.size(); }
};

// Finite-difference hopping hbar^2 / (2 m* a^2) in eV.
double hopping_from_mass(double mass_ratio, double spacing_nm);

// Metal/insulator interface hopping: arithmetic mean of the two sides.
double junction_hopping(double metal_ev, double insulator_ev);

// Hoppings derived from the spec's effective masses and grid spacing.
HoppingSet computed_hoppings(const DeviceSpec& spec);

// Fills the diagonal with 2 t(i) + U(i) and the off-diagonal with -t per
// bond. With 1-based index i and x metal / y insulator points:
//   on-site  t_m  for i <= x-2 or i >= x+y+2, t_i for x+2 <= i <= x+y-2,
//            t_par otherwise;
//   bond i   t_m  for i <= x-1 or i >= x+y+1, t_i for x+1 <= i <= x+y-1,
//            t_par otherwise.
// Both leads are metal with the profile's end values as band bottoms.
TridiagonalHamiltonian assemble(const Grid& grid, const PotentialProfile& profile,
                                const HoppingSet& hoppings);

}  // namespace atomristor
