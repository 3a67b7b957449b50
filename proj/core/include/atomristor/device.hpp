#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace atomristor {

struct MaterialParams {
  double effective_mass_ratio = 1.0;  // m*/m0
  double onset_potential_ev = 0.0;    // band edge above the metal band bottom

  bool operator==(const MaterialParams&) const = default;
};

enum class DefectState { vacancy, metal_substituted };

// How a metal-substituted defect distorts the barrier in the low
// resistance state.
//   deepened  - well floor at 0 eV onset over the defect width
//   coulomb   - floor at the defect cell, 1/r tail clipped to the barrier
//   widened   - floor at 0 eV onset over twice the defect width
//   unchanged - keeps the vacancy well (LRS profile equals HRS profile)
enum class LrsShape { deepened, coulomb, widened, unchanged };

struct DefectSpec {
  double location_nm = 0.0;  // well centre, measured from the left interface
  double depth_ev = 0.0;     // vacancy well depth below the local barrier
  double width_nm = 0.10;    // full width of the well
  DefectState state = DefectState::vacancy;
  LrsShape lrs_shape = LrsShape::deepened;

  bool operator==(const DefectSpec&) const = default;
};

struct DeviceSpec {
  MaterialParams metal{1.1, 0.0};
  MaterialParams insulator{1.0, 1.0};
  double metal_length_nm = 1.5;  // per electrode
  double insulator_length_nm = 1.5;
  double grid_spacing_nm = 0.05;
  double temperature_k = 300.0;
  double fermi_level_ev = 0.88;  // above the metal band bottom
  double permittivity_rel = 4.0;
  // Length scale of the coulomb LRS tail: the distortion is
  // onset * min(1, r0 / r), so r0 = 0.0145 nm leaves < 5 % at 0.3 nm.
  double coulomb_radius_nm = 0.0145;
  std::vector<DefectSpec> defects;

  // Throws Error(invalid_argument) when a field is out of range.
  void validate() const;
  bool operator==(const DeviceSpec&) const = default;
};

enum class Region { metal, junction, insulator };

struct Grid {
  int metal_points = 0;      // x, per electrode
  int insulator_points = 0;  // y
  double spacing_nm = 0.0;
  std::vector<double> positions_nm;
  std::vector<Region> regions;

  std::size_t size() const { return positions_nm.size(); }
  // Index of the first insulator point (0-based).
  std::size_t insulator_begin() const { return static_cast<std::size_t>(metal_points); }
  std::size_t insulator_end() const {
    return static_cast<std::size_t>(metal_points + insulator_points);
  }
  double insulator_length_nm() const { return insulator_points * spacing_nm; }
};

enum class ResistanceState { hrs, lrs };

struct PotentialProfile {
  std::vector<double> values_ev;
  double bias_v = 0.0;
  ResistanceState state = ResistanceState::hrs;
};

// Rounds each region to the nearest whole number of grid cells. Junction
// labels follow the Hamiltonian case ranges: three points around each
// metal/insulator interface.
Grid build_grid(const DeviceSpec& spec);

// Insulator band edge with a linear bias ramp and a vacancy well per
// defect. Requires every defect to be a vacancy.
PotentialProfile hrs_profile(const DeviceSpec& spec, double bias_v);

// As hrs_profile, but metal-substituted defects set the local onset to
// 0 eV with the distortion chosen by their lrs_shape. Vacancies keep their
// HRS wells.
PotentialProfile lrs_profile(const DeviceSpec& spec, double bias_v);

// Copy of the spec with every defect switched to the given state.
DeviceSpec with_defect_state(DeviceSpec spec, DefectState state);

// Builds the HRS (all vacancies) or LRS (all substituted) profile of the
// spec's defect set.
PotentialProfile state_profile(const DeviceSpec& spec, ResistanceState state, double bias_v);

std::string_view to_string(Region region);
std::string_view to_string(DefectState state);
std::string_view to_string(LrsShape shape);
std::string_view to_string(ResistanceState state);

}  // namespace atomristor
