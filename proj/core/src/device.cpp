#include "atomristor/device.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "atomristor/error.hpp"

namespace atomristor {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::invalid_argument, what);
}

int cells_for(double length_nm, double spacing_nm, const char* region) {
  const double exact = length_nm / spacing_nm;
  const double rounded = std::round(exact);
  if (!std::isfinite(exact) || rounded < 1.0 ||
      std::abs(rounded - exact) * spacing_nm > 0.5 * spacing_nm * (1.0 + 1e-9)) {
    throw Error(ErrorCode::geometry, std::string(region) + " length " + std::to_string(length_nm) +
                                         " nm does not resolve on a " +
                                         std::to_string(spacing_nm) + " nm grid");
  }
  return static_cast<int>(rounded);
}

// Fraction of the cell [centre - a/2, centre + a/2] covered by [lo, hi].
double cell_overlap(double centre, double spacing, double lo, double hi) {
  const double left = std::max(centre - 0.5 * spacing, lo);
  const double right = std::min(centre + 0.5 * spacing, hi);
  return std::clamp((right - left) / spacing, 0.0, 1.0);
}

// Fraction of the onset removed at an insulator cell by a substituted
// defect.
double lrs_fraction(const DefectSpec& defect, double centre, double spacing,
                    double coulomb_radius) {
  const double half = 0.5 * defect.width_nm;
  switch (defect.lrs_shape) {
    case LrsShape::deepened:
      return cell_overlap(centre, spacing, defect.location_nm - half, defect.location_nm + half);
    case LrsShape::widened:
      return cell_overlap(centre, spacing, defect.location_nm - 2.0 * half,
                          defect.location_nm + 2.0 * half);
    case LrsShape::coulomb: {
      // Floor over the defect width, 1/r tail beyond it.
      const double core =
          cell_overlap(centre, spacing, defect.location_nm - half, defect.location_nm + half);
      const double r = std::abs(centre - defect.location_nm);
      const double tail = r > coulomb_radius ? coulomb_radius / r : 1.0;
      return std::max(core, tail);
    }
    case LrsShape::unchanged:
      break;
  }
  return 0.0;
}

PotentialProfile build_profile(const DeviceSpec& spec, double bias_v, bool apply_substitution) {
  spec.validate();
  const Grid grid = build_grid(spec);
  const double a = grid.spacing_nm;
  const int y = grid.insulator_points;
  const double onset = spec.insulator.onset_potential_ev;

  PotentialProfile profile;
  profile.bias_v = bias_v;
  profile.values_ev.assign(grid.size(), 0.0);
  for (std::size_t i = grid.insulator_end(); i < grid.size(); ++i) profile.values_ev[i] = -bias_v;

  for (int k = 0; k < y; ++k) {
    const double centre = (k + 0.5) * a;  // from the left interface
    const double floor = -bias_v * (k + 0.5) / y;
    const double barrier = onset + floor;
    double value = barrier;
    for (const auto& defect : spec.defects) {
      const bool substituted =
          apply_substitution && defect.state == DefectState::metal_substituted &&
          defect.lrs_shape != LrsShape::unchanged;
      if (substituted) {
        value = std::min(value, barrier - onset * lrs_fraction(defect, centre, a,
                                                               spec.coulomb_radius_nm));
      } else {
        const double half = 0.5 * defect.width_nm;
        const double cover =
            cell_overlap(centre, a, defect.location_nm - half, defect.location_nm + half);
        value = std::min(value, barrier - defect.depth_ev * cover);
      }
    }
    profile.values_ev[grid.insulator_begin() + static_cast<std::size_t>(k)] =
        std::max(value, std::min(floor, barrier));
  }
  return profile;
}

}  // namespace

void DeviceSpec::validate() const {
  require(std::isfinite(grid_spacing_nm) && grid_spacing_nm > 0.0, "grid spacing must be > 0");
  require(metal.effective_mass_ratio > 0.0 && insulator.effective_mass_ratio > 0.0,
          "effective mass ratios must be > 0");
  require(std::isfinite(metal.onset_potential_ev) && std::isfinite(insulator.onset_potential_ev),
          "onset potentials must be finite");
  require(metal_length_nm > 0.0 && insulator_length_nm > 0.0, "region lengths must be > 0");
  require(temperature_k > 0.0, "temperature must be > 0 K");
  require(fermi_level_ev > 0.0, "Fermi level must be above the metal band bottom");
  require(permittivity_rel > 0.0, "relative permittivity must be > 0");
  require(coulomb_radius_nm >= 0.0, "coulomb radius must be >= 0");
  for (const auto& d : defects) {
    require(d.location_nm >= 0.0 && d.location_nm <= insulator_length_nm,
            "defect location must lie inside the insulator");
    require(d.depth_ev >= 0.0, "defect depth must be >= 0");
    require(d.width_nm >= grid_spacing_nm * (1.0 - 1e-12), "defect width must be >= grid spacing");
  }
}

Grid build_grid(const DeviceSpec& spec) {
  spec.validate();
  Grid grid;
  grid.spacing_nm = spec.grid_spacing_nm;
  grid.metal_points = cells_for(spec.metal_length_nm, spec.grid_spacing_nm, "metal");
  grid.insulator_points = cells_for(spec.insulator_length_nm, spec.grid_spacing_nm, "insulator");

  const int x = grid.metal_points;
  const int y = grid.insulator_points;
  const int n = 2 * x + y;
  grid.positions_nm.resize(static_cast<std::size_t>(n));
  grid.regions.resize(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    const auto idx = static_cast<std::size_t>(i - 1);
    grid.positions_nm[idx] = (i - 1) * spec.grid_spacing_nm;
    if (i <= x - 2 || i >= x + y + 2) {
      grid.regions[idx] = Region::metal;
    } else if (i >= x + 2 && i <= x + y - 2) {
      grid.regions[idx] = Region::insulator;
    } else {
      grid.regions[idx] = Region::junction;
    }
  }
  return grid;
}

PotentialProfile hrs_profile(const DeviceSpec& spec, double bias_v) {
  for (const auto& d : spec.defects) {
    if (d.state != DefectState::vacancy) {
      throw Error(ErrorCode::invalid_argument, "HRS profile requires vacancy defects only");
    }
  }
  auto profile = build_profile(spec, bias_v, false);
  profile.state = ResistanceState::hrs;
  return profile;
}

PotentialProfile lrs_profile(const DeviceSpec& spec, double bias_v) {
  auto profile = build_profile(spec, bias_v, true);
  profile.state = ResistanceState::lrs;
  return profile;
}

DeviceSpec with_defect_state(DeviceSpec spec, DefectState state) {
  for (auto& d : spec.defects) d.state = state;
  return spec;
}

PotentialProfile state_profile(const DeviceSpec& spec, ResistanceState state, double bias_v) {
  if (state == ResistanceState::hrs) {
    return hrs_profile(with_defect_state(spec, DefectState::vacancy), bias_v);
  }
  return lrs_profile(with_defect_state(spec, DefectState::metal_substituted), bias_v);
}

std::string_view to_string(Region region) {
  switch (region) {
    case Region::metal: return "metal";
    case Region::junction: return "junction";
    case Region::insulator: return "insulator";
  }
  return "?";
}

std::string_view to_string(DefectState state) {
  return state == DefectState::vacancy ? "vacancy" : "metal_substituted";
}

std::string_view to_string(LrsShape shape) {
  switch (shape) {
    case LrsShape::deepened: return "deepened";
    case LrsShape::coulomb: return "coulomb";
    case LrsShape::widened: return "widened";
    case LrsShape::unchanged: return "unchanged";
  }
  return "?";
}

std::string_view to_string(ResistanceState state) {
  return state == ResistanceState::hrs ? "HRS" : "LRS";
}

}  // namespace atomristor
