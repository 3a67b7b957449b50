#include "atomristor/calib.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "atomristor/error.hpp"

namespace atomristor {

std::string_view to_string(SweepParameter parameter) {
  switch (parameter) {
    case SweepParameter::well_depth: return "well_depth_eV";
    case SweepParameter::well_location: return "well_location_nm";
    case SweepParameter::lrs_shape: return "lrs_shape";
    case SweepParameter::hrs_barrier: return "hrs_barrier_eV";
    case SweepParameter::insulator_mass: return "insulator_mass";
  }
  return "?";
}

std::string_view to_string(CalibStatus status) {
  return status == CalibStatus::success ? "success" : "nearest_only";
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.empty()) {
    throw Error(ErrorCode::invalid_argument, "fit needs matching, non-empty samples");
  }
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LinearFit fit;
  fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = (sxx > 0.0 && syy > 0.0) ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

namespace {

DefectSpec& target_defect(DeviceSpec& spec, std::size_t index) {
  if (index >= spec.defects.size()) {
    throw Error(ErrorCode::invalid_argument, "sweep targets defect " + std::to_string(index) +
                                                 " but the device has " +
                                                 std::to_string(spec.defects.size()));
  }
  return spec.defects[index];
}

DeviceSpec apply(const SweepSpec& sweep, double value) {
  DeviceSpec spec = sweep.fixed;
  switch (sweep.parameter) {
    case SweepParameter::well_depth:
      if (value < 0.0) throw Error(ErrorCode::invalid_argument, "well depth must be >= 0");
      target_defect(spec, sweep.defect_index).depth_ev = value;
      break;
    case SweepParameter::well_location:
      target_defect(spec, sweep.defect_index).location_nm = value;
      break;
    case SweepParameter::hrs_barrier:
      spec.insulator.onset_potential_ev = value;
      break;
    case SweepParameter::insulator_mass:
      spec.insulator.effective_mass_ratio = value;
      break;
    case SweepParameter::lrs_shape:
      target_defect(spec, sweep.defect_index).lrs_shape = static_cast<LrsShape>(value);
      break;
  }
  spec.validate();
  return spec;
}

}  // namespace

SweepTable run_sweep(const SweepSpec& sweep, const TransportSettings& settings) {
  std::vector<double> values = sweep.values;
  if (sweep.parameter == SweepParameter::lrs_shape) {
    values.clear();
    for (auto s : sweep.shapes) values.push_back(static_cast<double>(s));
  }
  if (values.empty()) throw Error(ErrorCode::invalid_argument, "sweep has no values");
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());

  SweepTable table;
  table.parameter = sweep.parameter;
  table.bias_v = sweep.bias_v;
  table.temperature_k = sweep.temperature_k;
  for (double v : values) {
    const auto spec = apply(sweep, v);
    const auto r = nvrs_ratio(spec, sweep.bias_v, sweep.temperature_k, settings);
    SweepRow row{v, {}, r.ratio, r.reliable};
    if (sweep.parameter == SweepParameter::lrs_shape) {
      row.label = std::string(to_string(static_cast<LrsShape>(v)));
    }
    table.rows.push_back(std::move(row));
  }

  std::vector<double> x, y;
  for (const auto& row : table.rows) {
    x.push_back(row.value);
    y.push_back(sweep.parameter == SweepParameter::well_location ? std::log(row.ratio) : row.ratio);
  }
  table.fit = fit_line(x, y);
  return table;
}

SweepTable sweep_well_depth(const DeviceSpec& spec, std::span<const double> depths_ev,
                            double bias_v, double temperature_k,
                            const TransportSettings& settings, std::size_t defect_index) {
  SweepSpec sweep;
  sweep.parameter = SweepParameter::well_depth;
  sweep.values.assign(depths_ev.begin(), depths_ev.end());
  sweep.fixed = spec;
  sweep.bias_v = bias_v;
  sweep.temperature_k = temperature_k;
  sweep.defect_index = defect_index;
  return run_sweep(sweep, settings);
}

SweepTable sweep_well_location(const DeviceSpec& spec, std::span<const double> locations_nm,
                               double bias_v, double temperature_k,
                               const TransportSettings& settings, std::size_t defect_index) {
  SweepSpec sweep;
  sweep.parameter = SweepParameter::well_location;
  sweep.values.assign(locations_nm.begin(), locations_nm.end());
  sweep.fixed = spec;
  sweep.bias_v = bias_v;
  sweep.temperature_k = temperature_k;
  sweep.defect_index = defect_index;
  return run_sweep(sweep, settings);
}

SweepTable lrs_distortion_study(const DeviceSpec& spec, std::span<const LrsShape> shapes,
                                double bias_v, double temperature_k,
                                const TransportSettings& settings, std::size_t defect_index) {
  SweepSpec sweep;
  sweep.parameter = SweepParameter::lrs_shape;
  sweep.shapes.assign(shapes.begin(), shapes.end());
  sweep.fixed = spec;
  sweep.bias_v = bias_v;
  sweep.temperature_k = temperature_k;
  sweep.defect_index = defect_index;
  return run_sweep(sweep, settings);
}

CalibResult calibrate_to_ratio(const DeviceSpec& spec, double target_ratio, double tolerance,
                               std::span<const double> depths_ev,
                               std::span<const double> locations_nm, double bias_v,
                               double temperature_k, const TransportSettings& settings,
                               std::size_t defect_index) {
  if (!(target_ratio > 0.0) || !(tolerance >= 0.0)) {
    throw Error(ErrorCode::invalid_argument, "calibration target must be > 0, tolerance >= 0");
  }
  if (depths_ev.empty() || locations_nm.empty()) {
    throw Error(ErrorCode::invalid_argument, "calibration search space is empty");
  }
  std::vector<double> depths(depths_ev.begin(), depths_ev.end());
  std::vector<double> locations(locations_nm.begin(), locations_nm.end());
  std::sort(depths.begin(), depths.end());
  std::sort(locations.begin(), locations.end());

  CalibResult result;
  result.target_ratio = target_ratio;
  result.tolerance = tolerance;
  result.bias_v = bias_v;
  result.temperature_k = temperature_k;

  double best_gap = std::numeric_limits<double>::infinity();
  for (double depth : depths) {
    for (double location : locations) {
      DeviceSpec trial = spec;
      auto& defect = target_defect(trial, defect_index);
      defect.depth_ev = depth;
      defect.location_nm = location;
      const double ratio = nvrs_ratio(trial, bias_v, temperature_k, settings).ratio;
      result.table.push_back({depth, location, ratio});
      const double gap = std::abs(ratio - target_ratio);
      // Strict comparison keeps the earliest (smallest depth, location) on ties.
      if (gap < best_gap) {
        best_gap = gap;
        result.best_depth_ev = depth;
        result.best_location_nm = location;
        result.achieved_ratio = ratio;
      }
    }
  }
  result.status = best_gap <= tolerance ? CalibStatus::success : CalibStatus::nearest_only;
  return result;
}

}  // namespace atomristor
