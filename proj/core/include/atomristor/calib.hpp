#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "atomristor/device.hpp"
#include "atomristor/transport.hpp"

namespace atomristor {

enum class SweepParameter { well_depth, well_location, lrs_shape, hrs_barrier, insulator_mass };

std::string_view to_string(SweepParameter parameter);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 1.0;
};

// Least squares y = slope x + intercept.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

struct SweepRow {
  double value = 0.0;  // shape sweeps store the enum index
  std::string label;   // shape name, empty for numeric sweeps
  double ratio = 0.0;
  bool reliable = true;
};

struct SweepTable {
  SweepParameter parameter = SweepParameter::well_depth;
  double bias_v = 0.0;
  double temperature_k = 0.0;
  std::vector<SweepRow> rows;  // ascending by value
  // Depth and numeric sweeps fit ratio vs value; the location sweep fits
  // ln(ratio) vs value, i.e. an exponential.
  LinearFit fit;
};

// One swept quantity applied to a fixed device. Depth and location target
// the defect at defect_index; hrs_barrier sets the insulator onset and
// insulator_mass its effective mass.
struct SweepSpec {
  SweepParameter parameter = SweepParameter::well_depth;
  std::vector<double> values;
  std::vector<LrsShape> shapes;  // lrs_shape sweeps only
  DeviceSpec fixed;
  double bias_v = 0.4;
  double temperature_k = 300.0;
  std::size_t defect_index = 0;
};

SweepTable run_sweep(const SweepSpec& sweep, const TransportSettings& settings);

SweepTable sweep_well_depth(const DeviceSpec& spec, std::span<const double> depths_ev,
                            double bias_v, double temperature_k,
                            const TransportSettings& settings, std::size_t defect_index = 0);

SweepTable sweep_well_location(const DeviceSpec& spec, std::span<const double> locations_nm,
                               double bias_v, double temperature_k,
                               const TransportSettings& settings, std::size_t defect_index = 0);

SweepTable lrs_distortion_study(const DeviceSpec& spec, std::span<const LrsShape> shapes,
                                double bias_v, double temperature_k,
                                const TransportSettings& settings,
                                std::size_t defect_index = 0);

enum class CalibStatus { success, nearest_only };

std::string_view to_string(CalibStatus status);

struct CalibPoint {
  double depth_ev = 0.0;
  double location_nm = 0.0;
  double ratio = 0.0;
};

struct CalibResult {
  double best_depth_ev = 0.0;
  double best_location_nm = 0.0;
  double achieved_ratio = 0.0;
  double target_ratio = 0.0;
  double tolerance = 0.0;
  double bias_v = 0.0;
  double temperature_k = 0.0;
  CalibStatus status = CalibStatus::nearest_only;
  std::vector<CalibPoint> table;  // depth-major, ascending
};

// Exhaustive search over depth x location for the point whose NVRS ratio
// is closest to target. Ties go to the smaller depth, then the smaller
// location.
CalibResult calibrate_to_ratio(const DeviceSpec& spec, double target_ratio, double tolerance,
                               std::span<const double> depths_ev,
                               std::span<const double> locations_nm, double bias_v,
                               double temperature_k, const TransportSettings& settings,
                               std::size_t defect_index = 0);

}  // namespace atomristor
