#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "atomristor/calib.hpp"
#include "atomristor/device.hpp"
#include "atomristor/hamiltonian.hpp"
#include "atomristor/scf.hpp"
#include "atomristor/transport.hpp"

namespace atomristor {

enum class HoppingSource { literal, computed };

enum class IvMode { hrs, lrs, hysteresis };

struct RunSettings {
  std::vector<double> biases_v;        // iv and ratio sweeps
  std::vector<double> temperatures_k;  // one iv file per temperature
  IvMode iv_mode = IvMode::hrs;
  double set_voltage_v = 1.0;
  double bias_v = 0.0;  // transmission, ldos and scf
  ResistanceState state = ResistanceState::hrs;
  bool scf = false;  // feed iv/ratio/transmission with self-consistent profiles
  std::string output_dir = "out";

  bool operator==(const RunSettings&) const = default;
};

// Energy axis for the transmission and ldos products.
struct SpectrumSettings {
  double e_min_ev = -0.2;
  double e_max_ev = 1.5;
  double step_ev = 0.005;

  std::vector<double> energies() const;
  bool operator==(const SpectrumSettings&) const = default;
};

struct CalibSettings {
  double target_ratio = 3.0;
  double tolerance = 0.3;
  double bias_v = 0.4;
  std::size_t defect_index = 0;
  std::vector<double> depths_ev;     // calibration grid and depth sweep
  std::vector<double> locations_nm;  // calibration grid
  std::vector<double> sweep_locations_nm;
  std::vector<LrsShape> shapes;
  std::vector<double> barriers_ev;  // optional hrs_barrier sweep
  std::vector<double> masses;       // optional insulator_mass sweep

  bool operator==(const CalibSettings&) const = default;
};

struct RunConfig {
  DeviceSpec device;
  HoppingSource hopping_source = HoppingSource::literal;
  HoppingSet literal_hoppings{14.03, 15.43, 14.73};
  double transverse_mass_ratio = 0.0;  // 0 selects the insulator mass
  EnergyGridSpec energy;
  GreensOptions greens;
  ScfSettings scf;
  RunSettings run;
  SpectrumSettings spectrum;
  CalibSettings calib;

  TransportSettings transport() const;
  void validate() const;
  bool operator==(const RunConfig&) const = default;
};

// The two-well reference device with the literal hoppings.
RunConfig default_config();

// Parses the `[section]` / `key = value` format. Unknown keys, bad values
// and keys outside a section throw Error with the line number. A config
// with no [defect] sections keeps the default defect set unless
// `device.use_default_defects = false`.
RunConfig parse_config(std::string_view text, std::string_view source_name = "<config>");
RunConfig load_config(const std::filesystem::path& path);

// Writes every key. With annotate, each key is preceded by a comment line
// describing it. parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& config, bool annotate = false);

// 17 significant digits, the format of every numeric data product.
std::string format_double(double value);

std::string_view to_string(HoppingSource source);
std::string_view to_string(IvMode mode);
std::string_view to_string(ScfMode mode);

}  // namespace atomristor
