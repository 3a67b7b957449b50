#include "atomsim/commands.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "atomristor/error.hpp"

namespace atomsim {

using namespace atomristor;

namespace {

std::string num(double v) { return format_double(v); }

// Short label for file names: "300", "0.4".
std::string tag(double v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

std::string state_tag(ResistanceState state) {
  return state == ResistanceState::hrs ? "hrs" : "lrs";
}

fs::path write_text(const fs::path& dir, const std::string& name, const std::string& text) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::io, "cannot create " + dir.string() + ": " + ec.message());
  const fs::path path = dir / name;
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Error(ErrorCode::io, "cannot write " + path.string());
  return path;
}

// Frozen profiles, or self-consistent ones when run.scf is set.
class Profiles {
 public:
  Profiles(const RunConfig& config, const DeviceSpec& device)
      : config_(config), device_(device), transport_(config.transport()) {}

  ProfileSource source() {
    if (!config_.run.scf) return {};
    return [this](ResistanceState state, double bias) { return get(state, bias); };
  }

  PotentialProfile get(ResistanceState state, double bias) {
    if (!config_.run.scf) return state_profile(device_, state, bias);
    const auto r = scf_loop(device_, state, bias, config_.scf, transport_);
    converged_ = converged_ && r.converged;
    return r.profile;
  }

  bool converged() const { return converged_; }

 private:
  const RunConfig& config_;
  const DeviceSpec& device_;
  TransportSettings transport_;
  bool converged_ = true;
};

std::vector<double> nonzero(const std::vector<double>& biases) {
  std::vector<double> out;
  for (double v : biases) {
    if (v != 0.0) out.push_back(v);
  }
  return out;
}

}  // namespace

std::string iv_csv(const IvTable& table) {
  std::string s = "bias_V,current_A,current_density_A_cm2,state,temperature_K\n";
  for (const auto& r : table.rows) {
    s += num(r.bias_v) + ',' + num(r.current_a) + ',' + num(r.current_density_a_cm2) + ',' +
         std::string(to_string(r.state)) + ',' + num(r.temperature_k) + '\n';
  }
  return s;
}

std::string ratio_csv(const RatioTable& table) {
  std::string s = "bias_V,ratio,reliable\n";
  for (const auto& r : table.rows) {
    s += num(r.bias_v) + ',' + num(r.ratio) + ',' + (r.reliable ? "true" : "false") + '\n';
  }
  return s;
}

std::string transmission_csv(const std::vector<double>& energies,
                             const std::vector<double>& transmission) {
  std::string s = "energy_eV,transmission\n";
  for (std::size_t k = 0; k < energies.size(); ++k) {
    s += num(energies[k]) + ',' + num(transmission[k]) + '\n';
  }
  return s;
}

std::string ldos_csv(const LdosMap& map, const std::vector<double>& positions_nm,
                     const std::vector<double>& potential_ev) {
  std::string s = "position_nm";
  for (double e : map.energies_ev) s += ",E_" + num(e);
  s += ",potential_eV\n";
  for (std::size_t i = 0; i < map.sites; ++i) {
    s += num(positions_nm[i]);
    for (std::size_t k = 0; k < map.energies_ev.size(); ++k) s += ',' + num(map.at(i, k));
    s += ',' + num(potential_ev[i]) + '\n';
  }
  return s;
}

std::string sweep_csv(const SweepTable& table) {
  std::string s = std::string(to_string(table.parameter)) + ",ratio,reliable,bias_V,temperature_K\n";
  for (const auto& r : table.rows) {
    s += (r.label.empty() ? num(r.value) : r.label) + ',' + num(r.ratio) + ',' +
         (r.reliable ? "true" : "false") + ',' + num(table.bias_v) + ',' +
         num(table.temperature_k) + '\n';
  }
  return s;
}

std::string sweep_fit_csv(const std::vector<SweepTable>& tables) {
  std::string s = "parameter,model,slope,intercept,r_squared\n";
  for (const auto& t : tables) {
    if (t.parameter == SweepParameter::lrs_shape) continue;
    const char* model = t.parameter == SweepParameter::well_location ? "log_ratio" : "ratio";
    s += std::string(to_string(t.parameter)) + ',' + model + ',' + num(t.fit.slope) + ',' +
         num(t.fit.intercept) + ',' + num(t.fit.r_squared) + '\n';
  }
  return s;
}

std::string calib_grid_csv(const CalibResult& result) {
  std::string s = "well_depth_eV,well_location_nm,ratio,bias_V,temperature_K\n";
  for (const auto& p : result.table) {
    s += num(p.depth_ev) + ',' + num(p.location_nm) + ',' + num(p.ratio) + ',' +
         num(result.bias_v) + ',' + num(result.temperature_k) + '\n';
  }
  return s;
}

std::string calib_json(const CalibResult& result) {
  nlohmann::ordered_json j;
  j["status"] = std::string(to_string(result.status));
  j["target_ratio"] = result.target_ratio;
  j["tolerance"] = result.tolerance;
  j["bias_V"] = result.bias_v;
  j["temperature_K"] = result.temperature_k;
  j["best"] = {{"well_depth_eV", result.best_depth_ev},
               {"well_location_nm", result.best_location_nm}};
  j["achieved_ratio"] = result.achieved_ratio;
  auto& table = j["table"] = nlohmann::ordered_json::array();
  for (const auto& p : result.table) {
    table.push_back({{"well_depth_eV", p.depth_ev},
                     {"well_location_nm", p.location_nm},
                     {"ratio", p.ratio}});
  }
  return j.dump(2) + '\n';
}

std::string scf_profile_csv(const ScfResult& result, const std::vector<double>& positions_nm,
                            const std::vector<double>& frozen_ev) {
  std::string s = "position_nm,potential_eV,frozen_potential_eV,density_per_nm\n";
  for (std::size_t i = 0; i < positions_nm.size(); ++i) {
    const double n = i < result.density_per_nm.size() ? result.density_per_nm[i] : 0.0;
    s += num(positions_nm[i]) + ',' + num(result.profile.values_ev[i]) + ',' + num(frozen_ev[i]) +
         ',' + num(n) + '\n';
  }
  return s;
}

std::string scf_residual_csv(const ScfResult& result) {
  std::string s = "iteration,residual_eV\n";
  for (std::size_t k = 0; k < result.residual_history.size(); ++k) {
    s += std::to_string(k + 1) + ',' + num(result.residual_history[k]) + '\n';
  }
  return s;
}

Report run_iv(const RunConfig& config, const fs::path& out) {
  Report report;
  const auto transport = config.transport();
  for (double t : config.run.temperatures_k) {
    DeviceSpec device = config.device;
    device.temperature_k = t;
    Profiles profiles(config, device);
    IvTable table;
    switch (config.run.iv_mode) {
      case IvMode::hrs:
        table = iv_sweep(device, ResistanceState::hrs, config.run.biases_v, t, transport,
                         profiles.source());
        break;
      case IvMode::lrs:
        table = iv_sweep(device, ResistanceState::lrs, config.run.biases_v, t, transport,
                         profiles.source());
        break;
      case IvMode::hysteresis:
        table = hysteresis_sweep(device, config.run.biases_v, config.run.set_voltage_v, t,
                                 transport, profiles.source());
        break;
    }
    report.converged = report.converged && profiles.converged();
    const std::string name =
        "iv_" + std::string(to_string(config.run.iv_mode)) + "_" + tag(t) + "K.csv";
    report.files.push_back(write_text(out, name, iv_csv(table)));
  }
  return report;
}

Report run_transmission(const RunConfig& config, const fs::path& out) {
  Profiles profiles(config, config.device);
  const auto profile = profiles.get(config.run.state, config.run.bias_v);
  const auto h = assemble(build_grid(config.device), profile,
                          resolve_hoppings(config.device, config.transport()));
  const auto energies = config.spectrum.energies();
  const auto t = transmission_spectrum(h, energies, config.greens);
  Report report;
  report.converged = profiles.converged();
  report.files.push_back(write_text(
      out, "transmission_" + state_tag(config.run.state) + "_" + tag(config.run.bias_v) + "V.csv",
      transmission_csv(energies, t)));
  return report;
}

Report run_ldos(const RunConfig& config, const fs::path& out) {
  Profiles profiles(config, config.device);
  const auto grid = build_grid(config.device);
  const auto profile = profiles.get(config.run.state, config.run.bias_v);
  const auto h = assemble(grid, profile, resolve_hoppings(config.device, config.transport()));
  const auto energies = config.spectrum.energies();
  const auto map = ldos_map(h, energies, grid.spacing_nm, config.greens);
  Report report;
  report.converged = profiles.converged();
  report.files.push_back(write_text(
      out, "ldos_" + state_tag(config.run.state) + "_" + tag(config.run.bias_v) + "V.csv",
      ldos_csv(map, grid.positions_nm, profile.values_ev)));
  return report;
}

Report run_ratio(const RunConfig& config, const fs::path& out) {
  Profiles profiles(config, config.device);
  const auto biases = nonzero(config.run.biases_v);
  const auto table = ratio_sweep(config.device, biases, config.device.temperature_k,
                                 config.transport(), profiles.source());
  Report report;
  report.converged = profiles.converged();
  report.files.push_back(
      write_text(out, "ratio_" + tag(config.device.temperature_k) + "K.csv", ratio_csv(table)));
  return report;
}

Report run_sweep(const RunConfig& config, const fs::path& out) {
  const auto transport = config.transport();
  const auto& c = config.calib;
  std::vector<SweepTable> tables;
  auto sweep = [&](SweepParameter parameter, const std::vector<double>& values) {
    SweepSpec spec;
    spec.parameter = parameter;
    spec.values = values;
    spec.shapes = c.shapes;
    spec.fixed = config.device;
    spec.bias_v = c.bias_v;
    spec.temperature_k = config.device.temperature_k;
    spec.defect_index = c.defect_index;
    tables.push_back(run_sweep(spec, transport));
  };
  if (!c.depths_ev.empty()) sweep(SweepParameter::well_depth, c.depths_ev);
  if (!c.sweep_locations_nm.empty()) sweep(SweepParameter::well_location, c.sweep_locations_nm);
  if (!c.shapes.empty()) sweep(SweepParameter::lrs_shape, {});
  if (!c.barriers_ev.empty()) sweep(SweepParameter::hrs_barrier, c.barriers_ev);
  if (!c.masses.empty()) sweep(SweepParameter::insulator_mass, c.masses);
  if (tables.empty()) throw Error(ErrorCode::invalid_argument, "sweep: nothing to sweep in [calib]");

  Report report;
  for (const auto& t : tables) {
    report.files.push_back(write_text(out, "sweep_" + std::string(to_string(t.parameter)) + ".csv",
                                      sweep_csv(t)));
  }
  report.files.push_back(write_text(out, "sweep_fit.csv", sweep_fit_csv(tables)));
  return report;
}

Report run_calibrate(const RunConfig& config, const fs::path& out) {
  const auto& c = config.calib;
  const auto result =
      calibrate_to_ratio(config.device, c.target_ratio, c.tolerance, c.depths_ev, c.locations_nm,
                         c.bias_v, config.device.temperature_k, config.transport(), c.defect_index);
  Report report;
  report.files.push_back(write_text(out, "calibrate.json", calib_json(result)));
  report.files.push_back(write_text(out, "calibrate_grid.csv", calib_grid_csv(result)));
  return report;
}

Report run_scf(const RunConfig& config, const fs::path& out) {
  const auto grid = build_grid(config.device);
  const auto frozen = state_profile(config.device, config.run.state, config.run.bias_v);
  const auto result =
      scf_loop(config.device, config.run.state, config.run.bias_v, config.scf, config.transport());
  const std::string stem =
      "scf_" + state_tag(config.run.state) + "_" + tag(config.run.bias_v) + "V";
  Report report;
  report.converged = result.converged;
  report.files.push_back(write_text(out, stem + "_profile.csv",
                                    scf_profile_csv(result, grid.positions_nm, frozen.values_ev)));
  report.files.push_back(write_text(out, stem + "_residuals.csv", scf_residual_csv(result)));
  return report;
}

fs::path write_plot_script(const fs::path& out, const std::vector<fs::path>& files) {
  std::string s =
      "# Plots the CSV files written by atomsim. Requires pandas and matplotlib.\n"
      "import sys\n"
      "import pandas as pd\n"
      "import matplotlib\n"
      "matplotlib.use('Agg')\n"
      "import matplotlib.pyplot as plt\n\n"
      "FILES = [\n";
  for (const auto& f : files) {
    if (f.extension() == ".csv") s += "    '" + f.filename().string() + "',\n";
  }
  s +=
      "]\n\n"
      "def plot(name):\n"
      "    df = pd.read_csv(name)\n"
      "    fig, ax = plt.subplots()\n"
      "    if name.startswith('ldos_'):\n"
      "        grid = df.drop(columns=['position_nm', 'potential_eV']).to_numpy().T\n"
      "        energies = [float(c[2:]) for c in df.columns[1:-1]]\n"
      "        x = df['position_nm']\n"
      "        ax.pcolormesh(x, energies, grid, shading='auto')\n"
      "        ax.plot(x, df['potential_eV'], color='red')\n"
      "        ax.set_xlabel('position (nm)')\n"
      "        ax.set_ylabel('energy (eV)')\n"
      "    else:\n"
      "        xcol = df.columns[0]\n"
      "        for col in df.columns[1:]:\n"
      "            if pd.api.types.is_numeric_dtype(df[col]) and col not in ('bias_V', 'temperature_K'):\n"
      "                ax.plot(df[xcol], df[col], marker='.', label=col)\n"
      "        ax.set_xlabel(xcol)\n"
      "        ax.legend()\n"
      "    fig.savefig(name.replace('.csv', '.png'), dpi=150)\n"
      "    plt.close(fig)\n\n"
      "if __name__ == '__main__':\n"
      "    for name in sys.argv[1:] or FILES:\n"
      "        plot(name)\n";
  return write_text(out, "plot.py", s);
}

}  // namespace atomsim
