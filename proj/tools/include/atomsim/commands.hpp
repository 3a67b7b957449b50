#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "atomristor/calib.hpp"
#include "atomristor/config.hpp"
#include "atomristor/negf.hpp"
#include "atomristor/scf.hpp"
#include "atomristor/transport.hpp"

namespace atomsim {

namespace fs = std::filesystem;
using atomristor::RunConfig;

// Environment variable that overrides run.output_dir (but not --out).
inline constexpr const char* kOutputDirEnv = "ATOMSIM_OUTPUT_DIR";

struct Report {
  std::vector<fs::path> files;
  bool converged = true;  // false if any SCF run stopped at max_iter
};

// CSV text for each product. Numbers use 17 significant digits.
std::string iv_csv(const atomristor::IvTable& table);
std::string ratio_csv(const atomristor::RatioTable& table);
std::string transmission_csv(const std::vector<double>& energies,
                             const std::vector<double>& transmission);
std::string ldos_csv(const atomristor::LdosMap& map, const std::vector<double>& positions_nm,
                     const std::vector<double>& potential_ev);
std::string sweep_csv(const atomristor::SweepTable& table);
std::string sweep_fit_csv(const std::vector<atomristor::SweepTable>& tables);
std::string calib_grid_csv(const atomristor::CalibResult& result);
std::string calib_json(const atomristor::CalibResult& result);
std::string scf_profile_csv(const atomristor::ScfResult& result,
                            const std::vector<double>& positions_nm,
                            const std::vector<double>& frozen_ev);
std::string scf_residual_csv(const atomristor::ScfResult& result);

Report run_iv(const RunConfig& config, const fs::path& out);
Report run_transmission(const RunConfig& config, const fs::path& out);
Report run_ldos(const RunConfig& config, const fs::path& out);
Report run_ratio(const RunConfig& config, const fs::path& out);
Report run_sweep(const RunConfig& config, const fs::path& out);
Report run_calibrate(const RunConfig& config, const fs::path& out);
Report run_scf(const RunConfig& config, const fs::path& out);

// Writes plot.py next to the data files; it plots every CSV it is given.
fs::path write_plot_script(const fs::path& out, const std::vector<fs::path>& files);

}  // namespace atomsim
