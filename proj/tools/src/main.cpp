#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <map>

#include "atomristor/error.hpp"
#include "atomristor/parallel.hpp"
#include "atomsim/commands.hpp"

namespace {

using namespace atomristor;
using atomsim::Report;

struct Options {
  std::string config_path;
  std::string out;
  int threads = 1;
  bool plot_script = false;
  std::optional<double> target;
  std::optional<double> tolerance;
  std::optional<double> bias;
  std::optional<std::string> state;
  std::optional<double> temperature;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("-c,--config", o.config_path, "config file (defaults to the built-in device)")
      ->check(CLI::ExistingFile);
  cmd->add_option("-o,--out", o.out, "output directory (overrides config and $ATOMSIM_OUTPUT_DIR)");
  cmd->add_option("-j,--threads", o.threads, "worker threads, 0 = all cores")
      ->check(CLI::Range(0, 1024));
  cmd->add_flag("--emit-plot-script", o.plot_script, "also write plot.py for the CSV files");
  cmd->add_option("-T,--temperature", o.temperature, "override device.temperature_K");
}

int fail(ErrorCode code, const std::string& message) {
  std::cerr << "error: " << to_string(code) << ": " << message << '\n';
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"atomsim: NEGF transport for metal/2D-material/metal memristors"};
  app.require_subcommand(0, 1);
  bool print_defaults = false;
  app.add_flag("--print-defaults", print_defaults, "print the default config with comments");

  Options o;
  using Runner = Report (*)(const RunConfig&, const atomsim::fs::path&);
  const std::vector<std::tuple<std::string, std::string, Runner>> commands{
      {"iv", "I-V tables, one per temperature", atomsim::run_iv},
      {"transmission", "T(E) at run.bias_V and run.state", atomsim::run_transmission},
      {"ldos", "LDOS map with the potential profile", atomsim::run_ldos},
      {"ratio", "NVRS ratio per bias", atomsim::run_ratio},
      {"sweep", "well depth, location and LRS shape sweeps", atomsim::run_sweep},
      {"calibrate", "grid search for the target NVRS ratio", atomsim::run_calibrate},
      {"scf", "self-consistent profile and residual history", atomsim::run_scf},
  };
  std::map<CLI::App*, Runner> runners;
  for (const auto& [name, help, runner] : commands) {
    auto* cmd = app.add_subcommand(name, help);
    add_common(cmd, o);
    if (name == "calibrate") {
      cmd->add_option("--target", o.target, "target ratio (calib.target_ratio)");
      cmd->add_option("--tolerance", o.tolerance, "accepted |ratio - target| (calib.tolerance)");
      cmd->add_option("--bias", o.bias, "bias in V (calib.bias_V)");
    } else if (name == "sweep") {
      cmd->add_option("--bias", o.bias, "bias in V (calib.bias_V)");
    } else if (name == "transmission" || name == "ldos" || name == "scf") {
      cmd->add_option("--bias", o.bias, "bias in V (run.bias_V)");
      cmd->add_option("--state", o.state, "hrs or lrs (run.state)")
          ->check(CLI::IsMember({"hrs", "lrs"}));
    }
    runners[cmd] = runner;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: E_USAGE: " << e.what() << '\n';
    return 2;
  }

  if (print_defaults) {
    std::cout << serialize_config(default_config(), true);
    return 0;
  }
  if (app.get_subcommands().empty()) {
    std::cerr << app.help();
    return 2;
  }
  CLI::App* cmd = app.get_subcommands().front();

  try {
    RunConfig config = o.config_path.empty() ? default_config() : load_config(o.config_path);
    const std::string name = cmd->get_name();
    if (o.temperature) config.device.temperature_k = *o.temperature;
    if (o.target) config.calib.target_ratio = *o.target;
    if (o.tolerance) config.calib.tolerance = *o.tolerance;
    if (o.bias) {
      (name == "calibrate" || name == "sweep" ? config.calib.bias_v : config.run.bias_v) = *o.bias;
    }
    if (o.state) config.run.state = *o.state == "lrs" ? ResistanceState::lrs : ResistanceState::hrs;
    config.validate();

    std::string out = config.run.output_dir;
    if (const char* env = std::getenv(atomsim::kOutputDirEnv); env && *env) out = env;
    if (!o.out.empty()) out = o.out;

    set_thread_count(static_cast<unsigned>(o.threads));
    Report report = runners.at(cmd)(config, out);
    if (o.plot_script) report.files.push_back(atomsim::write_plot_script(out, report.files));
    for (const auto& f : report.files) std::cout << f.string() << '\n';
    if (!report.converged) {
      return fail(ErrorCode::not_converged, "self-consistent loop hit scf.max_iter; outputs hold the best iterate");
    }
    return 0;
  } catch (const Error& e) {
    return fail(e.code(), e.what());
  } catch (const std::exception& e) {
    return fail(ErrorCode::io, e.what());
  }
}
