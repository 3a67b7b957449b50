#include "atomristor/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "atomristor/error.hpp"

namespace atomristor {

std::string format_double(double value) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                 std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

std::string_view to_string(HoppingSource source) {
  return source == HoppingSource::literal ? "literal" : "computed";
}

std::string_view to_string(IvMode mode) {
  switch (mode) {
    case IvMode::hrs: return "hrs";
    case IvMode::lrs: return "lrs";
    case IvMode::hysteresis: return "hysteresis";
  }
  return "?";
}

std::string_view to_string(ScfMode mode) {
  return mode == ScfMode::newton ? "newton" : "damped_fixed_point";
}

std::vector<double> SpectrumSettings::energies() const {
  std::vector<double> out;
  const auto n = static_cast<long>(std::floor((e_max_ev - e_min_ev) / step_ev + 1e-9));
  for (long k = 0; k <= n; ++k) out.push_back(e_min_ev + static_cast<double>(k) * step_ev);
  return out;
}

TransportSettings RunConfig::transport() const {
  TransportSettings t;
  if (hopping_source == HoppingSource::literal) t.hoppings = literal_hoppings;
  if (transverse_mass_ratio > 0.0) t.transverse_mass_ratio = transverse_mass_ratio;
  t.energy_grid = energy;
  t.greens = greens;
  return t;
}

void RunConfig::validate() const {
  try {
    device.validate();
    build_grid(device);
    literal_hoppings.validate();
    energy.validate();
    scf.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::config_range, e.what());
  }
  if (!device.defects.empty() && calib.defect_index >= device.defects.size()) {
    throw Error(ErrorCode::config_range, "calib.defect_index points past the defect list");
  }
  if (!(spectrum.e_max_ev > spectrum.e_min_ev)) {
    throw Error(ErrorCode::config_range, "spectrum.e_max_eV must exceed spectrum.e_min_eV");
  }
}

namespace {

std::vector<DefectSpec> reference_defects() {
  std::vector<DefectSpec> defects(2);
  defects[0].location_nm = 0.05;
  defects[0].depth_ev = 0.10;
  defects[0].width_nm = 0.15;
  defects[0].lrs_shape = LrsShape::coulomb;
  defects[1] = defects[0];
  defects[1].location_nm = 0.30;
  return defects;
}

std::vector<double> span_values(double start, double stop, double step) {
  std::vector<double> out;
  const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
  for (long k = 0; k <= n; ++k) {
    out.push_back(std::round((start + static_cast<double>(k) * step) * 1e12) / 1e12);
  }
  return out;
}

// Thrown by value parsers; the driver adds key and line.
struct BadValue {
  ErrorCode code;
  std::string message;
};

[[noreturn]] void bad_syntax(std::string message) {
  throw BadValue{ErrorCode::config_parse, std::move(message)};
}
[[noreturn]] void bad_range(std::string message) {
  throw BadValue{ErrorCode::config_range, std::move(message)};
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

double to_double(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    bad_syntax("expected a number, got '" + std::string(text) + "'");
  }
  if (!std::isfinite(v)) bad_range("value must be finite");
  return v;
}

long to_integer(std::string_view text) {
  text = trim(text);
  long v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    bad_syntax("expected an integer, got '" + std::string(text) + "'");
  }
  return v;
}

bool to_bool(std::string_view text) {
  const auto t = lower(trim(text));
  if (t == "true" || t == "yes" || t == "on" || t == "1") return true;
  if (t == "false" || t == "no" || t == "off" || t == "0") return false;
  bad_syntax("expected true or false, got '" + std::string(text) + "'");
}

// "a, b, c" or "start:stop:step" (inclusive).
std::vector<double> to_list(std::string_view text) {
  text = trim(text);
  std::vector<double> out;
  if (text.empty()) return out;
  if (text.find(':') != std::string_view::npos) {
    std::vector<double> parts;
    std::size_t pos = 0;
    while (true) {
      const auto next = text.find(':', pos);
      parts.push_back(to_double(text.substr(pos, next - pos)));
      if (next == std::string_view::npos) break;
      pos = next + 1;
    }
    if (parts.size() != 3) bad_syntax("a range needs start:stop:step");
    if (!(parts[2] > 0.0) || parts[1] < parts[0]) bad_range("range needs step > 0 and stop >= start");
    if ((parts[1] - parts[0]) / parts[2] > 1e6) bad_range("range has too many points");
    return span_values(parts[0], parts[1], parts[2]);
  }
  std::size_t pos = 0;
  while (true) {
    const auto next = text.find(',', pos);
    out.push_back(to_double(text.substr(pos, next - pos)));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

template <typename Enum, std::size_t N>
Enum to_enum(std::string_view text, const std::array<Enum, N>& options) {
  const auto t = lower(trim(text));
  for (Enum e : options) {
    if (t == lower(to_string(e))) return e;
  }
  std::string allowed;
  for (Enum e : options) allowed += (allowed.empty() ? "" : "|") + lower(to_string(e));
  bad_syntax("expected one of " + allowed + ", got '" + std::string(text) + "'");
}

constexpr std::array kShapes{LrsShape::deepened, LrsShape::coulomb, LrsShape::widened,
                             LrsShape::unchanged};
constexpr std::array kStates{ResistanceState::hrs, ResistanceState::lrs};
constexpr std::array kDefectStates{DefectState::vacancy, DefectState::metal_substituted};
constexpr std::array kIvModes{IvMode::hrs, IvMode::lrs, IvMode::hysteresis};
constexpr std::array kScfModes{ScfMode::damped_fixed_point, ScfMode::newton};
constexpr std::array kSources{HoppingSource::literal, HoppingSource::computed};

std::string shortest(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

std::string join(const std::vector<double>& values) {
  std::string out;
  for (double v : values) out += (out.empty() ? "" : ", ") + shortest(v);
  return out;
}

template <typename Enum>
std::string join_enums(const std::vector<Enum>& values) {
  std::string out;
  for (Enum v : values) out += (out.empty() ? "" : ", ") + std::string(to_string(v));
  return out;
}

template <typename T>
struct FieldT {
  std::string_view section;
  std::string_view key;
  std::string_view doc;
  std::function<void(T&, std::string_view)> set;
  std::function<std::string(const T&)> get;
};
using Field = FieldT<RunConfig>;
using DefectField = FieldT<DefectSpec>;

template <typename T, typename Acc, typename Check>
FieldT<T> real(std::string_view section, std::string_view key, std::string_view doc, Acc acc,
               Check ok, std::string_view range) {
  return {section, key, doc,
          [acc, ok, range](T& c, std::string_view v) {
            const double x = to_double(v);
            if (!ok(x)) bad_range("must be " + std::string(range));
            acc(c) = x;
          },
          [acc](const T& c) { return shortest(acc(c)); }};
}

template <typename T, typename Acc, typename Check>
FieldT<T> integer(std::string_view section, std::string_view key, std::string_view doc, Acc acc,
                  Check ok, std::string_view range) {
  return {section, key, doc,
          [acc, ok, range](T& c, std::string_view v) {
            const long x = to_integer(v);
            if (!ok(x)) bad_range("must be " + std::string(range));
            using Target = std::remove_reference_t<decltype(acc(c))>;
            acc(c) = static_cast<Target>(x);
          },
          [acc](const T& c) { return std::to_string(acc(c)); }};
}

template <typename T, typename Acc>
FieldT<T> boolean(std::string_view section, std::string_view key, std::string_view doc, Acc acc) {
  return {section, key, doc, [acc](T& c, std::string_view v) { acc(c) = to_bool(v); },
          [acc](const T& c) { return std::string(acc(c) ? "true" : "false"); }};
}

template <typename T, typename Acc, typename Options>
FieldT<T> choice(std::string_view section, std::string_view key, std::string_view doc, Acc acc,
                 const Options& options) {
  return {section, key, doc,
          [acc, options](T& c, std::string_view v) { acc(c) = to_enum(v, options); },
          [acc](const T& c) { return lower(to_string(acc(c))); }};
}

template <typename Acc, typename Check>
Field list(std::string_view section, std::string_view key, std::string_view doc, Acc acc, Check ok,
           std::string_view range) {
  return {section, key, doc,
          [acc, ok, range](RunConfig& c, std::string_view v) {
            auto values = to_list(v);
            for (double x : values) {
              if (!ok(x)) bad_range("every entry must be " + std::string(range));
            }
            acc(c) = std::move(values);
          },
          [acc](const RunConfig& c) { return join(acc(c)); }};
}

const auto positive = [](double x) { return x > 0.0; };
const auto non_negative = [](double x) { return x >= 0.0; };
const auto any_value = [](double) { return true; };

const std::vector<Field>& fields() {
  static const std::vector<Field> table = [] {
    std::vector<Field> f;
    f.push_back(real<RunConfig>("device", "grid_spacing_nm", "lattice spacing a",
                                [](auto& c) -> auto& { return c.device.grid_spacing_nm; },
                                positive, "> 0"));
    f.push_back(real<RunConfig>("device", "temperature_K", "lattice temperature for single-T commands",
                                [](auto& c) -> auto& { return c.device.temperature_k; }, positive,
                                "> 0"));
    f.push_back(real<RunConfig>("device", "fermi_level_eV", "lead Fermi level above the metal band bottom",
                                [](auto& c) -> auto& { return c.device.fermi_level_ev; }, positive,
                                "> 0"));
    f.push_back(real<RunConfig>("device", "permittivity_rel", "insulator relative permittivity (SCF)",
                                [](auto& c) -> auto& { return c.device.permittivity_rel; },
                                positive, "> 0"));
    f.push_back(real<RunConfig>("device", "coulomb_radius_nm",
                                "r0 of the coulomb LRS distortion onset * min(1, r0 / r)",
                                [](auto& c) -> auto& { return c.device.coulomb_radius_nm; },
                                positive, "> 0"));
    f.push_back({"device", "use_default_defects",
                 "keep the built-in defect set when no [defect] section is given",
                 [](RunConfig&, std::string_view) {}, [](const RunConfig&) { return "false"; }});

    f.push_back(real<RunConfig>("metal", "length_nm", "length of each electrode",
                                [](auto& c) -> auto& { return c.device.metal_length_nm; },
                                positive, "> 0"));
    f.push_back(real<RunConfig>("metal", "effective_mass", "electron effective mass / m0",
                                [](auto& c) -> auto& { return c.device.metal.effective_mass_ratio; },
                                positive, "> 0"));
    f.push_back(real<RunConfig>("metal", "onset_eV", "metal band bottom (reference, normally 0)",
                                [](auto& c) -> auto& { return c.device.metal.onset_potential_ev; },
                                any_value, "finite"));
    f.push_back(real<RunConfig>("insulator", "length_nm", "switching layer thickness",
                                [](auto& c) -> auto& { return c.device.insulator_length_nm; },
                                positive, "> 0"));
    f.push_back(real<RunConfig>("insulator", "effective_mass", "tunnelling effective mass / m0",
                                [](auto& c) -> auto& {
                                  return c.device.insulator.effective_mass_ratio;
                                },
                                positive, "> 0"));
    f.push_back(real<RunConfig>("insulator", "onset_eV", "barrier height above the metal band bottom",
                                [](auto& c) -> auto& {
                                  return c.device.insulator.onset_potential_ev;
                                },
                                any_value, "finite"));

    f.push_back(choice<RunConfig>("hopping", "source",
                                  "literal uses the values below, computed uses hbar^2/(2 m* a^2)",
                                  [](auto& c) -> auto& { return c.hopping_source; }, kSources));
    f.push_back(real<RunConfig>("hopping", "metal_eV", "literal t_m",
                                [](auto& c) -> auto& { return c.literal_hoppings.metal_ev; },
                                positive, "> 0"));
    f.push_back(real<RunConfig>("hopping", "insulator_eV", "literal t_i",
                                [](auto& c) -> auto& { return c.literal_hoppings.insulator_ev; },
                                positive, "> 0"));
    f.push_back(real<RunConfig>("hopping", "junction_eV", "literal t_par",
                                [](auto& c) -> auto& { return c.literal_hoppings.junction_ev; },
                                positive, "> 0"));
    f.push_back(real<RunConfig>("hopping", "transverse_mass",
                                "mass / m0 in the current-density supply function, 0 = insulator mass",
                                [](auto& c) -> auto& { return c.transverse_mass_ratio; },
                                non_negative, ">= 0"));

    f.push_back(real<RunConfig>("energy", "base_step_eV", "energy grid step outside the Fermi windows",
                                [](auto& c) -> auto& { return c.energy.base_step_ev; }, positive,
                                "> 0"));
    f.push_back(integer<RunConfig>("energy", "refinement", "step divisor inside mu +- window_kT",
                                   [](auto& c) -> auto& { return c.energy.refinement; },
                                   [](long x) { return x >= 1 && x <= 1000; }, "in [1, 1000]"));
    f.push_back(real<RunConfig>("energy", "window_kT", "half width of the refined Fermi windows",
                                [](auto& c) -> auto& { return c.energy.window_kt; }, non_negative,
                                ">= 0"));
    f.push_back(real<RunConfig>("energy", "upper_kT", "grid top above the higher Fermi level",
                                [](auto& c) -> auto& { return c.energy.upper_kt; }, positive,
                                "> 0"));
    f.push_back(real<RunConfig>("energy", "below_minimum_eV", "grid bottom below the profile minimum",
                                [](auto& c) -> auto& { return c.energy.below_minimum_ev; },
                                non_negative, ">= 0"));
    f.push_back(integer<RunConfig>("energy", "band_edge_points",
                                   "geometric points above each lead band bottom",
                                   [](auto& c) -> auto& { return c.energy.band_edge_points; },
                                   [](long x) { return x >= 0 && x <= 60; }, "in [0, 60]"));
    f.push_back(real<RunConfig>("energy", "eta_eV", "imaginary energy shift",
                                [](auto& c) -> auto& { return c.greens.eta_ev; }, positive, "> 0"));
    f.push_back(real<RunConfig>("energy", "max_eta_eV", "largest shift tried on a singular pivot",
                                [](auto& c) -> auto& { return c.greens.max_eta_ev; }, positive,
                                "> 0"));

    f.push_back(list("run", "biases_V", "bias points for iv and ratio",
                     [](auto& c) -> auto& { return c.run.biases_v; }, any_value, "finite"));
    f.push_back(list("run", "temperatures_K", "one iv table per temperature",
                     [](auto& c) -> auto& { return c.run.temperatures_k; }, positive, "> 0"));
    f.push_back(choice<RunConfig>("run", "iv_mode",
                                  "hrs, lrs, or hysteresis (HRS up to the SET voltage, LRS back)",
                                  [](auto& c) -> auto& { return c.run.iv_mode; }, kIvModes));
    f.push_back(real<RunConfig>("run", "set_voltage_V", "SET voltage of the hysteresis sweep",
                                [](auto& c) -> auto& { return c.run.set_voltage_v; }, any_value,
                                "finite"));
    f.push_back(real<RunConfig>("run", "bias_V", "bias for transmission, ldos and scf",
                                [](auto& c) -> auto& { return c.run.bias_v; }, any_value,
                                "finite"));
    f.push_back(choice<RunConfig>("run", "state", "resistance state for transmission, ldos and scf",
                                  [](auto& c) -> auto& { return c.run.state; }, kStates));
    f.push_back(boolean<RunConfig>("run", "scf", "use self-consistent profiles in iv and ratio",
                                   [](auto& c) -> auto& { return c.run.scf; }));
    f.push_back({"run", "output_dir", "directory for data products",
                 [](RunConfig& c, std::string_view v) {
                   v = trim(v);
                   if (v.empty()) bad_range("must not be empty");
                   c.run.output_dir = std::string(v);
                 },
                 [](const RunConfig& c) { return c.run.output_dir; }});

    f.push_back(real<RunConfig>("spectrum", "e_min_eV", "lowest energy of transmission/ldos",
                                [](auto& c) -> auto& { return c.spectrum.e_min_ev; }, any_value,
                                "finite"));
    f.push_back(real<RunConfig>("spectrum", "e_max_eV", "highest energy of transmission/ldos",
                                [](auto& c) -> auto& { return c.spectrum.e_max_ev; }, any_value,
                                "finite"));
    f.push_back(real<RunConfig>("spectrum", "step_eV", "energy step of transmission/ldos",
                                [](auto& c) -> auto& { return c.spectrum.step_ev; }, positive,
                                "> 0"));

    f.push_back(real<RunConfig>("scf", "damping", "fixed-point mixing factor",
                                [](auto& c) -> auto& { return c.scf.damping; },
                                [](double x) { return x > 0.0 && x <= 1.0; }, "in (0, 1]"));
    f.push_back(real<RunConfig>("scf", "tol_eV", "stop when max |U_new - U| is below this",
                                [](auto& c) -> auto& { return c.scf.tol_ev; }, positive, "> 0"));
    f.push_back(integer<RunConfig>("scf", "max_iter", "iteration limit",
                                   [](auto& c) -> auto& { return c.scf.max_iter; },
                                   [](long x) { return x >= 1 && x <= 1000000; }, ">= 1"));
    f.push_back(choice<RunConfig>("scf", "mode", "damped_fixed_point or newton",
                                  [](auto& c) -> auto& { return c.scf.mode; }, kScfModes));
    f.push_back(real<RunConfig>("scf", "cross_section_nm2",
                                "area turning the 1D density into a volume density",
                                [](auto& c) -> auto& { return c.scf.cross_section_nm2; },
                                positive, "> 0"));
    f.push_back(real<RunConfig>("scf", "newton_step_eV", "finite-difference step of the Jacobian",
                                [](auto& c) -> auto& { return c.scf.newton_step_ev; }, positive,
                                "> 0"));

    f.push_back(real<RunConfig>("calib", "target_ratio", "NVRS ratio to calibrate against",
                                [](auto& c) -> auto& { return c.calib.target_ratio; }, positive,
                                "> 0"));
    f.push_back(real<RunConfig>("calib", "tolerance", "accepted |ratio - target|",
                                [](auto& c) -> auto& { return c.calib.tolerance; }, non_negative,
                                ">= 0"));
    f.push_back(real<RunConfig>("calib", "bias_V", "bias of calibration and sweeps",
                                [](auto& c) -> auto& { return c.calib.bias_v; },
                                [](double x) { return x != 0.0; }, "non-zero"));
    f.push_back(integer<RunConfig>("calib", "defect_index", "defect moved by the sweeps (0-based)",
                                   [](auto& c) -> auto& { return c.calib.defect_index; },
                                   [](long x) { return x >= 0; }, ">= 0"));
    f.push_back(list("calib", "depths_eV", "HRS well depths (calibration grid and depth sweep)",
                     [](auto& c) -> auto& { return c.calib.depths_ev; }, non_negative, ">= 0"));
    f.push_back(list("calib", "locations_nm", "defect locations of the calibration grid",
                     [](auto& c) -> auto& { return c.calib.locations_nm; }, non_negative, ">= 0"));
    f.push_back(list("calib", "sweep_locations_nm", "defect locations of the location sweep",
                     [](auto& c) -> auto& { return c.calib.sweep_locations_nm; }, non_negative,
                     ">= 0"));
    f.push_back({"calib", "shapes", "LRS shapes compared by the distortion study",
                 [](RunConfig& c, std::string_view v) {
                   std::vector<LrsShape> shapes;
                   v = trim(v);
                   std::size_t pos = 0;
                   while (!v.empty()) {
                     const auto next = v.find(',', pos);
                     shapes.push_back(to_enum(v.substr(pos, next - pos), kShapes));
                     if (next == std::string_view::npos) break;
                     pos = next + 1;
                   }
                   c.calib.shapes = std::move(shapes);
                 },
                 [](const RunConfig& c) { return join_enums(c.calib.shapes); }});
    f.push_back(list("calib", "barriers_eV", "optional barrier-height sweep",
                     [](auto& c) -> auto& { return c.calib.barriers_ev; }, any_value, "finite"));
    f.push_back(list("calib", "masses", "optional insulator-mass sweep",
                     [](auto& c) -> auto& { return c.calib.masses; }, positive, "> 0"));
    return f;
  }();
  return table;
}

const std::vector<DefectField>& defect_fields() {
  static const std::vector<DefectField> table = [] {
    std::vector<DefectField> f;
    f.push_back(real<DefectSpec>("defect", "location_nm", "well centre from the left interface",
                                 [](auto& d) -> auto& { return d.location_nm; }, non_negative,
                                 ">= 0"));
    f.push_back(real<DefectSpec>("defect", "depth_eV", "HRS well depth",
                                 [](auto& d) -> auto& { return d.depth_ev; }, non_negative, ">= 0"));
    f.push_back(real<DefectSpec>("defect", "width_nm", "full well width",
                                 [](auto& d) -> auto& { return d.width_nm; }, positive, "> 0"));
    f.push_back(choice<DefectSpec>("defect", "state", "vacancy or metal_substituted",
                                   [](auto& d) -> auto& { return d.state; }, kDefectStates));
    f.push_back(choice<DefectSpec>("defect", "lrs_shape", "deepened, coulomb, widened or unchanged",
                                   [](auto& d) -> auto& { return d.lrs_shape; }, kShapes));
    return f;
  }();
  return table;
}

[[noreturn]] void fail(ErrorCode code, std::string_view source, int line, const std::string& what) {
  throw Error(code, std::string(source) + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

RunConfig default_config() {
  RunConfig c;
  c.device.fermi_level_ev = 0.1;
  c.device.defects = reference_defects();
  c.run.biases_v = span_values(0.0, 1.0, 0.05);
  c.run.temperatures_k = {150.0, 300.0};
  c.calib.depths_ev = {0.0, 0.05, 0.10, 0.15};
  c.calib.locations_nm = span_values(0.0, 0.50, 0.02);
  c.calib.sweep_locations_nm = span_values(0.0, 0.25, 0.05);
  c.calib.shapes = {LrsShape::deepened, LrsShape::coulomb, LrsShape::widened};
  return c;
}

RunConfig parse_config(std::string_view text, std::string_view source_name) {
  RunConfig config = default_config();
  std::vector<DefectSpec> defects;
  bool saw_defect = false;
  bool use_defaults = true;
  std::string section;
  std::set<std::string> seen;
  std::set<std::string> seen_in_defect;

  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') fail(ErrorCode::config_parse, source_name, line_no, "unterminated section header");
      section = lower(trim(line.substr(1, line.size() - 2)));
      const bool known = section == "defect" ||
                         std::any_of(fields().begin(), fields().end(),
                                     [&](const Field& f) { return f.section == section; });
      if (!known) fail(ErrorCode::config_unknown_key, source_name, line_no, "unknown section [" + section + "]");
      if (section == "defect") {
        defects.emplace_back();
        saw_defect = true;
        seen_in_defect.clear();
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      fail(ErrorCode::config_parse, source_name, line_no, "expected key = value");
    }
    std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    std::string sec = section;
    if (const auto dot = key.find('.'); dot != std::string::npos) {
      sec = lower(key.substr(0, dot));
      key = key.substr(dot + 1);
    }
    const std::string full = sec + "." + key;
    if (sec.empty()) {
      fail(ErrorCode::config_parse, source_name, line_no,
           "key '" + key + "' is outside any section (missing [section] header)");
    }

    try {
      if (sec == "defect") {
        if (section != "defect") {
          fail(ErrorCode::config_parse, source_name, line_no,
               "defect keys belong inside a [defect] section");
        }
        const auto it = std::find_if(defect_fields().begin(), defect_fields().end(),
                                     [&](const DefectField& f) { return f.key == key; });
        if (it == defect_fields().end()) {
          fail(ErrorCode::config_unknown_key, source_name, line_no, "unknown key '" + full + "'");
        }
        if (!seen_in_defect.insert(key).second) {
          fail(ErrorCode::config_parse, source_name, line_no, "duplicate key '" + full + "'");
        }
        it->set(defects.back(), value);
        continue;
      }
      const auto it = std::find_if(fields().begin(), fields().end(), [&](const Field& f) {
        return f.section == sec && f.key == key;
      });
      if (it == fields().end()) {
        fail(ErrorCode::config_unknown_key, source_name, line_no, "unknown key '" + full + "'");
      }
      if (!seen.insert(full).second) {
        fail(ErrorCode::config_parse, source_name, line_no, "duplicate key '" + full + "'");
      }
      if (full == "device.use_default_defects") {
        use_defaults = to_bool(value);
      } else {
        it->set(config, value);
      }
    } catch (const BadValue& bad) {
      fail(bad.code, source_name, line_no, "'" + full + "' " + bad.message);
    }
  }

  if (saw_defect || !use_defaults) config.device.defects = std::move(defects);
  try {
    config.validate();
  } catch (const Error& e) {
    throw Error(e.code(), std::string(source_name) + ": " + e.what());
  }
  return config;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot read config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path.string());
}

std::string serialize_config(const RunConfig& config, bool annotate) {
  std::ostringstream out;
  std::string_view section;
  for (const auto& f : fields()) {
    if (f.section != section) {
      if (!section.empty()) out << '\n';
      section = f.section;
      out << '[' << section << "]\n";
    }
    if (annotate) out << "# " << f.doc << '\n';
    out << f.key << " = " << f.get(config) << '\n';
  }
  for (const auto& d : config.device.defects) {
    out << "\n[defect]\n";
    for (const auto& f : defect_fields()) {
      if (annotate) out << "# " << f.doc << '\n';
      out << f.key << " = " << f.get(d) << '\n';
    }
  }
  return out.str();
}

}  // namespace atomristor
