#include "atomristor/transport.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "atomristor/constants.hpp"
#include "atomristor/error.hpp"

namespace atomristor {

double thermal_energy_ev(double temperature_k) { return constants::boltzmann_ev * temperature_k; }

double fermi(double energy_ev, double mu_ev, double temperature_k) {
  const double x = (energy_ev - mu_ev) / thermal_energy_ev(temperature_k);
  const double upper = 1.0 / (1.0 + std::exp(-std::abs(x)));  // in [0.5, 1]
  return x <= 0.0 ? upper : 1.0 - upper;
}

namespace {

// ln(1 + e^x) without overflow.
double softplus(double x) { return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x))); }

void check_samples(std::span<const double> energies, std::span<const double> transmission) {
  if (energies.size() != transmission.size()) {
    throw Error(ErrorCode::invalid_argument, "energy and transmission samples differ in length");
  }
}

template <typename Integrand>
double trapezoid(std::span<const double> energies, Integrand&& f) {
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < energies.size(); ++k) {
    sum += 0.5 * (energies[k + 1] - energies[k]) * (f(k) + f(k + 1));
  }
  return sum;
}

}  // namespace

void EnergyGridSpec::validate() const {
  if (!(base_step_ev > 0.0) || refinement < 1 || !(window_kt >= 0.0) || !(upper_kt > 0.0) ||
      !(below_minimum_ev >= 0.0) || band_edge_points < 0) {
    throw Error(ErrorCode::invalid_argument, "invalid energy grid settings");
  }
}

std::vector<double> energy_grid(const PotentialProfile& profile, double mu_left_ev,
                                double mu_right_ev, double temperature_k,
                                const EnergyGridSpec& spec) {
  spec.validate();
  if (profile.values_ev.empty() || !(temperature_k > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "energy grid needs a profile and T > 0");
  }
  const double kt = thermal_energy_ev(temperature_k);
  const double lower =
      *std::min_element(profile.values_ev.begin(), profile.values_ev.end()) - spec.below_minimum_ev;
  const double upper = std::max(mu_left_ev, mu_right_ev) + spec.upper_kt * kt;

  struct Window {
    double lo, hi;
  };
  const Window windows[2] = {{mu_left_ev - spec.window_kt * kt, mu_left_ev + spec.window_kt * kt},
                             {mu_right_ev - spec.window_kt * kt, mu_right_ev + spec.window_kt * kt}};

  std::vector<double> breaks{lower, upper};
  for (const auto& w : windows) {
    if (w.lo > lower && w.lo < upper) breaks.push_back(w.lo);
    if (w.hi > lower && w.hi < upper) breaks.push_back(w.hi);
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  std::vector<double> grid;
  for (std::size_t s = 0; s + 1 < breaks.size(); ++s) {
    const double lo = breaks[s];
    const double hi = breaks[s + 1];
    const double mid = 0.5 * (lo + hi);
    bool fine = false;
    for (const auto& w : windows) fine = fine || (mid > w.lo && mid < w.hi);
    const double step = fine ? spec.base_step_ev / spec.refinement : spec.base_step_ev;
    const auto count = std::max<long>(1, static_cast<long>(std::ceil((hi - lo) / step - 1e-9)));
    for (long j = 0; j < count; ++j) grid.push_back(lo + (hi - lo) * static_cast<double>(j) / count);
  }
  grid.push_back(upper);

  for (double edge : {profile.values_ev.front(), profile.values_ev.back()}) {
    // The edge itself has zero broadening; without it the trapezoid spans
    // from the last point below the edge to the 1/sqrt peak just above.
    if (spec.band_edge_points > 0 && edge > lower && edge < upper) grid.push_back(edge);
    double offset = spec.base_step_ev;
    for (int j = 0; j < spec.band_edge_points; ++j) {
      offset *= 0.5;
      const double e = edge + offset;
      if (e > lower && e < upper) grid.push_back(e);
    }
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end(),
                         [](double a, double b) { return std::abs(a - b) < 1e-13; }),
             grid.end());
  return grid;
}

double current_1d(std::span<const double> energies_ev, std::span<const double> transmission,
                  double mu_left_ev, double mu_right_ev, double temperature_k) {
  check_samples(energies_ev, transmission);
  if (mu_left_ev == mu_right_ev) return 0.0;
  const double integral = trapezoid(energies_ev, [&](std::size_t k) {
    return transmission[k] * (fermi(energies_ev[k], mu_left_ev, temperature_k) -
                              fermi(energies_ev[k], mu_right_ev, temperature_k));
  });
  constexpr double conductance_quantum =
      2.0 * constants::elementary_charge * constants::elementary_charge / constants::planck;
  return conductance_quantum * integral;
}

double current_density(std::span<const double> energies_ev, std::span<const double> transmission,
                       double mu_left_ev, double mu_right_ev, double temperature_k,
                       double transverse_mass_ratio) {
  check_samples(energies_ev, transmission);
  if (mu_left_ev == mu_right_ev) return 0.0;
  const double kt = thermal_energy_ev(temperature_k);
  const double integral = trapezoid(energies_ev, [&](std::size_t k) {
    const double e = energies_ev[k];
    return transmission[k] * kt * (softplus((mu_left_ev - e) / kt) - softplus((mu_right_ev - e) / kt));
  });
  using namespace constants;
  // Energies in eV: one factor of q per energy, plus the carrier charge.
  const double prefactor = elementary_charge * elementary_charge * elementary_charge *
                           transverse_mass_ratio * electron_mass /
                           (2.0 * pi * pi * hbar * hbar * hbar);
  return prefactor * integral * 1e-4;  // A/m^2 -> A/cm^2
}

HoppingSet resolve_hoppings(const DeviceSpec& spec, const TransportSettings& settings) {
  return settings.hoppings ? *settings.hoppings : computed_hoppings(spec);
}

BiasPoint evaluate_profile(const DeviceSpec& spec, const PotentialProfile& profile,
                           double temperature_k, const TransportSettings& settings) {
  const Grid grid = build_grid(spec);
  const auto h = assemble(grid, profile, resolve_hoppings(spec, settings));
  const double mu_left = spec.fermi_level_ev;
  const double mu_right = spec.fermi_level_ev - profile.bias_v;
  const auto energies = energy_grid(profile, mu_left, mu_right, temperature_k, settings.energy_grid);
  const auto t = transmission_spectrum(h, energies, settings.greens);

  BiasPoint p;
  p.bias_v = profile.bias_v;
  p.current_a = current_1d(energies, t, mu_left, mu_right, temperature_k);
  p.current_density_a_cm2 =
      current_density(energies, t, mu_left, mu_right, temperature_k,
                      settings.transverse_mass_ratio.value_or(spec.insulator.effective_mass_ratio));
  return p;
}

namespace {

PotentialProfile profile_for(const DeviceSpec& spec, ResistanceState state, double bias_v,
                             const ProfileSource& source) {
  return source ? source(state, bias_v) : state_profile(spec, state, bias_v);
}

IvRow evaluate_row(const DeviceSpec& spec, ResistanceState state, double bias_v,
                   double temperature_k, const TransportSettings& settings,
                   const ProfileSource& source) {
  try {
    const auto p =
        evaluate_profile(spec, profile_for(spec, state, bias_v, source), temperature_k, settings);
    return {bias_v, p.current_a, p.current_density_a_cm2, state, temperature_k};
  } catch (const Error& e) {
    throw Error(e.code(), std::string(e.what()) + " (bias " + std::to_string(bias_v) + " V, " +
                              std::string(to_string(state)) + ")");
  }
}

}  // namespace

IvTable iv_sweep(const DeviceSpec& spec, ResistanceState state, std::span<const double> biases_v,
                 double temperature_k, const TransportSettings& settings,
                 const ProfileSource& source) {
  if (!std::is_sorted(biases_v.begin(), biases_v.end())) {
    throw Error(ErrorCode::invalid_argument, "I-V biases must be sorted");
  }
  IvTable table;
  for (double v : biases_v) {
    table.rows.push_back(evaluate_row(spec, state, v, temperature_k, settings, source));
  }
  return table;
}

IvTable hysteresis_sweep(const DeviceSpec& spec, std::span<const double> biases_v,
                         double set_voltage_v, double temperature_k,
                         const TransportSettings& settings, const ProfileSource& source) {
  std::vector<double> up;
  for (double v : biases_v) {
    if (v <= set_voltage_v + 1e-12) up.push_back(v);
  }
  std::sort(up.begin(), up.end());
  IvTable table = iv_sweep(spec, ResistanceState::hrs, up, temperature_k, settings, source);
  for (auto it = up.rbegin(); it != up.rend(); ++it) {
    table.rows.push_back(
        evaluate_row(spec, ResistanceState::lrs, *it, temperature_k, settings, source));
  }
  return table;
}

NvrsResult nvrs_ratio(const DeviceSpec& spec, double bias_v, double temperature_k,
                      const TransportSettings& settings, const ProfileSource& source) {
  if (bias_v == 0.0) throw Error(ErrorCode::invalid_argument, "NVRS ratio needs a non-zero bias");
  const auto hrs = evaluate_profile(spec, profile_for(spec, ResistanceState::hrs, bias_v, source),
                                    temperature_k, settings);
  const auto lrs = evaluate_profile(spec, profile_for(spec, ResistanceState::lrs, bias_v, source),
                                    temperature_k, settings);
  NvrsResult r;
  r.bias_v = bias_v;
  r.hrs_current_density_a_cm2 = hrs.current_density_a_cm2;
  r.lrs_current_density_a_cm2 = lrs.current_density_a_cm2;
  r.reliable = std::abs(hrs.current_a) >= 1e-30 && hrs.current_density_a_cm2 != 0.0;
  r.ratio = lrs.current_density_a_cm2 / hrs.current_density_a_cm2;
  return r;
}

RatioTable ratio_sweep(const DeviceSpec& spec, std::span<const double> biases_v,
                       double temperature_k, const TransportSettings& settings,
                       const ProfileSource& source) {
  RatioTable table;
  for (double v : biases_v) {
    const auto r = nvrs_ratio(spec, v, temperature_k, settings, source);
    table.rows.push_back({v, r.ratio, r.reliable});
  }
  return table;
}

}  // namespace atomristor
