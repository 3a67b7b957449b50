#include "atomristor/scf.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "atomristor/constants.hpp"
#include "atomristor/error.hpp"

namespace atomristor {

void ScfSettings::validate() const {
  if (!(damping > 0.0 && damping <= 1.0) || !(tol_ev > 0.0) || max_iter < 1 ||
      !(cross_section_nm2 > 0.0) || !(newton_step_ev > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "invalid SCF settings");
  }
}

std::vector<double> poisson_solve(std::span<const double> charge_per_nm, double permittivity_rel,
                                  double spacing_nm, double cross_section_nm2, double u_left_ev,
                                  double u_right_ev) {
  const std::size_t n = charge_per_nm.size();
  if (n < 2) throw Error(ErrorCode::invalid_argument, "Poisson grid needs at least 2 points");
  if (!(permittivity_rel > 0.0 && spacing_nm > 0.0 && cross_section_nm2 > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "Poisson parameters must be > 0");
  }
  std::vector<double> u(n, 0.0);
  u.front() = u_left_ev;
  u.back() = u_right_ev;
  if (n == 2) return u;

  // Interior rows: U_{i-1} - 2 U_i + U_{i+1} = a^2 (q / eps) rho_i / A.
  const double scale = spacing_nm * spacing_nm * constants::charge_over_eps0_v_nm /
                       (permittivity_rel * cross_section_nm2);
  const std::size_t m = n - 2;
  std::vector<double> rhs(m);
  for (std::size_t k = 0; k < m; ++k) rhs[k] = scale * charge_per_nm[k + 1];
  rhs.front() -= u_left_ev;
  rhs.back() -= u_right_ev;

  // Thomas algorithm for tridiag(1, -2, 1).
  std::vector<double> c_prime(m);
  c_prime[0] = 1.0 / -2.0;
  rhs[0] = rhs[0] / -2.0;
  for (std::size_t k = 1; k < m; ++k) {
    const double denom = -2.0 - c_prime[k - 1];
    c_prime[k] = 1.0 / denom;
    rhs[k] = (rhs[k] - rhs[k - 1]) / denom;
  }
  for (std::size_t k = m - 1; k-- > 0;) rhs[k] -= c_prime[k] * rhs[k + 1];
  std::copy(rhs.begin(), rhs.end(), u.begin() + 1);
  return u;
}

namespace {

struct ScfProblem {
  const DeviceSpec& spec;
  const ScfSettings& settings;
  const TransportSettings& transport;
  Grid grid;
  HoppingSet hoppings;
  PotentialProfile frozen;
  std::vector<double> reference_density;
  double mu_left = 0.0;
  double mu_right = 0.0;

  struct Update {
    std::vector<double> potential;
    std::vector<double> density;
  };

  std::vector<double> density(const std::vector<double>& potential) const {
    PotentialProfile p = frozen;
    p.values_ev = potential;
    const auto h = assemble(grid, p, hoppings);
    // The grid follows the current profile; a grid fixed to the frozen
    // profile misses states once the potential sinks below it.
    const auto energies =
        energy_grid(p, mu_left, mu_right, spec.temperature_k, transport.energy_grid);
    return electron_density(h, energies, mu_left, mu_right, spec.temperature_k, grid.spacing_nm,
                            transport.greens)
        .per_nm;
  }

  // Frozen profile plus the Poisson response to the excess electrons in
  // the switching layer. The electrodes screen perfectly: the correction
  // vanishes at the last metal point on each side and beyond. Letting the
  // metal float admits a spurious solution where the electrode sinks
  // below its lead band bottom, its states lose their injection and empty,
  // and the missing charge pulls it further down.
  Update map(const std::vector<double>& potential) const {
    Update out;
    out.density = density(potential);
    const std::size_t lo = grid.insulator_begin() - 1;
    const std::size_t hi = grid.insulator_end();
    std::vector<double> charge(hi - lo + 1);
    for (std::size_t i = lo; i <= hi; ++i) {
      charge[i - lo] = -(out.density[i] - reference_density[i]);
    }
    const auto correction = poisson_solve(charge, spec.permittivity_rel, grid.spacing_nm,
                                          settings.cross_section_nm2, 0.0, 0.0);
    out.potential = frozen.values_ev;
    for (std::size_t i = lo; i <= hi; ++i) out.potential[i] += correction[i - lo];
    return out;
  }
};

double max_gap(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

ScfResult scf_loop(const DeviceSpec& spec, ResistanceState state, double bias_v,
                   const ScfSettings& settings, const TransportSettings& transport) {
  settings.validate();
  ScfProblem problem{spec, settings, transport, build_grid(spec), resolve_hoppings(spec, transport),
                     state_profile(spec, state, bias_v), {}, 0.0, 0.0};
  problem.mu_left = spec.fermi_level_ev;
  problem.mu_right = spec.fermi_level_ev - bias_v;

  DeviceSpec reference = spec;
  reference.defects.clear();
  const auto reference_profile = hrs_profile(reference, 0.0);
  const auto reference_h = assemble(problem.grid, reference_profile, problem.hoppings);
  const auto reference_energies =
      energy_grid(reference_profile, spec.fermi_level_ev, spec.fermi_level_ev, spec.temperature_k,
                  transport.energy_grid);
  problem.reference_density =
      electron_density(reference_h, reference_energies, spec.fermi_level_ev, spec.fermi_level_ev,
                       spec.temperature_k, problem.grid.spacing_nm, transport.greens)
          .per_nm;

  ScfResult result;
  result.profile = problem.frozen;
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> potential = problem.frozen.values_ev;

  auto record = [&](int iteration, const std::vector<double>& u, const std::vector<double>& n,
                    double residual) {
    result.residual_history.push_back(residual);
    result.iterations = iteration;
    if (residual < best) {
      best = residual;
      result.profile.values_ev = u;
      result.density_per_nm = n;
    }
    if (residual < settings.tol_ev) result.converged = true;
  };

  if (settings.mode == ScfMode::damped_fixed_point) {
    for (int it = 1; it <= settings.max_iter; ++it) {
      auto next = problem.map(potential);
      const double residual = max_gap(next.potential, potential);
      record(it, potential, next.density, residual);
      if (result.converged) break;
      for (std::size_t i = 0; i < potential.size(); ++i) {
        potential[i] += settings.damping * (next.potential[i] - potential[i]);
      }
    }
    return result;
  }

  // Newton on G(U) = map(U) - U over the switching-layer points.
  const std::size_t first = problem.grid.insulator_begin();
  const std::size_t m = problem.grid.insulator_end() - first;
  const auto idx = [](std::size_t i) { return static_cast<Eigen::Index>(i); };
  for (int it = 1; it <= settings.max_iter; ++it) {
    const auto base = problem.map(potential);
    Eigen::VectorXd g(idx(m));
    for (std::size_t i = 0; i < m; ++i) g(idx(i)) = base.potential[first + i] - potential[first + i];
    const double residual = max_gap(base.potential, potential);
    record(it, potential, base.density, residual);
    if (result.converged) break;

    Eigen::MatrixXd jac(idx(m), idx(m));
    const double h = settings.newton_step_ev;
    for (std::size_t j = 0; j < m; ++j) {
      auto shifted = potential;
      shifted[first + j] += h;
      const auto probe = problem.map(shifted);
      for (std::size_t i = 0; i < m; ++i) {
        const double gi = probe.potential[first + i] - shifted[first + i];
        jac(idx(i), idx(j)) = (gi - g(idx(i))) / h;
      }
    }
    const Eigen::VectorXd step = jac.partialPivLu().solve(-g);
    if (!step.allFinite()) break;
    for (std::size_t i = 0; i < m; ++i) potential[first + i] += step(idx(i));
  }
  return result;
}

}  // namespace atomristor
