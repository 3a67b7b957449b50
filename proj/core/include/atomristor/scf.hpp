#pragma once

#include <span>
#include <vector>

#include "atomristor/device.hpp"
#include "atomristor/transport.hpp"

namespace atomristor {

enum class ScfMode { damped_fixed_point, newton };

struct ScfSettings {
  double damping = 0.1;  // in (0, 1]
  double tol_ev = 1e-4;  // on max |U_new - U|
  int max_iter = 200;
  ScfMode mode = ScfMode::damped_fixed_point;
  // Transverse area that turns the 1D density (1/nm) into a volume
  // density for the Poisson equation.
  double cross_section_nm2 = 1.0;
  double newton_step_ev = 1e-4;  // finite-difference step for the Jacobian

  void validate() const;
  bool operator==(const ScfSettings&) const = default;
};

// Solves d^2U/dx^2 = (q / eps) rho / A on the grid with U fixed at both end
// points, where rho is the signed net charge per nm in units of e (electrons
// count negative) and U is the electron potential energy in eV. Exact for
// the discrete three-point Laplacian.
std::vector<double> poisson_solve(std::span<const double> charge_per_nm, double permittivity_rel,
                                  double spacing_nm, double cross_section_nm2, double u_left_ev,
                                  double u_right_ev);

struct ScfResult {
  PotentialProfile profile;
  std::vector<double> density_per_nm;
  int iterations = 0;
  std::vector<double> residual_history;  // max |U_new - U| per iteration
  bool converged = false;
};

// Self-consistent profile for a state and bias. The charge fed to Poisson
// is the deviation of the NEGF density from the zero-bias, defect-free
// density, and the correction is added to the frozen profile; the frozen
// zero-bias reference device is therefore a fixed point. Non-convergence is
// reported through ScfResult::converged, not thrown.
ScfResult scf_loop(const DeviceSpec& spec, ResistanceState state, double bias_v,
                   const ScfSettings& settings, const TransportSettings& transport = {});

}  // namespace atomristor
