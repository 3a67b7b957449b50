#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "atomristor/config.hpp"
#include "atomristor/constants.hpp"
#include "atomristor/error.hpp"
#include "atomristor/scf.hpp"

using namespace atomristor;

namespace {

const RunConfig ref = default_config();

DeviceSpec reference_device() {
  DeviceSpec s = ref.device;
  s.defects.clear();
  return s;
}

}  // namespace

TEST_CASE("Laplace solution is the exact ramp") {
  const std::vector<double> rho(61, 0.0);
  const auto u = poisson_solve(rho, 4.0, 0.05, 1.0, 0.0, -1.0);
  for (std::size_t i = 0; i < u.size(); ++i) {
    CHECK(std::abs(u[i] - (-1.0 * i / 60.0)) < 1e-12);
  }
}

TEST_CASE("uniform charge gives the continuum parabola") {
  const double rho0 = -0.3, eps = 4.0, a = 0.05, area = 2.0;
  const std::size_t n = 41;
  const double length = a * (n - 1);
  const std::vector<double> rho(n, rho0);
  const auto u = poisson_solve(rho, eps, a, area, 0.0, 0.0);
  const double k = constants::charge_over_eps0_v_nm / (eps * area);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = a * static_cast<double>(i);
    const double exact = 0.5 * k * rho0 * x * (x - length);
    CHECK(std::abs(u[i] - exact) < 10.0 * a * a * std::abs(k * rho0) + 1e-12);
  }
  // Electrons (negative charge) raise the electron potential energy.
  CHECK(u[n / 2] > 0.0);
}

TEST_CASE("Poisson solution is linear in the charge") {
  std::vector<double> ra(50), rb(50), rab(50);
  for (std::size_t i = 0; i < 50; ++i) {
    ra[i] = std::sin(0.3 * i);
    rb[i] = 0.1 * std::cos(0.7 * i) - 0.05;
    rab[i] = ra[i] + rb[i];
  }
  const auto ua = poisson_solve(ra, 4.0, 0.05, 1.0, 0.0, 0.0);
  const auto ub = poisson_solve(rb, 4.0, 0.05, 1.0, 0.0, 0.0);
  const auto uab = poisson_solve(rab, 4.0, 0.05, 1.0, 0.0, 0.0);
  for (std::size_t i = 0; i < 50; ++i) CHECK(std::abs(ua[i] + ub[i] - uab[i]) < 1e-12);
  const std::vector<double> tiny(1, 0.0);
  CHECK_THROWS_AS(poisson_solve(tiny, 4.0, 0.05, 1.0, 0.0, 0.0), Error);
}

TEST_CASE("zero-bias reference device is a fixed point") {
  const auto r = scf_loop(reference_device(), ResistanceState::hrs, 0.0, ref.scf, ref.transport());
  CHECK(r.converged);
  CHECK(r.iterations == 1);
  const auto frozen = hrs_profile(reference_device(), 0.0);
  for (std::size_t i = 0; i < frozen.values_ev.size(); ++i) {
    CHECK(std::abs(r.profile.values_ev[i] - frozen.values_ev[i]) < ref.scf.tol_ev);
  }
}

TEST_CASE("biased HRS device converges with a bounded residual tail") {
  const auto r = scf_loop(ref.device, ResistanceState::hrs, 1.0, ref.scf, ref.transport());
  CHECK(r.converged);
  CHECK(r.iterations <= 200);
  CHECK(r.residual_history.back() < ref.scf.tol_ev);
  const auto half = r.residual_history.size() / 2;
  for (std::size_t k = half + 1; k < r.residual_history.size(); ++k) {
    CHECK(r.residual_history[k] <= r.residual_history[half] * (1.0 + 1e-9));
  }
  CHECK(r.profile.values_ev.front() == 0.0);
  CHECK(r.profile.values_ev.back() == -1.0);
  MESSAGE("damped iterations at 1 V: " << r.iterations);
}

TEST_CASE("looser tolerance never needs more iterations") {
  auto settings = ref.scf;
  int previous = 1 << 30;
  for (double tol : {1e-5, 2e-5, 4e-5, 8e-5, 1.6e-4}) {
    settings.tol_ev = tol;
    const auto r = scf_loop(ref.device, ResistanceState::hrs, 0.6, settings, ref.transport());
    CHECK(r.iterations <= previous);
    previous = r.iterations;
  }
}

TEST_CASE("converged profile does not depend on damping") {
  std::vector<std::vector<double>> results;
  for (double damping : {0.05, 0.1, 0.2}) {
    auto settings = ref.scf;
    settings.damping = damping;
    settings.max_iter = 400;
    const auto r = scf_loop(ref.device, ResistanceState::hrs, 1.0, settings, ref.transport());
    CHECK(r.converged);
    results.push_back(r.profile.values_ev);
  }
  for (std::size_t i = 0; i < results[0].size(); ++i) {
    CHECK(std::abs(results[1][i] - results[0][i]) < 2.0 * ref.scf.tol_ev);
    CHECK(std::abs(results[2][i] - results[0][i]) < 2.0 * ref.scf.tol_ev);
  }
}

TEST_CASE("Newton mode reaches the same fixed point") {
  auto settings = ref.scf;
  settings.mode = ScfMode::newton;
  settings.max_iter = 20;
  const auto n = scf_loop(ref.device, ResistanceState::hrs, 1.0, settings, ref.transport());
  const auto d = scf_loop(ref.device, ResistanceState::hrs, 1.0, ref.scf, ref.transport());
  CHECK(n.converged);
  CHECK(n.iterations < d.iterations);
  for (std::size_t i = 0; i < n.profile.values_ev.size(); ++i) {
    CHECK(std::abs(n.profile.values_ev[i] - d.profile.values_ev[i]) < 2.0 * ref.scf.tol_ev);
  }
}

TEST_CASE("iteration limit is reported, not thrown") {
  auto settings = ref.scf;
  settings.max_iter = 1;
  const auto r = scf_loop(ref.device, ResistanceState::lrs, 1.0, settings, ref.transport());
  CHECK_FALSE(r.converged);
  CHECK(r.residual_history.size() == 1);
}

TEST_CASE("settings validation") {
  ScfSettings s;
  s.damping = 0.0;
  CHECK_THROWS_AS(s.validate(), Error);
  s = {};
  s.max_iter = 0;
  CHECK_THROWS_AS(s.validate(), Error);
}
