#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "atomristor/error.hpp"
#include "atomristor/hamiltonian.hpp"

using namespace atomristor;

namespace {

// hbar^2 / (2 m a^2) evaluated directly in SI.
double hopping_si(double mass_ratio, double a_nm) {
  const double hbar = 1.054571817e-34, m0 = 9.1093837015e-31, q = 1.602176634e-19;
  const double a = a_nm * 1e-9;
  return hbar * hbar / (2.0 * mass_ratio * m0 * a * a) / q;
}

const HoppingSet literal{14.03, 15.43, 14.73};

}  // namespace

TEST_CASE("hopping from mass matches the SI evaluation") {
  CHECK(hopping_from_mass(1.0, 0.05) == doctest::Approx(hopping_si(1.0, 0.05)).epsilon(1e-12));
  CHECK(hopping_from_mass(1.0, 0.05) == doctest::Approx(15.24).epsilon(1e-3));
  CHECK(hopping_from_mass(1.1, 0.05) == doctest::Approx(13.86).epsilon(1e-3));
  CHECK(hopping_from_mass(1e6, 0.05) < 1e-4);
  CHECK_THROWS_AS(hopping_from_mass(0.0, 0.05), Error);
}

TEST_CASE("junction hopping is the mean") {
  CHECK(junction_hopping(14.03, 15.43) == doctest::Approx(14.73).epsilon(1e-14));
  CHECK(junction_hopping(3.5, 3.5) == 3.5);
  CHECK(junction_hopping(13.86, 15.24) == doctest::Approx(14.55).epsilon(1e-14));
}

TEST_CASE("hopping set validation") {
  CHECK_NOTHROW(literal.validate());
  CHECK_THROWS_AS((HoppingSet{14.0, 15.0, 16.0}.validate()), Error);
  CHECK_THROWS_AS((HoppingSet{-1.0, 15.0, 14.0}.validate()), Error);
}

TEST_CASE("uniform chain reduces to the single-region matrix") {
  DeviceSpec s;
  const auto g = build_grid(s);
  PotentialProfile flat;
  flat.values_ev.assign(g.size(), 0.0);
  const auto h = assemble(g, flat, HoppingSet{14.03, 14.03, 14.03});
  for (double d : h.diagonal) CHECK(d == 2.0 * 14.03);
  for (double o : h.off_diagonal) CHECK(o == -14.03);
}

TEST_CASE("six on-site entries carry the junction hopping") {
  DeviceSpec s;
  const auto g = build_grid(s);
  const auto p = hrs_profile(s, 0.0);
  const auto h = assemble(g, p, literal);
  int junction = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (h.diagonal[i] - p.values_ev[i] == 2.0 * 14.73) ++junction;
  }
  CHECK(junction == 6);
  CHECK(h.off_diagonal.size() == h.size() - 1);
}

TEST_CASE("on-site and bond ranges follow the piecewise listing") {
  DeviceSpec s;
  const auto g = build_grid(s);
  const auto p = hrs_profile(s, 0.3);
  const auto h = assemble(g, p, literal);
  const int x = 30, y = 30;
  for (int i = 1; i <= 2 * x + y; ++i) {
    double t = literal.junction_ev;
    if (i <= x - 2 || i >= x + y + 2) t = literal.metal_ev;
    if (i >= x + 2 && i <= x + y - 2) t = literal.insulator_ev;
    CHECK(h.diagonal[static_cast<std::size_t>(i - 1)] == 2.0 * t + p.values_ev[static_cast<std::size_t>(i - 1)]);
  }
  for (int i = 1; i <= 2 * x + y - 1; ++i) {
    double t = literal.junction_ev;
    if (i <= x - 1 || i >= x + y + 1) t = literal.metal_ev;
    if (i >= x + 1 && i <= x + y - 1) t = literal.insulator_ev;
    CHECK(h.off_diagonal[static_cast<std::size_t>(i - 1)] == -t);
  }
  CHECK(h.left.band_bottom_ev == 0.0);
  CHECK(h.right.band_bottom_ev == -0.3);
  CHECK(h.left.hopping_ev == literal.metal_ev);
}

TEST_CASE("constant potential shift moves only the diagonal") {
  DeviceSpec s;
  const auto g = build_grid(s);
  auto p = hrs_profile(s, 0.5);
  const auto h0 = assemble(g, p, literal);
  for (double& v : p.values_ev) v += 0.37;
  const auto h1 = assemble(g, p, literal);
  for (std::size_t i = 0; i < h0.size(); ++i) {
    CHECK(h1.diagonal[i] - h0.diagonal[i] == doctest::Approx(0.37).epsilon(1e-12));
  }
  CHECK(h1.off_diagonal == h0.off_diagonal);
}

TEST_CASE("too few points is rejected") {
  DeviceSpec s;
  s.metal_length_nm = 0.05;
  s.insulator_length_nm = 0.05;
  const auto g = build_grid(s);
  PotentialProfile p;
  p.values_ev.assign(g.size(), 0.0);
  try {
    assemble(g, p, literal);
    FAIL("expected device_too_small");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::device_too_small);
  }
}

TEST_CASE("profile length must match the grid") {
  DeviceSpec s;
  PotentialProfile p;
  p.values_ev.assign(10, 0.0);
  CHECK_THROWS_AS(assemble(build_grid(s), p, literal), Error);
}

TEST_CASE("isolated uniform chain eigenvalues stay inside the band") {
  DeviceSpec s;
  s.metal_length_nm = 0.25;
  s.insulator_length_nm = 0.25;
  const auto g = build_grid(s);
  PotentialProfile p;
  p.values_ev.assign(g.size(), 0.3);
  const double t = 14.03;
  const auto h = assemble(g, p, HoppingSet{t, t, t});
  const auto n = static_cast<Eigen::Index>(h.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    m(i, i) = h.diagonal[static_cast<std::size_t>(i)];
    if (i + 1 < n) m(i, i + 1) = m(i + 1, i) = h.off_diagonal[static_cast<std::size_t>(i)];
  }
  CHECK(m.isApprox(m.transpose()));
  const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m).eigenvalues();
  CHECK(ev.minCoeff() >= 0.3);
  CHECK(ev.maxCoeff() <= 0.3 + 4.0 * t);
}
