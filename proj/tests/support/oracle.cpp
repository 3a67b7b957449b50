#include "oracle.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "atomristor/constants.hpp"

namespace oracle {

using cld = std::complex<long double>;

cplx self_energy(double energy, double band_bottom, double hopping) {
  // t z^2 + (E - U - 2t) z + t = 0, Sigma = -t z.
  const cplx b = energy - band_bottom - 2.0 * hopping;
  const cplx disc = std::sqrt(b * b - 4.0 * hopping * hopping);
  const cplx z1 = (-b + disc) / (2.0 * hopping);
  const cplx z2 = (-b - disc) / (2.0 * hopping);
  cplx z;
  if (std::abs(std::abs(z1) - 1.0) < 1e-12 && std::abs(std::abs(z2) - 1.0) < 1e-12) {
    z = z1.imag() > 0.0 ? z1 : z2;
  } else {
    z = std::abs(z1) < 1.0 ? z1 : z2;
  }
  return -hopping * z;
}

Dense dense_greens(const atomristor::TridiagonalHamiltonian& h, double energy, double eta) {
  const auto n = static_cast<Eigen::Index>(h.size());
  using Mat = Eigen::Matrix<cld, Eigen::Dynamic, Eigen::Dynamic>;
  Dense d;
  d.n = h.size();
  d.sigma_left = self_energy(energy, h.left.band_bottom_ev, h.left.hopping_ev);
  d.sigma_right = self_energy(energy, h.right.band_bottom_ev, h.right.hopping_ev);
  d.gamma_left = -2.0 * d.sigma_left.imag();
  d.gamma_right = -2.0 * d.sigma_right.imag();

  Mat m = Mat::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    m(i, i) = cld(static_cast<long double>(energy) - h.diagonal[static_cast<std::size_t>(i)],
                  static_cast<long double>(eta));
    if (i + 1 < n) {
      m(i, i + 1) = -static_cast<long double>(h.off_diagonal[static_cast<std::size_t>(i)]);
      m(i + 1, i) = m(i, i + 1);
    }
  }
  m(0, 0) -= cld(d.sigma_left.real(), d.sigma_left.imag());
  m(n - 1, n - 1) -= cld(d.sigma_right.real(), d.sigma_right.imag());
  const Mat g = m.partialPivLu().solve(Mat::Identity(n, n));
  d.g.resize(d.n * d.n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const cld v = g(i, j);
      d.g[static_cast<std::size_t>(i * n + j)] =
          cplx(static_cast<double>(v.real()), static_cast<double>(v.imag()));
    }
  }
  return d;
}

atomristor::TridiagonalHamiltonian random_device(std::size_t n, double t, double depth,
                                                 std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> amp(-depth, depth);
  std::uniform_int_distribution<int> width(1, 6);
  std::vector<double> u(n, 0.0);
  for (std::size_t i = n / 5; i + n / 5 < n;) {
    const double a = amp(rng);
    const auto w = static_cast<std::size_t>(width(rng));
    for (std::size_t k = 0; k < w && i + n / 5 < n; ++k, ++i) u[i] = a;
  }
  atomristor::TridiagonalHamiltonian h;
  for (double v : u) h.diagonal.push_back(2.0 * t + v);
  h.off_diagonal.assign(n - 1, -t);
  h.left = {0.0, t};
  h.right = {0.0, t};
  return h;
}

atomristor::TridiagonalHamiltonian barrier_chain(int cells, int lead_cells, double v, double t) {
  atomristor::TridiagonalHamiltonian h;
  for (int i = 0; i < cells + 2 * lead_cells; ++i) {
    const bool inside = i >= lead_cells && i < lead_cells + cells;
    h.diagonal.push_back(2.0 * t + (inside ? v : 0.0));
  }
  h.off_diagonal.assign(h.diagonal.size() - 1, -t);
  h.left = {0.0, t};
  h.right = {0.0, t};
  return h;
}

double barrier_transmission(double energy, double height, double length_nm, double mass_ratio) {
  const double c = atomristor::constants::hbar2_over_2m0_ev_nm2 / mass_ratio;
  if (energy < height) {
    const double kappa = std::sqrt((height - energy) / c);
    const double s = std::sinh(kappa * length_nm);
    return 1.0 / (1.0 + height * height * s * s / (4.0 * energy * (height - energy)));
  }
  if (energy == height) {
    return 1.0 / (1.0 + energy * length_nm * length_nm / (4.0 * c));
  }
  const double k = std::sqrt((energy - height) / c);
  const double s = std::sin(k * length_nm);
  return 1.0 / (1.0 + height * height * s * s / (4.0 * energy * (energy - height)));
}

double uniform_chain_density(double hopping, double spacing_nm, double mu,
                             double temperature_k) {
  const double kt = atomristor::constants::boltzmann_ev * temperature_k;
  const int n = 200000;
  double sum = 0.0;
  for (int k = 0; k < n; ++k) {
    const double th = atomristor::constants::pi * (k + 0.5) / n;  // midpoint rule
    const double e = 2.0 * hopping * (1.0 - std::cos(th));
    sum += 1.0 / (1.0 + std::exp((e - mu) / kt));
  }
  return sum / n / spacing_nm;
}

double zero_t_current_density(double mu1, double mu2, double floor, double mass_ratio) {
  using namespace atomristor::constants;
  const double lo = std::max(mu2, floor);
  const double integral = (mu1 - mu2) * std::max(0.0, mu2 - floor) +
                          0.5 * (mu1 - lo) * (mu1 - lo);
  const double prefactor = elementary_charge * elementary_charge * elementary_charge * mass_ratio *
                           electron_mass / (2.0 * pi * pi * hbar * hbar * hbar);
  return prefactor * integral * 1e-4;
}

}  // namespace oracle
