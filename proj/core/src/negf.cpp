#include "atomristor/negf.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "atomristor/constants.hpp"
#include "atomristor/error.hpp"
#include "atomristor/fermi.hpp"
#include "atomristor/parallel.hpp"

namespace atomristor {

cplx lead_self_energy(double energy_ev, double band_bottom_ev, double hopping_ev) {
  if (!(hopping_ev > 0.0)) throw Error(ErrorCode::invalid_argument, "lead hopping must be > 0");
  const double c = 1.0 - (energy_ev - band_bottom_ev) / (2.0 * hopping_ev);
  if (std::abs(c) <= 1.0) {
    return -hopping_ev * cplx(c, std::sqrt(1.0 - c * c));
  }
  // Evanescent branch, |exp(ika)| < 1.
  const double root = std::sqrt(c * c - 1.0);
  const double decay = c > 0.0 ? c - root : c + root;
  return {-hopping_ev * decay, 0.0};
}

namespace {

bool usable(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

std::optional<GreensResult> try_greens(const TridiagonalHamiltonian& h, double energy_ev,
                                       double eta) {
  const std::size_t n = h.size();
  GreensResult r;
  r.energy_ev = energy_ev;
  r.eta_ev = eta;
  r.sigma_left = lead_self_energy(energy_ev, h.left.band_bottom_ev, h.left.hopping_ev);
  r.sigma_right = lead_self_energy(energy_ev, h.right.band_bottom_ev, h.right.hopping_ev);
  r.gamma_left = broadening(r.sigma_left);
  r.gamma_right = broadening(r.sigma_right);

  const cplx z(energy_ev, eta);
  std::vector<cplx> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = z - h.diagonal[i];
  d.front() -= r.sigma_left;
  d.back() -= r.sigma_right;

  // D_{i,i+1} = -H_{i,i+1}; only its square and sign enter below.
  const auto& b = h.off_diagonal;

  std::vector<cplx> left(n);   // left-connected g_ii
  std::vector<cplx> right(n);  // right-connected g_ii
  cplx pivot = d[0];
  if (pivot == cplx{}) return std::nullopt;
  left[0] = 1.0 / pivot;
  for (std::size_t i = 1; i < n; ++i) {
    pivot = d[i] - b[i - 1] * b[i - 1] * left[i - 1];
    if (pivot == cplx{}) return std::nullopt;
    left[i] = 1.0 / pivot;
  }
  pivot = d[n - 1];
  if (pivot == cplx{}) return std::nullopt;
  right[n - 1] = 1.0 / pivot;
  for (std::size_t i = n - 1; i-- > 0;) {
    pivot = d[i] - b[i] * b[i] * right[i + 1];
    if (pivot == cplx{}) return std::nullopt;
    right[i] = 1.0 / pivot;
  }

  r.diagonal.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    cplx denom = d[i];
    if (i > 0) denom -= b[i - 1] * b[i - 1] * left[i - 1];
    if (i + 1 < n) denom -= b[i] * b[i] * right[i + 1];
    if (denom == cplx{}) return std::nullopt;
    r.diagonal[i] = 1.0 / denom;
  }

  // First column: G_{i+1,1} = -g^R_{i+1} D_{i+1,i} G_{i,1}.
  std::vector<cplx> first(n);
  first[0] = right[0];
  for (std::size_t i = 0; i + 1 < n; ++i) first[i + 1] = right[i + 1] * b[i] * first[i];
  // Last column: G_{i-1,N} = -g^L_{i-1} D_{i-1,i} G_{i,N}.
  std::vector<cplx> last(n);
  last[n - 1] = left[n - 1];
  for (std::size_t i = n - 1; i > 0; --i) last[i - 1] = left[i - 1] * b[i - 1] * last[i];

  r.g_11 = first[0];
  r.g_nn = last[n - 1];
  r.g_n1 = first[n - 1];
  r.g_1n = last[0];
  if (!usable(r.g_11) || !usable(r.g_nn) || !usable(r.g_1n) || !usable(r.g_n1)) {
    return std::nullopt;
  }

  r.spectral_left.resize(n);
  r.spectral_right.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    r.spectral_left[i] = r.gamma_left * std::norm(first[i]);
    r.spectral_right[i] = r.gamma_right * std::norm(last[i]);
  }
  return r;
}

}  // namespace

GreensResult greens_function(const TridiagonalHamiltonian& h, double energy_ev,
                             const GreensOptions& options) {
  if (h.size() < 2 || h.off_diagonal.size() + 1 != h.size()) {
    throw Error(ErrorCode::invalid_argument, "malformed tridiagonal Hamiltonian");
  }
  for (double eta = options.eta_ev; eta <= options.max_eta_ev * (1.0 + 1e-9); eta *= 10.0) {
    if (auto r = try_greens(h, energy_ev, eta)) return std::move(*r);
  }
  throw Error(ErrorCode::singular_matrix,
              "Green's function singular at E = " + std::to_string(energy_ev) + " eV");
}

double transmission(const GreensResult& g) {
  return g.gamma_left * std::norm(g.g_1n) * g.gamma_right;
}

TransmissionTraces transmission_traces(const GreensResult& g) {
  // Gamma_1 and Gamma_2 each have a single non-zero entry, so each trace
  // picks one diagonal element of the opposite spectral function.
  return {g.gamma_left * g.spectral_right.front(), g.gamma_right * g.spectral_left.back()};
}

SpectrumPoint spectrum_point(const TridiagonalHamiltonian& h, double energy_ev,
                             double spacing_nm, const GreensOptions& options) {
  auto g = greens_function(h, energy_ev, options);
  SpectrumPoint p;
  p.energy_ev = energy_ev;
  p.transmission = transmission(g);
  p.g_1n = g.g_1n;
  p.ldos.resize(h.size());
  const double scale = 1.0 / (2.0 * constants::pi * spacing_nm);
  for (std::size_t i = 0; i < h.size(); ++i) {
    p.ldos[i] = (g.spectral_left[i] + g.spectral_right[i]) * scale;
  }
  p.a1_diag = std::move(g.spectral_left);
  p.a2_diag = std::move(g.spectral_right);
  return p;
}

std::vector<double> transmission_spectrum(const TridiagonalHamiltonian& h,
                                          std::span<const double> energies_ev,
                                          const GreensOptions& options) {
  std::vector<double> out(energies_ev.size());
  parallel_for(energies_ev.size(), [&](std::size_t k) {
    out[k] = transmission(greens_function(h, energies_ev[k], options));
  });
  return out;
}

LdosMap ldos_map(const TridiagonalHamiltonian& h, std::span<const double> energies_ev,
                 double spacing_nm, const GreensOptions& options) {
  LdosMap map;
  map.energies_ev.assign(energies_ev.begin(), energies_ev.end());
  map.sites = h.size();
  map.values.assign(map.sites * energies_ev.size(), 0.0);
  const double scale = 1.0 / (2.0 * constants::pi * spacing_nm);
  const std::size_t ne = energies_ev.size();
  parallel_for(ne, [&](std::size_t k) {
    const auto g = greens_function(h, energies_ev[k], options);
    for (std::size_t i = 0; i < map.sites; ++i) {
      map.values[i * ne + k] = (g.spectral_left[i] + g.spectral_right[i]) * scale;
    }
  });
  return map;
}

DensityResult electron_density(const TridiagonalHamiltonian& h,
                               std::span<const double> energies_ev, double mu_left_ev,
                               double mu_right_ev, double temperature_k, double spacing_nm,
                               const GreensOptions& options) {
  const std::size_t n = h.size();
  const std::size_t ne = energies_ev.size();
  DensityResult result;
  result.per_nm.assign(n, 0.0);
  if (ne < 2) return result;

  std::vector<double> integrand(ne * n);
  parallel_for(ne, [&](std::size_t k) {
    const double e = energies_ev[k];
    const auto g = greens_function(h, e, options);
    const double f1 = fermi(e, mu_left_ev, temperature_k);
    const double f2 = fermi(e, mu_right_ev, temperature_k);
    for (std::size_t i = 0; i < n; ++i) {
      integrand[k * n + i] = g.spectral_left[i] * f1 + g.spectral_right[i] * f2;
    }
  });

  double peak = 0.0;
  for (double v : integrand) peak = std::max(peak, v);
  double edge = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    edge = std::max({edge, integrand[i], integrand[(ne - 1) * n + i]});
  }
  result.truncated = peak > 0.0 && edge > 1e-6 * peak;

  for (std::size_t k = 0; k + 1 < ne; ++k) {
    const double w = 0.5 * (energies_ev[k + 1] - energies_ev[k]);
    for (std::size_t i = 0; i < n; ++i) {
      result.per_nm[i] += w * (integrand[k * n + i] + integrand[(k + 1) * n + i]);
    }
  }
  const double scale = 1.0 / (2.0 * constants::pi * spacing_nm);
  for (double& v : result.per_nm) v *= scale;
  return result;
}

}  // namespace atomristor
