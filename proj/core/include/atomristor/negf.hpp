#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "atomristor/hamiltonian.hpp"

namespace atomristor {

using cplx = std::complex<double>;

enum class Lead { left, right };

// Retarded self-energy of a semi-infinite 1D tight-binding lead with band
// E = U + 2t (1 - cos ka): returns -t exp(ika), with Im <= 0 inside the
// band and |exp(ika)| < 1 outside it.
cplx lead_self_energy(double energy_ev, double band_bottom_ev, double hopping_ev);

// Gamma = i (Sigma - Sigma^dagger) for a single boundary entry.
inline double broadening(cplx sigma) { return -2.0 * sigma.imag(); }

struct GreensOptions {
  double eta_ev = 1e-12;
  double max_eta_ev = 1e-6;

  bool operator==(const GreensOptions&) const = default;
};

// Elements of G(E) = [(E + i eta) I - H - Sigma_1 - Sigma_2]^-1 that the
// transport and density calculations need.
struct GreensResult {
  double energy_ev = 0.0;
  double eta_ev = 0.0;  // after any widening
  cplx sigma_left;
  cplx sigma_right;
  double gamma_left = 0.0;
  double gamma_right = 0.0;
  cplx g_11;
  cplx g_nn;
  cplx g_1n;  // from the last-column sweep
  cplx g_n1;  // from the first-column sweep
  std::vector<cplx> diagonal;         // G_ii
  std::vector<double> spectral_left;  // (G Gamma_1 G^dagger)_ii
  std::vector<double> spectral_right; // (G Gamma_2 G^dagger)_ii
};

// O(N) recursive Green's function evaluation. Left- and right-connected
// sweeps give the diagonal; the first and last columns follow from one
// more pass each. If a pivot vanishes eta is widened tenfold up to
// max_eta_ev before Error(singular_matrix) is thrown.
GreensResult greens_function(const TridiagonalHamiltonian& h, double energy_ev,
                             const GreensOptions& options = {});

// Gamma_1 |G_1N|^2 Gamma_2.
double transmission(const GreensResult& g);

// trace(Gamma_1 A_2) and trace(Gamma_2 A_1), evaluated through the two
// independent column sweeps.
struct TransmissionTraces {
  double gamma1_a2 = 0.0;
  double gamma2_a1 = 0.0;
};
TransmissionTraces transmission_traces(const GreensResult& g);

struct SpectrumPoint {
  double energy_ev = 0.0;
  double transmission = 0.0;
  std::vector<double> ldos;  // 1/(eV nm) per site
  cplx g_1n;
  std::vector<double> a1_diag;
  std::vector<double> a2_diag;
};

SpectrumPoint spectrum_point(const TridiagonalHamiltonian& h, double energy_ev,
                             double spacing_nm, const GreensOptions& options = {});

// Transmission at every energy, evaluated in parallel.
std::vector<double> transmission_spectrum(const TridiagonalHamiltonian& h,
                                          std::span<const double> energies_ev,
                                          const GreensOptions& options = {});

// Site x energy matrix of A_ii(E) / (2 pi a), stored row-major by site.
struct LdosMap {
  std::vector<double> energies_ev;
  std::size_t sites = 0;
  std::vector<double> values;

  double at(std::size_t site, std::size_t energy_index) const {
    return values[site * energies_ev.size() + energy_index];
  }
};

LdosMap ldos_map(const TridiagonalHamiltonian& h, std::span<const double> energies_ev,
                 double spacing_nm, const GreensOptions& options = {});

struct DensityResult {
  std::vector<double> per_nm;  // electrons per nm at each site
  // Set when the integrand at either end of the energy grid exceeds 1e-6
  // of its peak.
  bool truncated = false;
};

// n_i = int [A1_ii f(E, mu1) + A2_ii f(E, mu2)] dE / (2 pi a), trapezoidal
// on the supplied (sorted) energy grid.
DensityResult electron_density(const TridiagonalHamiltonian& h,
                               std::span<const double> energies_ev, double mu_left_ev,
                               double mu_right_ev, double temperature_k, double spacing_nm,
                               const GreensOptions& options = {});

}  // namespace atomristor
