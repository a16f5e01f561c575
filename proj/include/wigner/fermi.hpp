#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "wigner/ensembles.hpp"
#include "wigner/lattice.hpp"

namespace wigner {

/// Real random potential on Λ_L. Values are stored at the site x mod L in
/// row-major order (first coordinate slowest).
struct PotentialField {
  int d = 2;
  int L = 0;
  double lambda = 1.0;  // E[v(x)²] = λ²
  std::vector<double> values;

  std::size_t sites() const { return values.size(); }
};

/// Independent centered Gaussians with variance λ².
PotentialField sample_potential(int d, int L, double lambda, std::uint64_t seed);

/// v̂(p) = L^{-d}·Σ_x v(x)·e^{i p·x} on the whole Brillouin zone, stored at
/// k mod L in the same layout as PotentialField.
struct FourierPotential {
  int d = 2;
  int L = 0;
  double lambda = 1.0;
  std::vector<std::complex<double>> values;

  const std::complex<double>& at(const LatticePoint& k) const;
};

FourierPotential fourier_potential(const PotentialField& field);

/// Y(p,q) = v̂(p − q) on the shell, with X = c_n·Y normalized so entries have
/// variance 1/n: c_n² = L^d / (λ²·n).
struct EffectiveMatrix {
  LatticeShell shell;
  HermitianSample Y;
  double c_n = 1.0;
};

/// Entries are read through the canonical representative of ±(p − q), so
/// Y is exactly Hermitian and exactly a function of p − q.
EffectiveMatrix build_effective_matrix(const LatticeShell& shell, const FourierPotential& vhat);

HermitianSample rescale(const EffectiveMatrix& em);

/// Convenience: one draw of X = c_n·Y for a shell.
HermitianSample sample_fermi_matrix(const LatticeShell& shell, double lambda, std::uint64_t seed);

/// L ≈ λ^{-2}, rounded to the nearest even integer.
int coupling_lattice_size(double lambda);

struct CouplingRow {
  double lambda = 0.0;
  int L = 0;
  int n = 0;
  double spectral_radius = 0.0;  // of the unscaled Y, averaged over draws
};

struct CouplingScan {
  std::vector<CouplingRow> rows;
  double n_slope = 0.0;      // d log n / d log λ
  double width_slope = 0.0;  // d log radius / d log λ
};

CouplingScan coupling_scan(int d, double E, double beta, std::span<const double> lambdas, std::uint64_t seed,
                           int draws = 3, int max_L = 256);

/// Log-log slope of shell size against L.
double shell_growth_slope(int d, double E, double beta, std::span<const int> ladder);

}  // namespace wigner
