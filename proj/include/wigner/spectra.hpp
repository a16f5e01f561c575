#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "wigner/ensembles.hpp"

namespace wigner {

Eigen::MatrixXcd to_eigen(const HermitianSample& sample);

/// Ascending eigenvalues. Real samples go through the real symmetric solver.
/// Throws std::runtime_error if the solver does not converge.
std::vector<double> eigenvalues(const HermitianSample& sample);

struct Eigensystem {
  Eigen::VectorXd values;
  Eigen::MatrixXcd vectors;  // columns
};

Eigensystem eigensystem(const HermitianSample& sample);

/// (1/n)·Σ λ_i^k for k = 0..K, with moments[0] = 1 exactly.
std::vector<double> empirical_moments(std::span<const double> eigenvalues, int K);
std::vector<double> empirical_moments(const HermitianSample& sample, int K);

/// C_m = (2m)!/(m!(m+1)!), exact for m ≤ 30. Throws std::overflow_error above.
std::uint64_t catalan(int m);

/// Semicircle moment: 0 for odd k, C_{k/2} for even k. Exact up to k = 60.
double semicircle_moment(int k);

/// An atom of weight w at zero plus (1 − w) times a semicircle of radius r.
/// The semicircle law is w = 0, r = 2.
class ReferenceLaw {
 public:
  enum class Kind { semicircle, scaled_mixture };

  static ReferenceLaw semicircle();
  /// ½·δ₀ + ½·(semicircle of radius `radius`). The default radius √2 is the
  /// law ½δ₀ + ½(1/2π)√(4−2x²)χ(x²≤2)√2 dx.
  static ReferenceLaw scaled_mixture(double radius = 1.4142135623730951);

  Kind kind() const { return kind_; }
  double atom_weight() const { return atom_; }
  double radius() const { return radius_; }

  /// Density of the absolutely continuous part (including its weight).
  double density(double x) const;
  /// Right-continuous CDF.
  double cdf(double x) const;
  /// Left limit F(x−).
  double cdf_left(double x) const;
  /// Semicircle: exact Catalan values. Mixture: adaptive quadrature of the
  /// continuous density plus the atom's contribution.
  double moment(int k) const;

 private:
  ReferenceLaw(Kind kind, double atom, double radius) : kind_(kind), atom_(atom), radius_(radius) {}

  double continuous_cdf(double x) const;

  Kind kind_;
  double atom_;
  double radius_;
};

struct Histogram {
  std::vector<double> edges;  // size = counts.size() + 1
  std::vector<std::uint64_t> counts;
};

/// Freedman–Diaconis binning unless `bins` is given.
Histogram make_histogram(std::span<const double> values, std::optional<int> bins = std::nullopt);

struct SpectralSummary {
  std::vector<double> eigenvalues;
  std::vector<double> moments;
  Histogram histogram;
  double operator_norm = 0.0;
  double zero_tol = 0.0;
  double atom_at_zero = 0.0;
};

/// Default threshold for "zero" eigenvalues: 1e-8·‖X‖.
double default_zero_tol(double operator_norm);

SpectralSummary summarize(const HermitianSample& sample, int K, std::optional<double> zero_tol = std::nullopt);
SpectralSummary summarize(std::vector<double> eigenvalues, int K, std::optional<double> zero_tol = std::nullopt);

/// sup_x |F_n(x) − F(x)| over the sorted eigenvalues, comparing both one-sided
/// limits at every jump. If the law has an atom at zero, eigenvalues with
/// |λ| ≤ snap_to_zero are treated as exactly zero.
double ks_distance(std::span<const double> sorted_eigenvalues, const ReferenceLaw& law, double snap_to_zero = 0.0);
double ks_distance(const SpectralSummary& summary, const ReferenceLaw& law);

/// Fraction of eigenvalues with |λ| ≤ zero_tol.
double atom_mass(std::span<const double> eigenvalues, double zero_tol);
double atom_mass(const SpectralSummary& summary, double zero_tol);

/// Number of eigenvalues with |λ| > zero_tol.
int numerical_rank(std::span<const double> eigenvalues, double zero_tol);

}  // namespace wigner
