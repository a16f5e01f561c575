#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "wigner/relations.hpp"

namespace wigner {

/// Centered, unit-variance entry laws. Complex Gaussians are circular:
/// E|a|² = 1 and E[a²] = 0 off the real classes.
enum class Distribution { gaussian_complex, gaussian_real, rademacher };

std::string_view to_string(Distribution dist);
Distribution parse_distribution(std::string_view name);
bool is_gaussian(Distribution dist);

/// How entries inside one equivalence class are tied together. Only the
/// equality rule is implemented: every member carries the class value or its
/// conjugate.
struct CorrelationRule {
  enum class Mode { equal };
  Mode mode = Mode::equal;
};

struct EnsembleSpec {
  EquivalenceRelation relation;
  Distribution distribution = Distribution::gaussian_complex;
  CorrelationRule rule{};
  std::uint64_t seed = 0;
};

/// An n×n Hermitian matrix. Writes go through set(), which stores the
/// conjugate at the transposed position, so X = X† holds exactly.
class HermitianSample {
 public:
  HermitianSample() = default;
  explicit HermitianSample(int n);

  int n() const { return n_; }

  /// 0-based access.
  const std::complex<double>& operator()(int row, int col) const {
    return entries_[static_cast<std::size_t>(row) * n_ + col];
  }

  /// Sets X[row][col] = value and X[col][row] = conj(value). Diagonal writes
  /// keep only the real part.
  void set(int row, int col, std::complex<double> value);

  /// Row-major view of all n² entries.
  std::span<const std::complex<double>> entries() const { return entries_; }

  bool is_real() const;

  friend bool operator==(const HermitianSample&, const HermitianSample&) = default;

 private:
  int n_ = 0;
  std::vector<std::complex<double>> entries_;
};

/// Seed of the index-th member of a batch.
std::uint64_t derived_seed(std::uint64_t seed, std::uint64_t index);

/// One draw per class, keyed by (seed, class key), propagated to all members
/// and scaled by 1/√n.
HermitianSample sample_matrix(const EnsembleSpec& spec);

/// Independent samples; sample i uses derived_seed(spec.seed, i).
std::vector<HermitianSample> sample_batch(const EnsembleSpec& spec, int count);

/// E[a(P)·a(P')] for the unscaled entries. Gaussian families only.
std::complex<double> covariance(const EnsembleSpec& spec, IndexPair a, IndexPair b);

}  // namespace wigner
