#include "wigner/ensembles.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "wigner/parallel.hpp"
#include "wigner/rng.hpp"

namespace wigner {

std::string_view to_string(Distribution dist) {
  switch (dist) {
    case Distribution::gaussian_complex: return "gaussian_complex";
    case Distribution::gaussian_real: return "gaussian_real";
    case Distribution::rademacher: return "rademacher";
  }
  return "unknown";
}

Distribution parse_distribution(std::string_view name) {
  if (name == "gaussian_complex") return Distribution::gaussian_complex;
  if (name == "gaussian_real") return Distribution::gaussian_real;
  if (name == "rademacher") return Distribution::rademacher;
  throw std::invalid_argument("unknown entry distribution: " + std::string(name));
}

bool is_gaussian(Distribution dist) { return dist != Distribution::rademacher; }

HermitianSample::HermitianSample(int n) : n_(n) {
  if (n < 0) throw std::invalid_argument("matrix dimension must be non-negative");
  entries_.assign(static_cast<std::size_t>(n) * n, {0.0, 0.0});
}

void HermitianSample::set(int row, int col, std::complex<double> value) {
  if (row < 0 || row >= n_ || col < 0 || col >= n_) throw std::out_of_range("HermitianSample::set");
  const std::size_t un = static_cast<std::size_t>(n_);
  if (row == col) {
    entries_[row * un + col] = {value.real(), 0.0};
    return;
  }
  entries_[row * un + col] = value;
  entries_[col * un + row] = std::conj(value);
}

bool HermitianSample::is_real() const {
  for (const auto& z : entries_) {
    if (z.imag() != 0.0) return false;
  }
  return true;
}

std::uint64_t derived_seed(std::uint64_t seed, std::uint64_t index) { return rng::mix(seed, index, 0x5eedULL); }

namespace {

std::complex<double> draw_class_value(Distribution dist, std::uint64_t seed, const EntryClass& cls) {
  rng::KeyedStream stream(rng::mix(seed, cls.key.value));
  switch (dist) {
    case Distribution::gaussian_complex: {
      if (cls.self_conjugate) return {stream.normal(), 0.0};
      const double re = stream.normal();
      const double im = stream.normal();
      return {re * std::numbers::sqrt2 / 2, im * std::numbers::sqrt2 / 2};
    }
    case Distribution::gaussian_real: return {stream.normal(), 0.0};
    case Distribution::rademacher: return {stream.rademacher(), 0.0};
  }
  return {};
}

}  // namespace

HermitianSample sample_matrix(const EnsembleSpec& spec) {
  const int n = spec.relation.n();
  HermitianSample out(n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int p = 1; p <= n; ++p) {
    for (int q = p; q <= n; ++q) {
      const EntryClass cls = spec.relation.classify({p, q});
      std::complex<double> v = draw_class_value(spec.distribution, spec.seed, cls);
      if (cls.conjugated) v = std::conj(v);
      out.set(p - 1, q - 1, v * scale);
    }
  }
  return out;
}

std::vector<HermitianSample> sample_batch(const EnsembleSpec& spec, int count) {
  if (count < 1) throw std::invalid_argument("batch count must be at least 1");
  std::vector<HermitianSample> out(static_cast<std::size_t>(count));
  parallel_for(out.size(), [&](std::size_t i) {
    EnsembleSpec member = spec;
    member.seed = derived_seed(spec.seed, i);
    out[i] = sample_matrix(member);
  });
  return out;
}

std::complex<double> covariance(const EnsembleSpec& spec, IndexPair a, IndexPair b) {
  if (!is_gaussian(spec.distribution)) {
    throw std::invalid_argument("covariance kernel is only defined for Gaussian families");
  }
  const EntryClass ca = spec.relation.classify(a);
  const EntryClass cb = spec.relation.classify(b);
  if (ca.key != cb.key) return {0.0, 0.0};
  if (spec.distribution == Distribution::gaussian_real || ca.self_conjugate) return {1.0, 0.0};
  // Circular complex z: E[z·z] = 0 and E[z·conj z] = 1.
  return ca.conjugated != cb.conjugated ? std::complex<double>{1.0, 0.0} : std::complex<double>{0.0, 0.0};
}

}  // namespace wigner
