#include "wigner/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/tanh_sinh.hpp>

namespace wigner {

Eigen::MatrixXcd to_eigen(const HermitianSample& sample) {
  const int n = sample.n();
  Eigen::MatrixXcd m(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) m(r, c) = sample(r, c);
  }
  return m;
}

namespace {

Eigen::MatrixXd real_part(const HermitianSample& sample) {
  const int n = sample.n();
  Eigen::MatrixXd m(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) m(r, c) = sample(r, c).real();
  }
  return m;
}

void require_converged(Eigen::ComputationInfo info) {
  if (info != Eigen::Success) throw std::runtime_error("Hermitian eigensolver did not converge");
}

}  // namespace

std::vector<double> eigenvalues(const HermitianSample& sample) {
  Eigen::VectorXd values;
  if (sample.is_real()) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(real_part(sample), Eigen::EigenvaluesOnly);
    require_converged(solver.info());
    values = solver.eigenvalues();
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(sample), Eigen::EigenvaluesOnly);
    require_converged(solver.info());
    values = solver.eigenvalues();
  }
  std::vector<double> out(values.data(), values.data() + values.size());
  std::sort(out.begin(), out.end());
  return out;
}

Eigensystem eigensystem(const HermitianSample& sample) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(sample), Eigen::ComputeEigenvectors);
  require_converged(solver.info());
  return {solver.eigenvalues(), solver.eigenvectors()};
}

std::vector<double> empirical_moments(std::span<const double> eigenvalues, int K) {
  if (K < 0) throw std::invalid_argument("moment order K must be non-negative");
  std::vector<double> moments(static_cast<std::size_t>(K) + 1, 0.0);
  moments[0] = 1.0;
  if (eigenvalues.empty() || K == 0) return moments;
  for (double lambda : eigenvalues) {
    double power = 1.0;
    for (int k = 1; k <= K; ++k) {
      power *= lambda;
      moments[k] += power;
    }
  }
  const double n = static_cast<double>(eigenvalues.size());
  for (int k = 1; k <= K; ++k) moments[k] /= n;
  return moments;
}

std::vector<double> empirical_moments(const HermitianSample& sample, int K) {
  return empirical_moments(eigenvalues(sample), K);
}

std::uint64_t catalan(int m) {
  if (m < 0) throw std::invalid_argument("catalan index must be non-negative");
  if (m > 30) throw std::overflow_error("catalan(" + std::to_string(m) + ") exceeds exact range");
  // C_{j+1} = C_j·2(2j+1)/(j+2); the division is exact.
  unsigned __int128 c = 1;
  for (int j = 0; j < m; ++j) c = c * (2 * (2 * j + 1)) / (j + 2);
  return static_cast<std::uint64_t>(c);
}

double semicircle_moment(int k) {
  if (k < 0) throw std::invalid_argument("moment order must be non-negative");
  if (k > 60) throw std::overflow_error("semicircle moment beyond k = 60 is not exact");
  if (k % 2 != 0) return 0.0;
  return static_cast<double>(catalan(k / 2));
}

ReferenceLaw ReferenceLaw::semicircle() { return ReferenceLaw(Kind::semicircle, 0.0, 2.0); }

ReferenceLaw ReferenceLaw::scaled_mixture(double radius) {
  if (!(radius > 0)) throw std::invalid_argument("mixture radius must be positive");
  return ReferenceLaw(Kind::scaled_mixture, 0.5, radius);
}

double ReferenceLaw::density(double x) const {
  const double r2 = radius_ * radius_;
  if (x * x >= r2) return 0.0;
  return (1.0 - atom_) * 2.0 / (std::numbers::pi * r2) * std::sqrt(r2 - x * x);
}

double ReferenceLaw::continuous_cdf(double x) const {
  if (x <= -radius_) return 0.0;
  if (x >= radius_) return 1.0;
  const double t = x / radius_;
  return 0.5 + (t * std::sqrt(1.0 - t * t) + std::asin(t)) / std::numbers::pi;
}

double ReferenceLaw::cdf(double x) const {
  const double atom = x >= 0.0 ? atom_ : 0.0;
  return atom + (1.0 - atom_) * continuous_cdf(x);
}

double ReferenceLaw::cdf_left(double x) const {
  const double atom = x > 0.0 ? atom_ : 0.0;
  return atom + (1.0 - atom_) * continuous_cdf(x);
}

double ReferenceLaw::moment(int k) const {
  if (k < 0) throw std::invalid_argument("moment order must be non-negative");
  if (kind_ == Kind::semicircle) return semicircle_moment(k);
  const double atom_part = k == 0 ? atom_ : 0.0;
  if (k % 2 != 0) return 0.0;
  boost::math::quadrature::tanh_sinh<double> integrator;
  const double continuous = integrator.integrate(
      [this, k](double x) { return std::pow(x, k) * density(x); }, -radius_, radius_, 1e-9);
  return atom_part + continuous;
}

Histogram make_histogram(std::span<const double> values, std::optional<int> bins) {
  Histogram h;
  if (values.empty()) return h;
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double lo = sorted.front();
  const double hi = sorted.back();

  int count = 1;
  if (bins) {
    if (*bins < 1) throw std::invalid_argument("histogram needs at least one bin");
    count = *bins;
  } else if (hi > lo) {
    auto quantile = [&](double q) {
      const double pos = q * static_cast<double>(sorted.size() - 1);
      const auto i = static_cast<std::size_t>(pos);
      const double frac = pos - static_cast<double>(i);
      return i + 1 < sorted.size() ? sorted[i] * (1 - frac) + sorted[i + 1] * frac : sorted[i];
    };
    const double iqr = quantile(0.75) - quantile(0.25);
    const double width = 2.0 * iqr / std::cbrt(static_cast<double>(sorted.size()));
    if (width > 0) {
      count = static_cast<int>(std::clamp(std::ceil((hi - lo) / width), 1.0, 10000.0));
    } else {
      count = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(sorted.size()))));
    }
  }

  const double span = hi > lo ? hi - lo : 1.0;
  const double left = hi > lo ? lo : lo - 0.5;
  h.edges.resize(static_cast<std::size_t>(count) + 1);
  for (int i = 0; i <= count; ++i) h.edges[i] = left + span * i / count;
  h.counts.assign(static_cast<std::size_t>(count), 0);
  for (double v : sorted) {
    auto bin = static_cast<long>((v - left) / span * count);
    bin = std::clamp<long>(bin, 0, count - 1);
    ++h.counts[static_cast<std::size_t>(bin)];
  }
  return h;
}

double default_zero_tol(double operator_norm) {
  return std::max(1e-8 * operator_norm, std::numeric_limits<double>::min());
}

SpectralSummary summarize(std::vector<double> values, int K, std::optional<double> zero_tol) {
  std::sort(values.begin(), values.end());
  SpectralSummary s;
  for (double v : values) s.operator_norm = std::max(s.operator_norm, std::abs(v));
  s.zero_tol = zero_tol ? *zero_tol : default_zero_tol(s.operator_norm);
  if (!(s.zero_tol > 0)) throw std::invalid_argument("zero_tol must be positive");
  s.moments = empirical_moments(values, K);
  s.histogram = make_histogram(values);
  s.atom_at_zero = atom_mass(values, s.zero_tol);
  s.eigenvalues = std::move(values);
  return s;
}

SpectralSummary summarize(const HermitianSample& sample, int K, std::optional<double> zero_tol) {
  return summarize(eigenvalues(sample), K, zero_tol);
}

double ks_distance(std::span<const double> sorted, const ReferenceLaw& law, double snap_to_zero) {
  if (sorted.empty()) throw std::invalid_argument("ks_distance needs at least one eigenvalue");
  const bool snap = law.atom_weight() > 0 && snap_to_zero > 0;
  auto value = [&](std::size_t i) {
    const double x = sorted[i];
    return snap && std::abs(x) <= snap_to_zero ? 0.0 : x;
  };

  const double n = static_cast<double>(sorted.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < sorted.size();) {
    const double x = value(i);
    std::size_t j = i + 1;
    while (j < sorted.size() && value(j) == x) ++j;
    worst = std::max(worst, std::abs(static_cast<double>(i) / n - law.cdf_left(x)));
    worst = std::max(worst, std::abs(static_cast<double>(j) / n - law.cdf(x)));
    i = j;
  }
  return worst;
}

double ks_distance(const SpectralSummary& summary, const ReferenceLaw& law) {
  return ks_distance(summary.eigenvalues, law, summary.zero_tol);
}

double atom_mass(std::span<const double> values, double zero_tol) {
  if (values.empty()) return 0.0;
  const auto zeros = std::count_if(values.begin(), values.end(), [&](double v) { return std::abs(v) <= zero_tol; });
  return static_cast<double>(zeros) / static_cast<double>(values.size());
}

double atom_mass(const SpectralSummary& summary, double zero_tol) {
  if (!(zero_tol > 0)) throw std::invalid_argument("zero_tol must be positive");
  return atom_mass(summary.eigenvalues, zero_tol);
}

int numerical_rank(std::span<const double> values, double zero_tol) {
  return static_cast<int>(std::count_if(values.begin(), values.end(), [&](double v) { return std::abs(v) > zero_tol; }));
}

}  // namespace wigner
