#include "wigner/fermi.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <fftw3.h>

#include "wigner/errors.hpp"
#include "wigner/numeric.hpp"
#include "wigner/rng.hpp"
#include "wigner/spectra.hpp"

namespace wigner {

namespace {

std::size_t site_count(int d, int L) {
  std::size_t count = 1;
  for (int i = 0; i < d; ++i) count *= static_cast<std::size_t>(L);
  return count;
}

std::size_t storage_index(const LatticePoint& k, int d, int L) {
  std::size_t index = 0;
  for (int i = 0; i < d; ++i) {
    int c = k[i] % L;
    if (c < 0) c += L;
    index = index * static_cast<std::size_t>(L) + static_cast<std::size_t>(c);
  }
  return index;
}

}  // namespace

PotentialField sample_potential(int d, int L, double lambda, std::uint64_t seed) {
  if (d < 1 || L < 1) throw std::invalid_argument("potential needs d >= 1 and L >= 1");
  if (!(lambda > 0)) throw std::invalid_argument("coupling lambda must be positive");
  PotentialField field{d, L, lambda, std::vector<double>(site_count(d, L))};
  rng::KeyedStream stream(rng::mix(seed, 0x706f74ULL));
  for (auto& v : field.values) v = lambda * stream.normal();
  return field;
}

const std::complex<double>& FourierPotential::at(const LatticePoint& k) const {
  return values[storage_index(k, d, L)];
}

FourierPotential fourier_potential(const PotentialField& field) {
  const std::size_t sites = field.values.size();
  if (sites != site_count(field.d, field.L)) throw std::invalid_argument("potential has the wrong number of sites");

  // Λ_L and its dual are both indexed mod L, and e^{ip·x} with p = 2πk/L is
  // L-periodic in x and k, so the sum is FFTW's unnormalized backward DFT.
  FourierPotential out{field.d, field.L, field.lambda, std::vector<std::complex<double>>(sites)};
  std::vector<std::complex<double>> input(sites);
  for (std::size_t i = 0; i < sites; ++i) input[i] = {field.values[i], 0.0};

  std::vector<int> dims(static_cast<std::size_t>(field.d), field.L);
  fftw_plan plan = fftw_plan_dft(field.d, dims.data(), reinterpret_cast<fftw_complex*>(input.data()),
                                 reinterpret_cast<fftw_complex*>(out.values.data()), FFTW_BACKWARD, FFTW_ESTIMATE);
  if (plan == nullptr) throw std::runtime_error("FFTW could not create a plan");
  fftw_execute(plan);
  fftw_destroy_plan(plan);

  const double norm = 1.0 / static_cast<double>(sites);
  for (auto& z : out.values) z *= norm;
  return out;
}

EffectiveMatrix build_effective_matrix(const LatticeShell& shell, const FourierPotential& vhat) {
  if (shell.d != vhat.d || shell.L != vhat.L) throw std::invalid_argument("shell and potential lattices differ");
  if (shell.empty()) throw std::invalid_argument("cannot build an effective matrix on an empty shell");

  const int n = static_cast<int>(shell.size());
  EffectiveMatrix em{shell, HermitianSample(n), 1.0};
  for (int p = 0; p < n; ++p) {
    for (int q = p; q < n; ++q) {
      const LatticePoint diff = difference(shell.points[p], shell.points[q], shell.d, shell.L);
      const LatticePoint neg = negate(diff, shell.d, shell.L);
      const LatticePoint canonical = std::min(diff, neg);
      std::complex<double> value = vhat.at(canonical);
      if (diff == neg) value = {value.real(), 0.0};
      else if (diff != canonical) value = std::conj(value);
      em.Y.set(p, q, value);
    }
  }
  const double volume = static_cast<double>(site_count(shell.d, shell.L));
  em.c_n = std::sqrt(volume / (vhat.lambda * vhat.lambda * n));
  return em;
}

HermitianSample rescale(const EffectiveMatrix& em) {
  const int n = em.Y.n();
  HermitianSample out(n);
  for (int p = 0; p < n; ++p) {
    for (int q = p; q < n; ++q) out.set(p, q, em.c_n * em.Y(p, q));
  }
  return out;
}

HermitianSample sample_fermi_matrix(const LatticeShell& shell, double lambda, std::uint64_t seed) {
  return rescale(build_effective_matrix(shell, fourier_potential(sample_potential(shell.d, shell.L, lambda, seed))));
}

int coupling_lattice_size(double lambda) {
  if (!(lambda > 0)) throw std::invalid_argument("coupling lambda must be positive");
  const double target = 1.0 / (lambda * lambda);
  return std::max(2, 2 * static_cast<int>(std::lround(target / 2.0)));
}

CouplingScan coupling_scan(int d, double E, double beta, std::span<const double> lambdas, std::uint64_t seed,
                           int draws, int max_L) {
  if (lambdas.size() < 3) throw std::invalid_argument("coupling scan needs at least 3 lambda values");
  if (draws < 1) throw std::invalid_argument("coupling scan needs at least one draw");

  CouplingScan scan;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const double lambda = lambdas[i];
    const int L = coupling_lattice_size(lambda);
    if (L > max_L) {
      throw BudgetExceeded("coupling scan: L=" + std::to_string(L) + " exceeds max_L=" + std::to_string(max_L));
    }
    const LatticeShell shell = enumerate_shell(d, L, E, beta);
    if (shell.empty()) throw std::invalid_argument("coupling scan: empty shell at L=" + std::to_string(L));

    double radius = 0.0;
    for (int draw = 0; draw < draws; ++draw) {
      const auto field = sample_potential(d, L, lambda, rng::mix(seed, i, static_cast<std::uint64_t>(draw)));
      const auto em = build_effective_matrix(shell, fourier_potential(field));
      const auto eig = eigenvalues(em.Y);
      radius += std::max(std::abs(eig.front()), std::abs(eig.back()));
    }
    scan.rows.push_back({lambda, L, static_cast<int>(shell.size()), radius / draws});
  }

  std::vector<double> xs, ns, widths;
  for (const auto& row : scan.rows) {
    xs.push_back(row.lambda);
    ns.push_back(row.n);
    widths.push_back(row.spectral_radius);
  }
  scan.n_slope = loglog_slope(xs, ns);
  scan.width_slope = loglog_slope(xs, widths);
  return scan;
}

double shell_growth_slope(int d, double E, double beta, std::span<const int> ladder) {
  std::vector<double> xs, ns;
  for (int L : ladder) {
    xs.push_back(L);
    ns.push_back(static_cast<double>(enumerate_shell(d, L, E, beta).size()));
  }
  return loglog_slope(xs, ns);
}

}  // namespace wigner
