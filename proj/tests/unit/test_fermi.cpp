#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <set>

#include "wigner/errors.hpp"
#include "wigner/fermi.hpp"
#include "wigner/lattice.hpp"
#include "wigner/relations.hpp"
#include "wigner/spectra.hpp"

using namespace wigner;
using cd = std::complex<double>;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Shell membership straight from the dispersion: |p²/2 − E| ≤ β/L.
std::size_t brute_shell_size(int d, int L, double E, double beta) {
  std::size_t count = 0;
  const int lo = -L / 2 + 1;
  const int hi = L / 2;
  const int zmax = d == 3 ? hi : lo;
  for (int a = lo; a <= hi; ++a) {
    for (int b = lo; b <= hi; ++b) {
      for (int c = lo; c <= zmax; ++c) {
        const double k2 = double(a) * a + double(b) * b + (d == 3 ? double(c) * c : 0.0);
        const double energy = 0.5 * k2 * (kTwoPi / L) * (kTwoPi / L);
        count += std::abs(energy - E) <= beta / L;
      }
    }
  }
  return count;
}

// v̂(p) = L^{-d} Σ_x v(x) e^{i p·x}, summed directly.
cd direct_dft(const PotentialField& f, const LatticePoint& k) {
  cd sum = 0;
  const int L = f.L;
  for (int x = 0; x < L; ++x) {
    for (int y = 0; y < L; ++y) {
      const double phase = kTwoPi / L * (double(k[0]) * x + double(k[1]) * y);
      sum += f.values[static_cast<std::size_t>(x) * L + y] * std::polar(1.0, phase);
    }
  }
  return sum / double(L * L);
}

}  // namespace

TEST_CASE("shell enumeration matches a direct scan") {
  CHECK(enumerate_shell(2, 16, 2.0, kTwoPi).size() == 28);
  for (int L : {4, 8, 16, 32, 64}) {
    for (double E : {0.5, 1.0, 2.0, 3.0}) {
      for (double beta : {0.5, 2.0, kTwoPi}) {
        CAPTURE(L); CAPTURE(E); CAPTURE(beta);
        CHECK(enumerate_shell(2, L, E, beta).size() == brute_shell_size(2, L, E, beta));
      }
    }
  }
  CHECK(enumerate_shell(3, 16, 2.0, kTwoPi).size() == brute_shell_size(3, 16, 2.0, kTwoPi));
}

TEST_CASE("wide shells contain the whole lattice; narrow ones may be empty") {
  CHECK(enumerate_shell(2, 8, 1.0, 1000.0).size() == 64);
  CHECK(enumerate_shell(2, 4, 2.0, 1e-6).empty());
}

TEST_CASE("shell validation") {
  CHECK_THROWS_AS(enumerate_shell(1, 16, 2.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_shell(2, 15, 2.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_shell(2, 2, 2.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_shell(2, 16, -1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_shell(2, 16, 5.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_shell(2, 16, 2.0, 0.0), std::invalid_argument);
}

TEST_CASE("shells are symmetric under p -> -p and sorted") {
  for (int L : {16, 32}) {
    const auto shell = enumerate_shell(2, L, 2.0, kTwoPi);
    const std::set<LatticePoint> points(shell.points.begin(), shell.points.end());
    for (const auto& p : shell.points) CHECK(points.count(negate(p, 2, L)) == 1);
    CHECK(std::is_sorted(shell.points.begin(), shell.points.end()));
  }
}

TEST_CASE("shell size grows like L^(d-1)") {
  const std::vector<int> ladder{16, 32, 64, 128};
  const double slope = shell_growth_slope(2, 2.0, kTwoPi, ladder);
  CHECK(slope >= 0.8);
  CHECK(slope <= 1.2);
}

TEST_CASE("lattice wrapping") {
  CHECK(wrap_coordinate(8, 16) == 8);
  CHECK(wrap_coordinate(9, 16) == -7);
  CHECK(wrap_coordinate(-7, 16) == -7);
  CHECK(wrap_coordinate(-8, 16) == 8);
  CHECK(negate({8, -3, 0}, 2, 16) == LatticePoint{8, 3, 0});
  CHECK(difference({8, 1, 0}, {-7, 0, 0}, 2, 16) == LatticePoint{-1, 1, 0});
}

TEST_CASE("fft agrees with the direct sum") {
  const auto field = sample_potential(2, 8, 0.8, 77);
  const auto vhat = fourier_potential(field);
  for (int a = -3; a <= 4; ++a) {
    for (int b = -3; b <= 4; ++b) {
      const LatticePoint k{a, b, 0};
      CHECK(std::abs(vhat.at(k) - direct_dft(field, k)) < 1e-13);
    }
  }
}

TEST_CASE("fourier examples: constant field and single site") {
  PotentialField constant{2, 8, 1.0, std::vector<double>(64, 0.3)};
  const auto c = fourier_potential(constant);
  CHECK(std::abs(c.at({0, 0, 0}) - cd(0.3)) < 1e-15);
  CHECK(std::abs(c.at({1, 2, 0})) < 1e-15);
  PotentialField site{2, 8, 1.0, std::vector<double>(64, 0.0)};
  site.values[9] = 1.0;
  const auto s = fourier_potential(site);
  for (int a = -3; a <= 4; ++a) CHECK(std::abs(s.at({a, 1, 0})) == doctest::Approx(1.0 / 64));
}

TEST_CASE("potential field statistics") {
  const auto field = sample_potential(2, 64, 0.5, 1);
  double mean = 0, var = 0;
  for (double v : field.values) {
    mean += v / field.sites();
    var += v * v / field.sites();
  }
  CHECK(std::abs(mean) < 4 * 0.5 / 64);
  CHECK(var == doctest::Approx(0.25).epsilon(0.05));
  CHECK(sample_potential(2, 16, 1.0, 3).values == sample_potential(2, 16, 1.0, 3).values);
  CHECK(sample_potential(2, 16, 1.0, 3).values != sample_potential(2, 16, 1.0, 4).values);
}

TEST_CASE("unit coupling power spectrum at L=16") {
  double power = 0;
  const int draws = 1000;
  for (int i = 0; i < draws; ++i) {
    const auto vhat = fourier_potential(sample_potential(2, 16, 1.0, 500 + i));
    for (const auto& v : vhat.values) power += std::norm(v) * 256 / (256.0 * draws);
  }
  CHECK(power >= 0.9);
  CHECK(power <= 1.1);
}

TEST_CASE("effective matrix structure") {
  const auto shell = enumerate_shell(2, 32, 2.0, kTwoPi);
  const auto vhat = fourier_potential(sample_potential(2, 32, 0.5, 9));
  const auto em = build_effective_matrix(shell, vhat);
  const int n = static_cast<int>(shell.size());
  const auto rel = EquivalenceRelation::fermi(shell);
  for (int p = 0; p < n; ++p) {
    CHECK(em.Y(p, p) == em.Y(0, 0));
    for (int q = 0; q < n; ++q) {
      REQUIRE(em.Y(p, q) == std::conj(em.Y(q, p)));
      CHECK(em.Y(p, q) == vhat.at(difference(shell.points[p], shell.points[q], 2, 32)));
    }
  }
  for (int p = 0; p < n; p += 3) {
    for (int q = 0; q < n; q += 2) {
      for (int r = 0; r < n; r += 5) {
        for (int s = 0; s < n; ++s) {
          if (!rel.related({p + 1, q + 1}, {r + 1, s + 1})) continue;
          CHECK((em.Y(p, q) == em.Y(r, s) || em.Y(p, q) == std::conj(em.Y(r, s))));
        }
      }
    }
  }
  CHECK(em.c_n * em.c_n == doctest::Approx(32.0 * 32.0 / (0.25 * n)));
  CHECK_THROWS_AS(build_effective_matrix(enumerate_shell(2, 16, 2.0, kTwoPi), vhat), std::invalid_argument);
}

TEST_CASE("c_n is 1 when lambda = 1 and L^d = n") {
  const auto shell = enumerate_shell(2, 8, 1.0, 1000.0);
  REQUIRE(shell.size() == 64);
  const auto em = build_effective_matrix(shell, fourier_potential(sample_potential(2, 8, 1.0, 2)));
  CHECK(em.c_n == doctest::Approx(1.0));
}

TEST_CASE("rescaled entries have variance 1/n and a semicircle spectrum") {
  const auto shell = enumerate_shell(2, 64, 2.0, kTwoPi);
  const int n = static_cast<int>(shell.size());
  double var = 0;
  double ks = 0;
  for (int draw = 0; draw < 100; ++draw) {
    const auto x = sample_fermi_matrix(shell, 1.0, 7000 + draw);
    for (auto v : x.entries()) var += std::norm(v) * n / (double(n) * n * 100);
    if (draw < 10) ks += ks_distance(summarize(x, 2), ReferenceLaw::semicircle()) / 10;
  }
  CHECK(var >= 0.85);
  CHECK(var <= 1.15);
  CHECK(ks <= 0.1);
}

TEST_CASE("coupling scan") {
  CHECK(coupling_lattice_size(0.25) == 16);
  CHECK(coupling_lattice_size(1.0 / 6) == 36);
  CHECK(coupling_lattice_size(0.125) == 64);
  CHECK(coupling_lattice_size(1.0) == 2);
  const std::vector<double> lambdas{1.0 / 4, 1.0 / 5, 1.0 / 6, 1.0 / 8};
  const auto scan = coupling_scan(2, 2.0, kTwoPi, lambdas, 5);
  CHECK(scan.rows.size() == 4);
  CHECK(scan.n_slope >= -2.5);
  CHECK(scan.n_slope <= -1.5);
  CHECK(scan.width_slope >= 1.5);
  CHECK(scan.width_slope <= 2.5);
  CHECK_THROWS_AS(coupling_scan(2, 2.0, kTwoPi, std::vector<double>{0.25, 0.2}, 5), std::invalid_argument);
  CHECK_THROWS_AS(coupling_scan(2, 2.0, kTwoPi, lambdas, 5, 3, 32), BudgetExceeded);
}
