#include "wigner/lattice.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace wigner {

int wrap_coordinate(long long c, int L) {
  const long long half = L / 2;
  long long shifted = (c + half - 1) % L;
  if (shifted < 0) shifted += L;
  return static_cast<int>(shifted - half + 1);
}

LatticePoint wrap_point(const LatticePoint& k, int d, int L) {
  LatticePoint out{0, 0, 0};
  for (int i = 0; i < d; ++i) out[i] = wrap_coordinate(k[i], L);
  return out;
}

LatticePoint difference(const LatticePoint& a, const LatticePoint& b, int d, int L) {
  LatticePoint out{0, 0, 0};
  for (int i = 0; i < d; ++i) out[i] = wrap_coordinate(static_cast<long long>(a[i]) - b[i], L);
  return out;
}

LatticePoint negate(const LatticePoint& k, int d, int L) {
  LatticePoint out{0, 0, 0};
  for (int i = 0; i < d; ++i) out[i] = wrap_coordinate(-static_cast<long long>(k[i]), L);
  return out;
}

ShellBounds shell_bounds(int L, double E, double beta) {
  // p²/2 = 2π²|k|²/L², so |p²/2 − E| ≤ β/L  ⟺  |k|² ∈ [(E − β/L), (E + β/L)]·L²/(2π²).
  const long double pi = std::numbers::pi_v<long double>;
  const long double scale = static_cast<long double>(L) * L / (2 * pi * pi);
  const long double width = static_cast<long double>(beta) / L;
  return {(E - width) * scale, (E + width) * scale};
}

LatticeShell enumerate_shell(int d, int L, double E, double beta) {
  if (d != 2 && d != 3) throw std::invalid_argument("shell dimension must be 2 or 3");
  if (L < 4 || L % 2 != 0) throw std::invalid_argument("L must be even and at least 4");
  if (!(E > 0)) throw std::invalid_argument("energy E must be positive");
  if (!(beta > 0)) throw std::invalid_argument("shell width beta must be positive");
  if (!(std::sqrt(2.0 * E) < std::numbers::pi)) {
    throw std::invalid_argument("sqrt(2E) must lie inside the Brillouin zone (< pi)");
  }

  LatticeShell shell{d, L, E, beta, {}};
  const ShellBounds bounds = shell_bounds(L, E, beta);
  const int lo = -L / 2 + 1;
  const int hi = L / 2;
  const int third_lo = d == 3 ? lo : 0;
  const int third_hi = d == 3 ? hi : 0;
  for (int a = lo; a <= hi; ++a) {
    for (int b = lo; b <= hi; ++b) {
      for (int c = third_lo; c <= third_hi; ++c) {
        const long double norm2 = static_cast<long double>(a) * a + static_cast<long double>(b) * b +
                                  static_cast<long double>(c) * c;
        if (norm2 >= bounds.lower && norm2 <= bounds.upper) shell.points.push_back({a, b, c});
      }
    }
  }
  return shell;
}

}  // namespace wigner
