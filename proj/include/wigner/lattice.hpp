#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace wigner {

/// Integer coordinates k of a quasimomentum p = (2π/L)·k in the box
/// Λ_L = {−L/2+1, …, L/2}^d. Unused trailing coordinates are zero.
using LatticePoint = std::array<int, 3>;

/// Reduces an integer coordinate into {−L/2+1, …, L/2}.
int wrap_coordinate(long long c, int L);

LatticePoint wrap_point(const LatticePoint& k, int d, int L);
LatticePoint difference(const LatticePoint& a, const LatticePoint& b, int d, int L);
LatticePoint negate(const LatticePoint& k, int d, int L);

/// Discrete Fermi surface: quasimomenta with |p²/2 − E| ≤ β/L, p taken as the
/// representative in [−π, π)^d.
struct LatticeShell {
  int d = 2;
  int L = 0;
  double E = 0.0;
  double beta = 0.0;
  std::vector<LatticePoint> points;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
};

/// Inclusive bounds on the integer |k|² accepted by the shell. Membership is
/// decided on |k|² alone so that p and −p always agree.
struct ShellBounds {
  long double lower;
  long double upper;
};

ShellBounds shell_bounds(int L, double E, double beta);

/// Enumerates the shell in lexicographic order of coordinates.
/// Requires d ∈ {2,3}, L even and ≥ 4, E > 0, β > 0 and √(2E) < π. An empty
/// shell is returned as-is rather than reported as an error.
LatticeShell enumerate_shell(int d, int L, double E, double beta);

}  // namespace wigner
