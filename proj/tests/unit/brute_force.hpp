#pragma once

// Literal-definition reference counts, O(n⁴), for cross-checking.

#include <algorithm>
#include <cstdint>
#include <functional>

#include "wigner/relations.hpp"

namespace brute {

using Related = std::function<bool(wigner::IndexPair, wigner::IndexPair)>;

inline wigner::ConditionReport conditions(int n, const Related& related) {
  wigner::ConditionReport r;
  r.n = n;
  for (int p = 1; p <= n; ++p) {
    std::uint64_t c1 = 0;
    for (int q = 1; q <= n; ++q) {
      for (int pp = 1; pp <= n; ++pp) {
        std::uint64_t c2 = 0;
        for (int qq = 1; qq <= n; ++qq) c2 += related({p, q}, {pp, qq});
        c1 += c2;
        r.c2_bound = std::max(r.c2_bound, c2);
        if (pp != p && related({p, q}, {q, pp})) ++r.c3_count;
      }
    }
    r.c1_count = std::max(r.c1_count, c1);
  }
  return r;
}

inline wigner::ConditionReport conditions(const wigner::EquivalenceRelation& rel) {
  return conditions(rel.n(), [&](wigner::IndexPair a, wigner::IndexPair b) { return rel.related(a, b); });
}

}  // namespace brute
