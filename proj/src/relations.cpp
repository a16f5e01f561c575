#include "wigner/relations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "wigner/errors.hpp"
#include "wigner/numeric.hpp"

namespace wigner {

std::string_view to_string(RelationKind kind) {
  switch (kind) {
    case RelationKind::iid: return "iid";
    case RelationKind::flip: return "flip";
    case RelationKind::violating: return "violating";
    case RelationKind::fermi: return "fermi";
    case RelationKind::custom: return "custom";
  }
  return "unknown";
}

RelationKind parse_relation_kind(std::string_view name) {
  if (name == "iid") return RelationKind::iid;
  if (name == "flip") return RelationKind::flip;
  if (name == "violating") return RelationKind::violating;
  if (name == "fermi") return RelationKind::fermi;
  if (name == "custom") return RelationKind::custom;
  throw std::invalid_argument("unknown relation kind: " + std::string(name));
}

namespace {

void require_dimension(int n) {
  if (n < 1) throw std::invalid_argument("relation dimension n must be at least 1");
}

}  // namespace

EquivalenceRelation EquivalenceRelation::iid(int n) {
  require_dimension(n);
  return EquivalenceRelation(n, RelationKind::iid);
}

EquivalenceRelation EquivalenceRelation::flip(int n) {
  require_dimension(n);
  EquivalenceRelation rel(n, RelationKind::flip);
  rel.generators_.push_back(
      {[](IndexPair x, int m) { return IndexPair{reflect(x.p, m), reflect(x.q, m)}; }, false});
  return rel;
}

EquivalenceRelation EquivalenceRelation::violating(int n) {
  require_dimension(n);
  if (n % 2 != 0) {
    throw std::invalid_argument("the violating relation is defined for even n only");
  }
  EquivalenceRelation rel(n, RelationKind::violating);
  rel.generators_.push_back({[](IndexPair x, int m) { return IndexPair{reflect(x.p, m), x.q}; }, false});
  rel.generators_.push_back(
      {[](IndexPair x, int m) { return IndexPair{reflect(x.q, m), reflect(x.p, m)}; }, true});
  return rel;
}

EquivalenceRelation EquivalenceRelation::fermi(LatticeShell shell) {
  if (shell.empty()) throw std::invalid_argument("fermi relation needs a non-empty shell");
  EquivalenceRelation rel(static_cast<int>(shell.size()), RelationKind::fermi);
  rel.shell_ = std::make_shared<const LatticeShell>(std::move(shell));
  return rel;
}

EquivalenceRelation EquivalenceRelation::custom(int n, std::vector<PairSymmetry> generators) {
  require_dimension(n);
  EquivalenceRelation rel(n, RelationKind::custom);
  for (auto& g : generators) {
    if (!g.map) throw std::invalid_argument("custom relation generator is empty");
  }
  rel.generators_ = std::move(generators);
  return rel;
}

void EquivalenceRelation::check_pair(IndexPair pair) const {
  if (pair.p < 1 || pair.p > n_ || pair.q < 1 || pair.q > n_) {
    throw std::out_of_range("index pair (" + std::to_string(pair.p) + "," + std::to_string(pair.q) +
                            ") outside 1.." + std::to_string(n_));
  }
}

EntryClass EquivalenceRelation::classify(IndexPair pair) const {
  check_pair(pair);
  return kind_ == RelationKind::fermi ? classify_fermi(pair) : classify_orbit(pair);
}

EntryClass EquivalenceRelation::classify_orbit(IndexPair pair) const {
  struct State {
    IndexPair pair;
    bool parity;
  };
  std::vector<State> orbit;
  orbit.reserve(16);
  orbit.push_back({pair, false});

  auto visit = [&](IndexPair next, bool parity) {
    for (const auto& s : orbit) {
      if (s.pair == next && s.parity == parity) return;
    }
    if (next.p < 1 || next.p > n_ || next.q < 1 || next.q > n_) {
      throw std::logic_error("relation generator left the index range");
    }
    orbit.push_back({next, parity});
  };

  for (std::size_t i = 0; i < orbit.size(); ++i) {
    const State s = orbit[i];
    visit(transposed(s.pair), !s.parity);
    for (const auto& g : generators_) visit(g.map(s.pair, n_), s.parity != g.conjugating);
  }

  IndexPair rep = orbit.front().pair;
  for (const auto& s : orbit) rep = std::min(rep, s.pair);
  bool seen_even = false;
  bool seen_odd = false;
  for (const auto& s : orbit) {
    if (s.pair == rep) (s.parity ? seen_odd : seen_even) = true;
  }

  EntryClass out;
  out.key.value = static_cast<std::uint64_t>(rep.p - 1) * static_cast<std::uint64_t>(n_) +
                  static_cast<std::uint64_t>(rep.q - 1);
  out.self_conjugate = seen_even && seen_odd;
  out.conjugated = !seen_even;
  return out;
}

EntryClass EquivalenceRelation::classify_fermi(IndexPair pair) const {
  const LatticeShell& sh = *shell_;
  const LatticePoint diff = difference(sh.points[pair.p - 1], sh.points[pair.q - 1], sh.d, sh.L);
  const LatticePoint neg = negate(diff, sh.d, sh.L);
  const LatticePoint canonical = std::min(diff, neg);

  EntryClass out;
  std::uint64_t code = 0;
  for (int i = sh.d - 1; i >= 0; --i) {
    code = code * static_cast<std::uint64_t>(sh.L) + static_cast<std::uint64_t>(canonical[i] + sh.L / 2 - 1);
  }
  out.key.value = code;
  out.conjugated = diff != canonical;
  out.self_conjugate = diff == neg;
  return out;
}

EquivalenceRelation make_relation(RelationKind kind, int size, const FermiParameters& fermi) {
  switch (kind) {
    case RelationKind::iid: return EquivalenceRelation::iid(size);
    case RelationKind::flip: return EquivalenceRelation::flip(size);
    case RelationKind::violating: return EquivalenceRelation::violating(size);
    case RelationKind::fermi: {
      LatticeShell shell = enumerate_shell(fermi.d, size, fermi.E, fermi.beta);
      if (shell.empty()) {
        throw std::invalid_argument("fermi shell is empty for L=" + std::to_string(size));
      }
      return EquivalenceRelation::fermi(std::move(shell));
    }
    case RelationKind::custom: break;
  }
  throw std::invalid_argument("custom relations are built from explicit generators");
}

ConditionReport check_conditions(const EquivalenceRelation& relation, const ScanBudget& budget) {
  const int n = relation.n();
  if (n > budget.max_n) {
    throw BudgetExceeded("condition scan: n=" + std::to_string(n) + " exceeds budget max_n=" +
                         std::to_string(budget.max_n));
  }
  const std::size_t un = static_cast<std::size_t>(n);
  std::vector<std::uint64_t> keys(un * un);
  for (int p = 1; p <= n; ++p) {
    for (int q = 1; q <= n; ++q) keys[(p - 1) * un + (q - 1)] = relation.class_key({p, q}).value;
  }

  std::unordered_map<std::uint64_t, std::uint64_t> class_size;
  class_size.reserve(un * un);
  for (auto k : keys) ++class_size[k];

  ConditionReport report;
  report.n = n;

  // (C1): the class of (p,q) contributes all its members (p',q') for every q.
  for (std::size_t p = 0; p < un; ++p) {
    std::uint64_t total = 0;
    for (std::size_t q = 0; q < un; ++q) total += class_size[keys[p * un + q]];
    report.c1_count = std::max(report.c1_count, total);
  }

  // (C2): largest number of members of one class within a single row p'.
  // (C3): per column q, ordered pairs p ≠ p' with (p,q) ~ (p',q) ~ (q,p').
  std::vector<std::uint64_t> scratch(un);
  for (std::size_t r = 0; r < un; ++r) {
    for (std::size_t c = 0; c < un; ++c) scratch[c] = keys[r * un + c];
    std::sort(scratch.begin(), scratch.end());
    for (std::size_t i = 0; i < un;) {
      std::size_t j = i;
      while (j < un && scratch[j] == scratch[i]) ++j;
      report.c2_bound = std::max<std::uint64_t>(report.c2_bound, j - i);
      i = j;
    }
  }
  for (std::size_t q = 0; q < un; ++q) {
    for (std::size_t p = 0; p < un; ++p) scratch[p] = keys[p * un + q];
    std::sort(scratch.begin(), scratch.end());
    std::uint64_t same = 0;
    for (std::size_t i = 0; i < un;) {
      std::size_t j = i;
      while (j < un && scratch[j] == scratch[i]) ++j;
      same += static_cast<std::uint64_t>(j - i) * (j - i);
      i = j;
    }
    report.c3_count += same - un;
  }
  return report;
}

namespace {

double growth_slope(const std::vector<GrowthRow>& rows, std::uint64_t ConditionReport::*field) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& row : rows) {
    const auto v = row.report.*field;
    if (v == 0) continue;
    xs.push_back(row.report.n);
    ys.push_back(static_cast<double>(v));
  }
  if (xs.size() < 2) return -std::numeric_limits<double>::infinity();
  return loglog_slope(xs, ys);
}

}  // namespace

GrowthDiagnostic growth_diagnostic(const std::function<EquivalenceRelation(int)>& make,
                                   std::span<const int> ladder, const GrowthOptions& options) {
  if (ladder.size() < 3) throw std::invalid_argument("growth ladder needs at least 3 points");
  GrowthDiagnostic out;
  for (int size : ladder) out.rows.push_back({size, check_conditions(make(size), options.budget)});

  out.c1_slope = growth_slope(out.rows, &ConditionReport::c1_count);
  out.c3_slope = growth_slope(out.rows, &ConditionReport::c3_count);
  out.c2_constant = std::all_of(out.rows.begin(), out.rows.end(), [&](const GrowthRow& r) {
    return r.report.c2_bound == out.rows.front().report.c2_bound;
  });
  const double limit = 2.0 - options.margin;
  out.pass = out.c1_slope < limit && out.c3_slope < limit && out.c2_constant;
  return out;
}

GrowthDiagnostic growth_diagnostic(RelationKind kind, std::span<const int> ladder,
                                   const GrowthOptions& options, const FermiParameters& fermi) {
  return growth_diagnostic([&](int size) { return make_relation(kind, size, fermi); }, ladder, options);
}

}  // namespace wigner
