#include <doctest.h>

#include <limits>

#include <map>
#include <numbers>
#include <set>
#include <stdexcept>

#include "brute_force.hpp"
#include "wigner/errors.hpp"
#include "wigner/lattice.hpp"
#include "wigner/relations.hpp"

using namespace wigner;

namespace {

std::size_t class_size(const EquivalenceRelation& rel, IndexPair pair) {
  std::size_t count = 0;
  for (int p = 1; p <= rel.n(); ++p) {
    for (int q = 1; q <= rel.n(); ++q) count += rel.related(pair, {p, q});
  }
  return count;
}

bool same_report(const ConditionReport& a, const ConditionReport& b) {
  return a.n == b.n && a.c1_count == b.c1_count && a.c2_bound == b.c2_bound && a.c3_count == b.c3_count;
}

}  // namespace

TEST_CASE("flip n=6 identifies (1,2) with (5,6)") {
  const auto rel = EquivalenceRelation::flip(6);
  CHECK(rel.class_key({1, 2}) == rel.class_key({5, 6}));
  CHECK(rel.class_key({1, 2}) == rel.class_key({6, 5}));
  CHECK(rel.class_key({1, 2}) != rel.class_key({1, 3}));
}

TEST_CASE("swap symmetry for every kind") {
  const LatticeShell shell = enumerate_shell(2, 16, 2.0, 2.0 * std::numbers::pi);
  for (const auto& rel : {EquivalenceRelation::iid(7), EquivalenceRelation::flip(7), EquivalenceRelation::flip(8),
                          EquivalenceRelation::violating(8), EquivalenceRelation::fermi(shell)}) {
    for (int p = 1; p <= rel.n(); ++p) {
      for (int q = 1; q <= rel.n(); ++q) REQUIRE(rel.class_key({p, q}) == rel.class_key({q, p}));
    }
  }
}

TEST_CASE("violating n=6: (1,2) ~ (2,6) and generic classes have 8 elements") {
  const auto rel = EquivalenceRelation::violating(6);
  CHECK(rel.related({1, 2}, {2, 6}));
  CHECK(class_size(rel, {1, 2}) == 8);
  CHECK(class_size(EquivalenceRelation::violating(10), {2, 4}) == 8);
}

TEST_CASE("iid related examples and range errors") {
  const auto rel = EquivalenceRelation::iid(4);
  CHECK(rel.related({1, 2}, {2, 1}));
  CHECK_FALSE(rel.related({1, 2}, {1, 3}));
  CHECK_THROWS_AS(rel.check_pair({0, 1}), std::out_of_range);
  CHECK_THROWS_AS(rel.check_pair({1, 5}), std::out_of_range);
  CHECK_THROWS_AS(rel.related({1, 5}, {1, 1}), std::out_of_range);
}

TEST_CASE("violating rejects odd n; unknown kinds are rejected") {
  CHECK_THROWS_AS(EquivalenceRelation::violating(7), std::invalid_argument);
  CHECK_THROWS_AS(parse_relation_kind("banded"), std::invalid_argument);
  for (auto kind : {RelationKind::iid, RelationKind::flip, RelationKind::violating, RelationKind::fermi}) {
    CHECK(parse_relation_kind(to_string(kind)) == kind);
  }
}

TEST_CASE("fermi relation is p-q = ±(p'-q')") {
  const LatticeShell shell = enumerate_shell(2, 16, 2.0, 2.0 * std::numbers::pi);
  const auto rel = EquivalenceRelation::fermi(shell);
  const int n = rel.n();
  REQUIRE(n == static_cast<int>(shell.size()));
  for (int a = 1; a <= n; ++a) {
    for (int b = 1; b <= n; ++b) {
      const LatticePoint d1 = difference(shell.points[a - 1], shell.points[b - 1], 2, 16);
      for (int c = 1; c <= n; c += 3) {
        for (int e = 1; e <= n; e += 2) {
          const LatticePoint d2 = difference(shell.points[c - 1], shell.points[e - 1], 2, 16);
          const bool expected = d1 == d2 || d1 == negate(d2, 2, 16);
          REQUIRE(rel.related({a, b}, {c, e}) == expected);
        }
      }
    }
  }
}

TEST_CASE("custom relation without generators matches iid") {
  const auto custom = EquivalenceRelation::custom(6, {});
  const auto iid = EquivalenceRelation::iid(6);
  for (int p = 1; p <= 6; ++p) {
    for (int q = 1; q <= 6; ++q) {
      for (int r = 1; r <= 6; ++r) CHECK(custom.related({p, q}, {q, r}) == iid.related({p, q}, {q, r}));
    }
  }
}

TEST_CASE("custom relation reproduces flip from its generators") {
  const auto custom = EquivalenceRelation::custom(
      7, {PairSymmetry{[](IndexPair pr, int n) { return IndexPair{reflect(pr.p, n), reflect(pr.q, n)}; }, false}});
  CHECK(same_report(check_conditions(custom), check_conditions(EquivalenceRelation::flip(7))));
}

TEST_CASE("check_conditions equals the literal definition") {
  for (int n = 2; n <= 9; ++n) {
    CAPTURE(n);
    CHECK(same_report(check_conditions(EquivalenceRelation::iid(n)), brute::conditions(EquivalenceRelation::iid(n))));
    CHECK(same_report(check_conditions(EquivalenceRelation::flip(n)), brute::conditions(EquivalenceRelation::flip(n))));
    if (n % 2 == 0) {
      CHECK(same_report(check_conditions(EquivalenceRelation::violating(n)),
                        brute::conditions(EquivalenceRelation::violating(n))));
    }
  }
  const auto fermi = EquivalenceRelation::fermi(enumerate_shell(2, 16, 2.0, 2.0 * std::numbers::pi));
  CHECK(same_report(check_conditions(fermi), brute::conditions(fermi)));
}

TEST_CASE("condition examples") {
  for (int n : {4, 6, 12, 20}) CHECK(check_conditions(EquivalenceRelation::flip(n)).c3_count == 0);
  for (int n : {5, 7, 13, 21}) CHECK(check_conditions(EquivalenceRelation::flip(n)).c3_count == static_cast<std::uint64_t>(n - 1));
  for (int n : {4, 6, 10}) {
    CHECK(check_conditions(EquivalenceRelation::violating(n)).c3_count >= static_cast<std::uint64_t>(n * (n - 1)));
  }
  for (int n : {3, 4, 5}) CHECK(check_conditions(EquivalenceRelation::iid(n)).c1_count == static_cast<std::uint64_t>(2 * n - 1));
  for (int n = 2; n <= 12; ++n) CHECK(check_conditions(EquivalenceRelation::flip(n)).c2_bound <= 4);
  for (int n = 1; n <= 30; ++n) CHECK(check_conditions(EquivalenceRelation::iid(n)).c2_bound <= 2);
}

TEST_CASE("report bounds: 2n-1 <= c1 <= n^3, c2 >= 1") {
  for (int n : {4, 6, 8, 11}) {
    std::vector<EquivalenceRelation> rels{EquivalenceRelation::iid(n), EquivalenceRelation::flip(n)};
    if (n % 2 == 0) rels.push_back(EquivalenceRelation::violating(n));
    for (const auto& rel : rels) {
      const ConditionReport r = check_conditions(rel);
      const auto nn = static_cast<std::uint64_t>(n);
      CHECK(r.c1_count >= 2 * nn - 1);
      CHECK(r.c1_count <= nn * nn * nn);
      CHECK(r.c2_bound >= 1);
    }
  }
}

TEST_CASE("counts are invariant under relabeling p -> n+1-p") {
  for (int n : {6, 7, 8}) {
    std::vector<EquivalenceRelation> rels{EquivalenceRelation::iid(n), EquivalenceRelation::flip(n)};
    if (n % 2 == 0) rels.push_back(EquivalenceRelation::violating(n));
    for (const auto& rel : rels) {
      const auto relabeled = brute::conditions(n, [&](IndexPair a, IndexPair b) {
        return rel.related({reflect(a.p, n), reflect(a.q, n)}, {reflect(b.p, n), reflect(b.q, n)});
      });
      CHECK(same_report(check_conditions(rel), relabeled));
    }
  }
}

TEST_CASE("scan budget is a hard error") {
  CHECK_THROWS_AS(check_conditions(EquivalenceRelation::iid(301)), BudgetExceeded);
  CHECK_NOTHROW(check_conditions(EquivalenceRelation::iid(301), ScanBudget{400}));
}

TEST_CASE("growth diagnostic") {
  const std::vector<int> ladder{8, 16, 32, 64};
  SUBCASE("flip, even ladder: c3 all zero, c1 slope about 1") {
    const GrowthDiagnostic g = growth_diagnostic(RelationKind::flip, ladder);
    CHECK(g.c3_slope == -std::numeric_limits<double>::infinity());
    CHECK(g.c1_slope == doctest::Approx(1.0).epsilon(0.1));
    CHECK(g.c2_constant);
    CHECK(g.pass);
  }
  SUBCASE("violating fails on c3 with slope about 2") {
    const GrowthDiagnostic g = growth_diagnostic(RelationKind::violating, ladder);
    CHECK(g.c3_slope == doctest::Approx(2.0).epsilon(0.05));
    CHECK_FALSE(g.pass);
  }
  SUBCASE("iid passes") { CHECK(growth_diagnostic(RelationKind::iid, ladder).pass); }
  SUBCASE("fermi default ladder passes") {
    const GrowthDiagnostic g = growth_diagnostic(RelationKind::fermi, kDefaultLadder);
    CHECK(g.c3_slope < 2.0);
    CHECK(g.pass);
  }
  SUBCASE("short ladder and budget") {
    CHECK_THROWS_AS(growth_diagnostic(RelationKind::flip, std::vector<int>{8, 16}), std::invalid_argument);
    GrowthOptions tight;
    tight.budget.max_n = 20;
    CHECK_THROWS_AS(growth_diagnostic(RelationKind::flip, ladder, tight), BudgetExceeded);
  }
}
