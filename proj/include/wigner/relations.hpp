#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <numbers>
#include <span>
#include <string_view>
#include <vector>

#include "wigner/lattice.hpp"

namespace wigner {

/// A matrix position (p, q), 1-based.
struct IndexPair {
  int p = 1;
  int q = 1;

  friend auto operator<=>(const IndexPair&, const IndexPair&) = default;
};

constexpr IndexPair transposed(IndexPair pair) { return {pair.q, pair.p}; }

/// Opaque, totally ordered token naming an equivalence class.
struct ClassKey {
  std::uint64_t value = 0;

  friend auto operator<=>(const ClassKey&, const ClassKey&) = default;
};

/// Where an entry sits inside its class. One value is drawn per class for the
/// representative; each member carries either that value or its conjugate.
struct EntryClass {
  ClassKey key;
  bool conjugated = false;
  /// The class contains a member reachable from itself by an odd number of
  /// transpositions, so its common value must be real (e.g. the diagonal).
  bool self_conjugate = false;
};

enum class RelationKind { iid, flip, violating, fermi, custom };

std::string_view to_string(RelationKind kind);
RelationKind parse_relation_kind(std::string_view name);

/// Generator of the symmetry group acting on index pairs of an n×n matrix.
struct PairSymmetry {
  std::function<IndexPair(IndexPair, int)> map;
  /// True when the map includes an odd number of transpositions (p,q) ↦ (q,p).
  bool conjugating = false;
};

/// The involution Φ_n(p) = n + 1 − p.
constexpr int reflect(int p, int n) { return n + 1 - p; }

/// Equivalence relation ~_n on index pairs. Pair-based kinds are the orbits of
/// a small symmetry group that always contains the transposition; the fermi
/// kind identifies (p,q) ~ (p',q') iff k_p − k_q = ±(k_p' − k_q') on the torus.
class EquivalenceRelation {
 public:
  /// (p,q) ~ (q,p) only.
  static EquivalenceRelation iid(int n);
  /// (p,q) ~ (q,p) ~ (Φp,Φq) ~ (Φq,Φp).
  static EquivalenceRelation flip(int n);
  /// Closure of (p,q) ~ (q,p) ~ (Φp,q) ~ (Φq,Φp). Even n only.
  static EquivalenceRelation violating(int n);
  /// Indices enumerate shell.points in order.
  static EquivalenceRelation fermi(LatticeShell shell);
  /// Orbits of the group generated by the transposition and `generators`.
  static EquivalenceRelation custom(int n, std::vector<PairSymmetry> generators);

  int n() const { return n_; }
  RelationKind kind() const { return kind_; }
  /// Non-null only for the fermi kind.
  const LatticeShell* shell() const { return shell_.get(); }

  ClassKey class_key(IndexPair pair) const { return classify(pair).key; }
  EntryClass classify(IndexPair pair) const;
  bool related(IndexPair a, IndexPair b) const { return class_key(a) == class_key(b); }

  /// Throws std::out_of_range unless 1 ≤ p,q ≤ n.
  void check_pair(IndexPair pair) const;

 private:
  EquivalenceRelation(int n, RelationKind kind) : n_(n), kind_(kind) {}

  EntryClass classify_orbit(IndexPair pair) const;
  EntryClass classify_fermi(IndexPair pair) const;

  int n_ = 0;
  RelationKind kind_ = RelationKind::iid;
  std::vector<PairSymmetry> generators_;
  std::shared_ptr<const LatticeShell> shell_;
};

/// Shell parameters used when a relation of kind fermi is built by size.
struct FermiParameters {
  int d = 2;
  double E = 2.0;
  double beta = 2.0 * std::numbers::pi;
};

/// Builds a builtin relation. For iid/flip/violating `size` is n; for fermi it
/// is the lattice size L and the shell is enumerated from `fermi`. The custom
/// kind cannot be built by name.
EquivalenceRelation make_relation(RelationKind kind, int size, const FermiParameters& fermi = {});

struct ConditionReport {
  int n = 0;
  /// max_p #{(q,p',q') : (p,q) ~ (p',q')}
  std::uint64_t c1_count = 0;
  /// max_{p,q,p'} #{q' : (p,q) ~ (p',q')}
  std::uint64_t c2_bound = 0;
  /// #{(p,q,p') : (p,q) ~ (q,p'), p ≠ p'}
  std::uint64_t c3_count = 0;
};

struct ScanBudget {
  int max_n = 300;
};

/// Exact counts for the three growth conditions. Throws BudgetExceeded when
/// n is above budget.max_n.
ConditionReport check_conditions(const EquivalenceRelation& relation, const ScanBudget& budget = {});

struct GrowthRow {
  int size = 0;  // ladder value the relation was built from
  ConditionReport report;
};

struct GrowthDiagnostic {
  std::vector<GrowthRow> rows;
  /// log-log slopes against n; −∞ when every count on the ladder is zero.
  double c1_slope = 0.0;
  double c3_slope = 0.0;
  bool c2_constant = false;
  bool pass = false;
};

struct GrowthOptions {
  double margin = 0.1;
  ScanBudget budget;
};

inline constexpr int kDefaultLadder[] = {16, 32, 64, 128};

/// Condition counts along a ladder of sizes plus fitted growth exponents.
/// Passes when both slopes are below 2 − margin and c2 is constant.
GrowthDiagnostic growth_diagnostic(const std::function<EquivalenceRelation(int)>& make,
                                   std::span<const int> ladder, const GrowthOptions& options = {});

GrowthDiagnostic growth_diagnostic(RelationKind kind, std::span<const int> ladder,
                                   const GrowthOptions& options = {},
                                   const FermiParameters& fermi = {});

}  // namespace wigner
