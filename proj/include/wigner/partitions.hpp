#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wigner/ensembles.hpp"
#include "wigner/relations.hpp"

namespace wigner {

/// A set partition of {1..k}. Blocks are sorted internally and ordered by
/// their smallest element, so equal partitions compare equal.
struct Partition {
  int k = 0;
  std::vector<std::vector<int>> blocks;

  friend auto operator<=>(const Partition&, const Partition&) = default;
};

/// A partition of {1..k} into 2-element blocks, each stored as (a, b) with
/// a < b and the pairs ordered by a.
struct PairPartition {
  int k = 0;
  std::vector<std::pair<int, int>> pairs;

  friend auto operator<=>(const PairPartition&, const PairPartition&) = default;
};

Partition to_partition(const PairPartition& pp);

/// Parses "1-2,3-4". Throws std::invalid_argument unless the pairs cover
/// {1..k} exactly once.
PairPartition parse_pair_partition(std::string_view text);
std::string to_string(const PairPartition& pp);
std::string to_string(const Partition& partition);

/// All (k−1)!! pairings in a fixed order: the smallest unpaired point is
/// matched with each larger point in increasing order. k ≤ max_k.
std::vector<PairPartition> enumerate_pair_partitions(int k, int max_k = 16);

/// True iff some m1 < m2 < m3 < m4 have m1~m3 and m2~m4.
bool is_crossing(const PairPartition& pp);

/// Number of non-crossing pairings of k points via the convolution recurrence
/// N(2m+2) = Σ_j N(2j)·N(2m−2j). Valid for even k ≤ 30.
std::uint64_t count_noncrossing(int k);

/// Same count by filtering the full enumeration. Even k ≤ 16.
std::uint64_t count_noncrossing_by_enumeration(int k);

/// The partition l ~ m ⟺ P_l ~_n P_m. The sequence must be consistent:
/// q_l = p_{l+1} cyclically.
Partition induced_partition(const EquivalenceRelation& relation, std::span<const IndexPair> sequence);

struct SequenceCensus {
  int n = 0;
  int k = 0;
  PairPartition partition;
  std::uint64_t s_count = 0;
  std::uint64_t ps_count = 0;
  std::uint64_t ns_count = 0;

  /// s_count / n^{k/2+1}
  double s_over_scale() const;
};

struct CensusOptions {
  /// Upper limit on n^k (or n^k·(k−1)!! for the Gaussian oracle).
  std::uint64_t step_budget = 1'000'000'000ULL;
  /// Count sequences whose induced partition is coarser than or equal to π
  /// (paired positions must be related; others may be). Diagnostics only.
  bool allow_coarser = false;
};

/// Exact consistent-sequence counts for a pair partition at n = relation.n().
/// Throws BudgetExceeded when n^k exceeds the step budget.
SequenceCensus census(const EquivalenceRelation& relation, const PairPartition& pp, const CensusOptions& options = {});

/// Number of consistent sequences inducing each partition of {1..k}; the
/// counts sum to n^k.
std::map<Partition, std::uint64_t> induced_partition_counts(const EquivalenceRelation& relation, int k,
                                                            const CensusOptions& options = {});

/// E(1/n)Tr(X^k) at finite n as numerator / denominator with
/// denominator = n^{1+k/2} before reduction.
struct ExactMoment {
  std::int64_t numerator = 0;
  std::int64_t denominator = 1;

  double value() const { return static_cast<double>(numerator) / static_cast<double>(denominator); }
  std::string to_string() const;
};

/// Wick expansion over all consistent sequences and all pairings of the
/// positions, using covariance() from the ensemble. Gaussian families only.
ExactMoment exact_gaussian_moment(const EnsembleSpec& spec, int k, const CensusOptions& options = {});

}  // namespace wigner
