#include "wigner/partitions.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "wigner/errors.hpp"

namespace wigner {

Partition to_partition(const PairPartition& pp) {
  Partition out{pp.k, {}};
  for (const auto& [a, b] : pp.pairs) out.blocks.push_back({a, b});
  std::sort(out.blocks.begin(), out.blocks.end());
  return out;
}

namespace {

int parse_int(std::string_view text) {
  int value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
  }
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

PairPartition normalized(int k, std::vector<std::pair<int, int>> pairs) {
  std::vector<int> seen(static_cast<std::size_t>(k) + 1, 0);
  for (auto& [a, b] : pairs) {
    if (a > b) std::swap(a, b);
    if (a < 1 || b > k || a == b) throw std::invalid_argument("pair partition entry out of range");
    if (seen[a]++ || seen[b]++) throw std::invalid_argument("pair partition repeats a point");
  }
  std::sort(pairs.begin(), pairs.end());
  return {k, std::move(pairs)};
}

std::uint64_t checked_power(std::uint64_t base, int exponent, std::uint64_t budget, const char* what) {
  std::uint64_t out = 1;
  for (int i = 0; i < exponent; ++i) {
    if (base != 0 && out > budget / base) {
      throw BudgetExceeded(std::string(what) + ": n^k exceeds the step budget of " + std::to_string(budget));
    }
    out *= base;
  }
  if (out > budget) {
    throw BudgetExceeded(std::string(what) + ": n^k exceeds the step budget of " + std::to_string(budget));
  }
  return out;
}

/// Class keys of all n² pairs, 0-based row-major.
std::vector<std::uint64_t> key_table(const EquivalenceRelation& relation) {
  const int n = relation.n();
  std::vector<std::uint64_t> keys(static_cast<std::size_t>(n) * n);
  for (int p = 1; p <= n; ++p) {
    for (int q = 1; q <= n; ++q) keys[static_cast<std::size_t>(p - 1) * n + (q - 1)] = relation.class_key({p, q}).value;
  }
  return keys;
}

}  // namespace

PairPartition parse_pair_partition(std::string_view text) {
  std::vector<std::pair<int, int>> pairs;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const std::string_view item = trim(text.substr(0, comma));
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    const auto dash = item.find('-');
    if (dash == std::string_view::npos) throw std::invalid_argument("pair must look like 'a-b'");
    pairs.emplace_back(parse_int(trim(item.substr(0, dash))), parse_int(trim(item.substr(dash + 1))));
  }
  if (pairs.empty()) throw std::invalid_argument("empty pair partition");
  const int k = static_cast<int>(2 * pairs.size());
  return normalized(k, std::move(pairs));
}

std::string to_string(const PairPartition& pp) {
  std::ostringstream out;
  for (std::size_t i = 0; i < pp.pairs.size(); ++i) {
    if (i) out << ',';
    out << pp.pairs[i].first << '-' << pp.pairs[i].second;
  }
  return out.str();
}

std::string to_string(const Partition& partition) {
  std::ostringstream out;
  out << '{';
  for (std::size_t b = 0; b < partition.blocks.size(); ++b) {
    if (b) out << ',';
    out << '{';
    for (std::size_t i = 0; i < partition.blocks[b].size(); ++i) {
      if (i) out << ',';
      out << partition.blocks[b][i];
    }
    out << '}';
  }
  out << '}';
  return out.str();
}

std::vector<PairPartition> enumerate_pair_partitions(int k, int max_k) {
  if (k < 0 || k % 2 != 0) throw std::invalid_argument("pair partitions need an even number of points");
  if (k > max_k) throw BudgetExceeded("pair partition enumeration limited to k <= " + std::to_string(max_k));

  std::vector<PairPartition> out;
  std::vector<std::pair<int, int>> current;
  std::vector<bool> used(static_cast<std::size_t>(k) + 1, false);
  auto recurse = [&](auto&& self) -> void {
    int first = 1;
    while (first <= k && used[first]) ++first;
    if (first > k) {
      out.push_back({k, current});
      return;
    }
    used[first] = true;
    for (int second = first + 1; second <= k; ++second) {
      if (used[second]) continue;
      used[second] = true;
      current.emplace_back(first, second);
      self(self);
      current.pop_back();
      used[second] = false;
    }
    used[first] = false;
  };
  recurse(recurse);
  return out;
}

bool is_crossing(const PairPartition& pp) {
  for (const auto& [a, b] : pp.pairs) {
    for (const auto& [c, d] : pp.pairs) {
      if (a < c && c < b && b < d) return true;
    }
  }
  return false;
}

std::uint64_t count_noncrossing(int k) {
  if (k < 0 || k % 2 != 0) throw std::invalid_argument("non-crossing count needs even k");
  if (k > 30) throw BudgetExceeded("count_noncrossing is limited to k <= 30");
  const int m = k / 2;
  // The point 1 is paired with some 2j+2; inside and outside are independent.
  std::vector<std::uint64_t> count(static_cast<std::size_t>(m) + 1, 0);
  count[0] = 1;
  for (int size = 1; size <= m; ++size) {
    for (int inside = 0; inside < size; ++inside) count[size] += count[inside] * count[size - 1 - inside];
  }
  return count[m];
}

std::uint64_t count_noncrossing_by_enumeration(int k) {
  const auto all = enumerate_pair_partitions(k, 16);
  return static_cast<std::uint64_t>(std::count_if(all.begin(), all.end(), [](const auto& pp) { return !is_crossing(pp); }));
}

Partition induced_partition(const EquivalenceRelation& relation, std::span<const IndexPair> sequence) {
  const int k = static_cast<int>(sequence.size());
  for (int l = 0; l < k; ++l) {
    relation.check_pair(sequence[l]);
    if (sequence[l].q != sequence[(l + 1) % k].p) {
      throw std::invalid_argument("sequence is not consistent at position " + std::to_string(l + 1));
    }
  }
  std::vector<ClassKey> keys;
  for (const auto& pair : sequence) keys.push_back(relation.class_key(pair));

  Partition out{k, {}};
  std::vector<bool> placed(static_cast<std::size_t>(k), false);
  for (int l = 0; l < k; ++l) {
    if (placed[l]) continue;
    std::vector<int> block;
    for (int m = l; m < k; ++m) {
      if (!placed[m] && keys[m] == keys[l]) {
        placed[m] = true;
        block.push_back(m + 1);
      }
    }
    out.blocks.push_back(std::move(block));
  }
  return out;
}

double SequenceCensus::s_over_scale() const {
  return static_cast<double>(s_count) / std::pow(static_cast<double>(n), k / 2.0 + 1.0);
}

SequenceCensus census(const EquivalenceRelation& relation, const PairPartition& pp, const CensusOptions& options) {
  const int n = relation.n();
  const int k = pp.k;
  if (k < 2 || k % 2 != 0 || static_cast<int>(pp.pairs.size()) * 2 != k) {
    throw std::invalid_argument("census needs a pair partition of an even number of points");
  }
  checked_power(static_cast<std::uint64_t>(n), k, options.step_budget, "census");

  const auto keys = key_table(relation);
  const std::size_t un = static_cast<std::size_t>(n);
  std::vector<int> block(static_cast<std::size_t>(k));
  std::vector<int> partner(static_cast<std::size_t>(k));
  for (std::size_t b = 0; b < pp.pairs.size(); ++b) {
    const int a = pp.pairs[b].first - 1;
    const int c = pp.pairs[b].second - 1;
    block[a] = block[c] = static_cast<int>(b);
    partner[a] = c;
    partner[c] = a;
  }

  std::vector<int> seq(static_cast<std::size_t>(k), 0);
  auto key_of = [&](int l) { return keys[static_cast<std::size_t>(seq[l]) * un + seq[(l + 1) % k]]; };

  // Pair l is complete once seq[l+1] is fixed. Checks it against all earlier pairs.
  auto admissible = [&](int l) {
    const auto kl = key_of(l);
    for (int m = 0; m < l; ++m) {
      const bool rel = key_of(m) == kl;
      const bool same = block[m] == block[l];
      if (options.allow_coarser ? (same && !rel) : (rel != same)) return false;
    }
    return true;
  };
  // For a pair (m, l) of π with m < l: P_l must equal (q_m, p_m).
  auto transposed_partner = [&](int l) {
    const int m = partner[l];
    if (m > l) return true;
    return seq[l] == seq[(m + 1) % k] && seq[(l + 1) % k] == seq[m];
  };

  SequenceCensus out{n, k, pp, 0, 0, 0};
  auto recurse = [&](auto&& self, int level, bool ps) -> void {
    for (int v = 0; v < n; ++v) {
      seq[level] = v;
      bool ok = true;
      bool still_ps = ps;
      if (level >= 1) {
        ok = admissible(level - 1);
        still_ps = still_ps && transposed_partner(level - 1);
      }
      if (ok && level == k - 1) {
        ok = admissible(k - 1);
        still_ps = still_ps && transposed_partner(k - 1);
      }
      if (!ok) continue;
      if (level == k - 1) {
        ++out.s_count;
        if (still_ps) ++out.ps_count;
      } else {
        self(self, level + 1, still_ps);
      }
    }
  };
  recurse(recurse, 0, true);
  out.ns_count = out.s_count - out.ps_count;
  return out;
}

std::map<Partition, std::uint64_t> induced_partition_counts(const EquivalenceRelation& relation, int k,
                                                            const CensusOptions& options) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  const int n = relation.n();
  checked_power(static_cast<std::uint64_t>(n), k, options.step_budget, "induced partition census");

  std::map<Partition, std::uint64_t> counts;
  std::vector<int> seq(static_cast<std::size_t>(k), 1);
  std::vector<IndexPair> pairs(static_cast<std::size_t>(k));
  while (true) {
    for (int l = 0; l < k; ++l) pairs[l] = {seq[l], seq[(l + 1) % k]};
    ++counts[induced_partition(relation, pairs)];
    int pos = k - 1;
    while (pos >= 0 && seq[pos] == n) seq[pos--] = 1;
    if (pos < 0) break;
    ++seq[pos];
  }
  return counts;
}

std::string ExactMoment::to_string() const {
  return std::to_string(numerator) + "/" + std::to_string(denominator);
}

ExactMoment exact_gaussian_moment(const EnsembleSpec& spec, int k, const CensusOptions& options) {
  if (!is_gaussian(spec.distribution)) {
    throw std::invalid_argument("exact moment oracle needs a Gaussian entry family");
  }
  if (k < 0) throw std::invalid_argument("moment order must be non-negative");
  if (k == 0) return {1, 1};
  if (k % 2 != 0) return {0, 1};

  const int n = spec.relation.n();
  std::uint64_t pairings = 1;
  for (int j = k - 1; j > 1; j -= 2) pairings *= static_cast<std::uint64_t>(j);
  if (pairings > options.step_budget) throw BudgetExceeded("exact moment: too many pairings");
  checked_power(static_cast<std::uint64_t>(n), k, options.step_budget / pairings, "exact moment");

  const auto wick_pairings = enumerate_pair_partitions(k, 16);
  const std::size_t un = static_cast<std::size_t>(n);
  const std::size_t positions = un * un;

  // Covariance table over pairs of positions, each entry 0 or 1.
  std::vector<std::int8_t> cov(positions * positions, 0);
  for (std::size_t a = 0; a < positions; ++a) {
    for (std::size_t b = 0; b < positions; ++b) {
      const IndexPair pa{static_cast<int>(a / un) + 1, static_cast<int>(a % un) + 1};
      const IndexPair pb{static_cast<int>(b / un) + 1, static_cast<int>(b % un) + 1};
      const std::complex<double> c = covariance(spec, pa, pb);
      if (c.imag() != 0.0 || (c.real() != 0.0 && c.real() != 1.0)) {
        throw std::logic_error("covariance kernel is not 0/1 valued");
      }
      cov[a * positions + b] = static_cast<std::int8_t>(c.real());
    }
  }

  std::int64_t total = 0;
  std::vector<int> seq(static_cast<std::size_t>(k), 0);
  std::vector<std::size_t> pos(static_cast<std::size_t>(k));
  while (true) {
    for (int l = 0; l < k; ++l) pos[l] = static_cast<std::size_t>(seq[l]) * un + seq[(l + 1) % k];
    for (const auto& pairing : wick_pairings) {
      bool nonzero = true;
      for (const auto& [a, b] : pairing.pairs) {
        if (!cov[pos[a - 1] * positions + pos[b - 1]]) {
          nonzero = false;
          break;
        }
      }
      if (nonzero) ++total;
    }
    int p = k - 1;
    while (p >= 0 && seq[p] == n - 1) seq[p--] = 0;
    if (p < 0) break;
    ++seq[p];
  }

  std::int64_t denominator = 1;
  for (int i = 0; i < 1 + k / 2; ++i) denominator *= n;
  const std::int64_t g = std::gcd(total, denominator);
  return {total / g, denominator / g};
}

}  // namespace wigner
