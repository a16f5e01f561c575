#include "wigner/freeness.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include <Eigen/Dense>

#include "wigner/errors.hpp"
#include "wigner/numeric.hpp"
#include "wigner/parallel.hpp"
#include "wigner/partitions.hpp"
#include "wigner/rng.hpp"
#include "wigner/spectra.hpp"

namespace wigner {

// ---------------------------------------------------------------- words

int Word::degree() const {
  int total = 0;
  for (const auto& l : letters) total += l.power;
  return total;
}

std::string Word::to_string() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    const Letter& l = letters[i];
    if (i) out << ' ';
    out << (l.kind == Letter::Kind::x ? 'x' : 'd');
    if (l.index != 1) out << '(' << l.index << ')';
    if (l.power != 1) out << '^' << l.power;
  }
  return out.str();
}

namespace {

int read_number(std::string_view text, std::size_t& pos) {
  const std::size_t start = pos;
  long value = 0;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    value = value * 10 + (text[pos] - '0');
    if (value > 1'000'000) throw std::invalid_argument("number too large in word");
    ++pos;
  }
  if (pos == start) throw std::invalid_argument("expected a number in word '" + std::string(text) + "'");
  return static_cast<int>(value);
}

}  // namespace

Word parse_word(std::string_view text) {
  Word word;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const char c = text[pos];
    if (std::isspace(static_cast<unsigned char>(c)) || c == '*') {
      ++pos;
      continue;
    }
    Letter letter;
    if (c == 'x' || c == 'X') letter.kind = Letter::Kind::x;
    else if (c == 'd' || c == 'D') letter.kind = Letter::Kind::d;
    else throw std::invalid_argument("unexpected character '" + std::string(1, c) + "' in word");
    ++pos;
    if (pos < text.size() && text[pos] == '(') {
      ++pos;
      letter.index = read_number(text, pos);
      if (pos >= text.size() || text[pos] != ')') throw std::invalid_argument("missing ')' in word");
      ++pos;
    } else if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      letter.index = read_number(text, pos);
    }
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      letter.power = read_number(text, pos);
    }
    if (letter.index < 1) throw std::invalid_argument("letter indices start at 1");
    if (letter.power < 1) throw std::invalid_argument("letter exponents must be positive");
    word.letters.push_back(letter);
  }
  if (word.letters.empty()) throw std::invalid_argument("empty word");
  return word;
}

Word rotate(const Word& word, int shift) {
  Word out = word;
  const int m = static_cast<int>(word.letters.size());
  if (m == 0) return out;
  shift = ((shift % m) + m) % m;
  std::rotate(out.letters.begin(), out.letters.begin() + shift, out.letters.end());
  return out;
}

// ---------------------------------------------------------- diagonal laws

namespace {

Rational power(const Rational& base, int e) {
  Rational out = 1;
  for (int i = 0; i < e; ++i) out *= base;
  return out;
}

}  // namespace

DiagonalLaw DiagonalLaw::two_point() { return {}; }

DiagonalLaw DiagonalLaw::uniform(double a, double b) {
  if (!(a < b)) throw std::invalid_argument("uniform law needs a < b");
  DiagonalLaw law;
  law.kind = Kind::uniform;
  law.a = a;
  law.b = b;
  return law;
}

DiagonalLaw DiagonalLaw::from_values(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("value list must not be empty");
  DiagonalLaw law;
  law.kind = Kind::values;
  law.values = std::move(values);
  std::sort(law.values.begin(), law.values.end());
  return law;
}

std::vector<Rational> DiagonalLaw::moments(int max_order) const {
  std::vector<Rational> out(static_cast<std::size_t>(max_order) + 1);
  for (int k = 0; k <= max_order; ++k) {
    switch (kind) {
      case Kind::two_point: out[k] = k % 2 == 0 ? 1 : 0; break;
      case Kind::uniform: {
        const Rational ra(a), rb(b);
        out[k] = (power(rb, k + 1) - power(ra, k + 1)) / (Rational(k + 1) * (rb - ra));
        break;
      }
      case Kind::values: {
        Rational sum = 0;
        for (double v : values) sum += power(Rational(v), k);
        out[k] = sum / static_cast<long long>(values.size());
        break;
      }
    }
  }
  return out;
}

std::vector<double> DiagonalLaw::diagonal(int n, std::uint64_t seed) const {
  std::vector<double> out(static_cast<std::size_t>(n));
  rng::KeyedStream stream(seed);
  for (int i = 0; i < n; ++i) {
    const double u = random ? stream.uniform() : (i + 0.5) / n;
    switch (kind) {
      case Kind::two_point: out[i] = u < 0.5 ? -1.0 : 1.0; break;
      case Kind::uniform: out[i] = a + (b - a) * u; break;
      case Kind::values: {
        const auto slot = std::min(values.size() - 1, static_cast<std::size_t>(u * static_cast<double>(values.size())));
        out[i] = values[slot];
        break;
      }
    }
  }
  return out;
}

// ------------------------------------------------------ shared algebra

namespace {

/// Commuting monomial: variable index → exponent.
using Monomial = std::map<int, int>;

void check_degree(const Word& word) {
  if (word.degree() > kMaxWordDegree) {
    throw BudgetExceeded("word degree " + std::to_string(word.degree()) + " exceeds the budget of " +
                                std::to_string(kMaxWordDegree));
  }
}

Rational phi_diagonal(const Monomial& mono, const MarginalMoments& marginals) {
  Rational out = 1;
  for (const auto& [j, e] : mono) {
    const auto it = marginals.d.find(j);
    if (it == marginals.d.end() || static_cast<int>(it->second.size()) <= e) {
      throw std::invalid_argument("marginal moments of d(" + std::to_string(j) + ") missing up to order " +
                                  std::to_string(e));
    }
    out *= it->second[e];
  }
  return out;
}

Rational phi_semicircle(int power) { return power % 2 == 0 ? Rational(catalan(power / 2)) : Rational(0); }

// ------------------------------------------- evaluator 1: centering recursion

using Poly = std::map<Monomial, Rational>;

/// Element of one of the free subalgebras: algebra 0 is the commutative
/// algebra of the d letters, algebra i ≥ 1 is C[x(i)].
struct Element {
  int algebra = 0;
  Poly poly;
};

Poly multiply(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) {
      Monomial m = ma;
      for (const auto& [v, e] : mb) m[v] += e;
      out[m] += ca * cb;
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

class CenteringEvaluator {
 public:
  explicit CenteringEvaluator(const MarginalMoments& marginals) : marginals_(marginals) {}

  Rational evaluate(std::vector<Element> word) {
    Rational scalar = 1;
    if (!normalize(word, scalar)) return 0;
    if (word.empty()) return scalar;
    if (word.size() == 1) return scalar * phi(word.front());

    const std::string key = serialize(word);
    if (const auto it = memo_.find(key); it != memo_.end()) return scalar * it->second;

    const std::size_t m = word.size();
    std::vector<Rational> means(m);
    std::vector<Element> centered(word);
    for (std::size_t i = 0; i < m; ++i) {
      means[i] = phi(word[i]);
      centered[i].poly[Monomial{}] -= means[i];
      std::erase_if(centered[i].poly, [](const auto& kv) { return kv.second == 0; });
    }

    // φ(Π a_i) = Σ_{S ⊊ [m]} φ(Π_{i∈S} a°_i)·Π_{i∉S} φ(a_i); the S = [m] term vanishes.
    Rational total = 0;
    const std::uint32_t full = (1u << m) - 1;
    for (std::uint32_t subset = 0; subset < full; ++subset) {
      Rational weight = 1;
      std::vector<Element> sub;
      for (std::size_t i = 0; i < m; ++i) {
        if (subset & (1u << i)) sub.push_back(centered[i]);
        else weight *= means[i];
      }
      if (weight == 0) continue;
      total += weight * evaluate(std::move(sub));
    }
    memo_.emplace(key, total);
    return scalar * total;
  }

 private:
  Rational phi(const Element& e) const {
    Rational out = 0;
    for (const auto& [mono, coeff] : e.poly) {
      if (e.algebra == 0) {
        out += coeff * phi_diagonal(mono, marginals_);
      } else {
        const int power = mono.empty() ? 0 : mono.begin()->second;
        out += coeff * phi_semicircle(power);
      }
    }
    return out;
  }

  /// Merges neighbours from the same algebra and pulls out scalar factors.
  /// Returns false if the word is zero.
  static bool normalize(std::vector<Element>& word, Rational& scalar) {
    bool changed = true;
    while (changed) {
      changed = false;
      std::vector<Element> next;
      for (auto& e : word) {
        if (e.poly.empty()) return false;
        if (e.poly.size() == 1 && e.poly.begin()->first.empty()) {
          scalar *= e.poly.begin()->second;
          changed = true;
          continue;
        }
        if (!next.empty() && next.back().algebra == e.algebra) {
          next.back().poly = multiply(next.back().poly, e.poly);
          changed = true;
          continue;
        }
        next.push_back(std::move(e));
      }
      word = std::move(next);
    }
    return true;
  }

  static std::string serialize(const std::vector<Element>& word) {
    std::ostringstream out;
    for (const auto& e : word) {
      out << '[' << e.algebra << ':';
      for (const auto& [mono, coeff] : e.poly) {
        for (const auto& [v, p] : mono) out << v << '^' << p << '.';
        out << '=' << coeff.str() << ';';
      }
      out << ']';
    }
    return out.str();
  }

  const MarginalMoments& marginals_;
  std::unordered_map<std::string, Rational> memo_;
};

// ---------------------------------------------- evaluator 2: pairing sum

struct CyclicForm {
  std::vector<int> colors;          // x index at each x position
  std::vector<Monomial> gaps;       // d-monomial after x position t (cyclic)
  Monomial all_d;                   // used when there are no x letters
};

CyclicForm cyclic_form(const Word& word) {
  CyclicForm form;
  Monomial leading;
  for (const auto& l : word.letters) {
    if (l.kind == Letter::Kind::x) {
      for (int p = 0; p < l.power; ++p) {
        form.colors.push_back(l.index);
        form.gaps.emplace_back();
      }
    } else {
      Monomial& target = form.gaps.empty() ? leading : form.gaps.back();
      target[l.index] += l.power;
      form.all_d[l.index] += l.power;
    }
  }
  if (!form.gaps.empty()) {
    for (const auto& [v, e] : leading) form.gaps.back()[v] += e;
  }
  return form;
}

}  // namespace

Rational free_prediction(const Word& word, const MarginalMoments& marginals) {
  check_degree(word);
  std::vector<Element> elements;
  for (const auto& l : word.letters) {
    Element e;
    e.algebra = l.kind == Letter::Kind::x ? l.index : 0;
    e.poly[Monomial{{l.index, l.power}}] = 1;
    elements.push_back(std::move(e));
  }
  CenteringEvaluator evaluator(marginals);
  return evaluator.evaluate(std::move(elements));
}

Rational free_prediction_by_pairings(const Word& word, const MarginalMoments& marginals) {
  check_degree(word);
  const CyclicForm form = cyclic_form(word);
  const int m = static_cast<int>(form.colors.size());
  if (m == 0) return phi_diagonal(form.all_d, marginals);
  if (m % 2 != 0) return 0;

  Rational total = 0;
  std::vector<int> partner(static_cast<std::size_t>(m));
  std::vector<bool> seen(static_cast<std::size_t>(m));
  for (const auto& pp : enumerate_pair_partitions(m, kMaxWordDegree)) {
    if (is_crossing(pp)) continue;
    bool colors_match = true;
    for (const auto& [a, b] : pp.pairs) {
      colors_match = colors_match && form.colors[a - 1] == form.colors[b - 1];
      partner[a - 1] = b - 1;
      partner[b - 1] = a - 1;
    }
    if (!colors_match) continue;

    // d-blocks are the cycles of t ↦ partner(t + 1).
    Rational term = 1;
    std::fill(seen.begin(), seen.end(), false);
    for (int start = 0; start < m; ++start) {
      if (seen[start]) continue;
      Monomial block;
      for (int t = start; !seen[t]; t = partner[(t + 1) % m]) {
        seen[t] = true;
        for (const auto& [v, e] : form.gaps[t]) block[v] += e;
      }
      term *= phi_diagonal(block, marginals);
    }
    total += term;
  }
  return total;
}

MarginalMoments marginals_for(const Word& word, const Bindings& bindings) {
  MarginalMoments out;
  const int order = std::max(word.degree(), kMaxWordDegree);
  for (const auto& l : word.letters) {
    if (l.kind == Letter::Kind::x) {
      if (!bindings.x.contains(l.index)) throw std::invalid_argument("letter x(" + std::to_string(l.index) + ") is unbound");
      continue;
    }
    const auto it = bindings.d.find(l.index);
    if (it == bindings.d.end()) throw std::invalid_argument("letter d(" + std::to_string(l.index) + ") is unbound");
    if (!out.d.contains(l.index)) out.d[l.index] = it->second.moments(order);
  }
  return out;
}

// ------------------------------------------------------- Monte Carlo

namespace {

struct Factor {
  const Eigen::MatrixXcd* dense = nullptr;  // null for a diagonal factor
  Eigen::VectorXd diagonal;
};

Eigen::MatrixXcd product(const std::vector<Factor>& factors, std::size_t begin, std::size_t end, int n) {
  Eigen::MatrixXcd out;
  bool started = false;
  for (std::size_t i = begin; i < end; ++i) {
    const Factor& f = factors[i];
    if (!started) {
      out = f.dense ? *f.dense : Eigen::MatrixXcd(f.diagonal.cast<std::complex<double>>().asDiagonal());
      started = true;
    } else if (f.dense) {
      out = out * (*f.dense);
    } else {
      out = out * f.diagonal.cast<std::complex<double>>().asDiagonal();
    }
  }
  if (!started) out = Eigen::MatrixXcd::Identity(n, n);
  return out;
}

double normalized_trace(const Word& word, const std::map<int, Eigen::MatrixXcd>& xs,
                        const std::map<int, std::vector<double>>& ds, int n) {
  std::vector<Factor> factors;
  for (const auto& l : word.letters) {
    if (l.kind == Letter::Kind::x) {
      for (int p = 0; p < l.power; ++p) factors.push_back({&xs.at(l.index), {}});
      continue;
    }
    const auto& values = ds.at(l.index);
    Eigen::VectorXd powered(n);
    for (int i = 0; i < n; ++i) powered(i) = std::pow(values[i], l.power);
    if (!factors.empty() && !factors.back().dense) {
      factors.back().diagonal = factors.back().diagonal.cwiseProduct(powered);
    } else {
      factors.push_back({nullptr, std::move(powered)});
    }
  }

  const auto dense_count = std::count_if(factors.begin(), factors.end(), [](const Factor& f) { return f.dense; });
  if (dense_count == 0) {
    Eigen::VectorXd all = Eigen::VectorXd::Ones(n);
    for (const auto& f : factors) all = all.cwiseProduct(f.diagonal);
    return all.sum() / n;
  }

  // Split so each half holds about half of the dense factors; Tr(AB) = Σ A∘Bᵀ.
  std::size_t split = 0;
  for (long seen = 0; split < factors.size(); ++split) {
    if (factors[split].dense && ++seen > (dense_count + 1) / 2) break;
  }
  const Eigen::MatrixXcd left = product(factors, 0, split, n);
  bool same_halves = split * 2 == factors.size();
  for (std::size_t i = 0; same_halves && i < split; ++i) {
    const Factor& a = factors[i];
    const Factor& b = factors[split + i];
    same_halves = a.dense == b.dense && (a.dense || a.diagonal == b.diagonal);
  }
  const Eigen::MatrixXcd right = same_halves ? left : product(factors, split, factors.size(), n);
  return (left.array() * right.transpose().array()).sum().real() / n;
}

}  // namespace

MomentReport estimate_mixed_moment(const Word& word, const Bindings& bindings, int n, int samples, std::uint64_t seed) {
  check_degree(word);
  if (n < 1) throw std::invalid_argument("matrix size must be positive");
  if (samples < 1) throw std::invalid_argument("need at least one sample");
  const MarginalMoments marginals = marginals_for(word, bindings);

  std::vector<double> values(static_cast<std::size_t>(samples));
  parallel_for(values.size(), [&](std::size_t s) {
    std::map<int, Eigen::MatrixXcd> xs;
    std::map<int, std::vector<double>> ds;
    for (const auto& l : word.letters) {
      if (l.kind == Letter::Kind::x && !xs.contains(l.index)) {
        const XBinding& binding = bindings.x.at(l.index);
        EnsembleSpec spec{make_relation(binding.kind, n), binding.distribution, {},
                          rng::mix(seed, s, static_cast<std::uint64_t>(l.index))};
        xs.emplace(l.index, to_eigen(sample_matrix(spec)));
      } else if (l.kind == Letter::Kind::d && !ds.contains(l.index)) {
        const DiagonalLaw& law = bindings.d.at(l.index);
        ds.emplace(l.index, law.diagonal(n, rng::mix(seed, s, 0xd000ULL + l.index)));
      }
    }
    values[s] = normalized_trace(word, xs, ds, n);
  });

  const MeanError stats = mean_and_error(values);
  MomentReport report;
  report.word = word;
  report.n = n;
  report.samples = samples;
  report.estimate = stats.mean;
  report.std_error = stats.std_error;
  report.prediction = free_prediction(word, marginals).convert_to<double>();
  return report;
}

std::vector<FreenessRow> freeness_report(std::span<const Word> words, const Bindings& bindings,
                                         std::span<const int> n_ladder, int samples, std::uint64_t seed) {
  std::vector<FreenessRow> rows;
  for (std::size_t w = 0; w < words.size(); ++w) {
    for (std::size_t i = 0; i < n_ladder.size(); ++i) {
      const MomentReport r = estimate_mixed_moment(words[w], bindings, n_ladder[i], samples, rng::mix(seed, w, i));
      const double diff = r.estimate - r.prediction;
      double z = 0.0;
      if (r.std_error > 0) z = diff / r.std_error;
      else if (diff != 0) z = std::copysign(std::numeric_limits<double>::infinity(), diff);
      rows.push_back({words[w].to_string(), r.n, r.estimate, r.std_error, r.prediction, z});
    }
  }
  return rows;
}

}  // namespace wigner
