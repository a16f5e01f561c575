#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "wigner/ensembles.hpp"
#include "wigner/relations.hpp"

namespace wigner {

using Rational = boost::multiprecision::cpp_rational;

/// x(i)^power or d(j)^power.
struct Letter {
  enum class Kind { x, d };
  Kind kind = Kind::x;
  int index = 1;
  int power = 1;

  friend bool operator==(const Letter&, const Letter&) = default;
};

/// A monomial in the non-commutative letters.
struct Word {
  std::vector<Letter> letters;

  int degree() const;
  std::string to_string() const;

  friend bool operator==(const Word&, const Word&) = default;
};

/// Accepts tokens such as "x", "x2", "x(2)", "d^2", "x(1)^3", separated by
/// whitespace, '*' or nothing: "x d x d", "x^2 d^2", "x1 x2 x1 x2".
Word parse_word(std::string_view text);

/// Cyclic rotation by `shift` letters.
Word rotate(const Word& word, int shift);

inline constexpr int kMaxWordDegree = 8;

/// Limiting law of a diagonal ensemble D^(j).
struct DiagonalLaw {
  enum class Kind { two_point, uniform, values };
  Kind kind = Kind::two_point;
  double a = -1.0;
  double b = 1.0;
  std::vector<double> values;
  /// Deterministic equally-spaced quantiles unless set, in which case the
  /// diagonal is an i.i.d. sample.
  bool random = false;

  static DiagonalLaw two_point();
  static DiagonalLaw uniform(double a, double b);
  static DiagonalLaw from_values(std::vector<double> values);

  /// m_0..m_max as exact rationals.
  std::vector<Rational> moments(int max_order) const;
  std::vector<double> diagonal(int n, std::uint64_t seed) const;
};

/// Moments m_0, m_1, … of each d(j). Different d(j) are taken as classically
/// independent: φ(d1^a d2^b) = φ(d1^a)·φ(d2^b).
struct MarginalMoments {
  std::map<int, std::vector<Rational>> d;
};

/// Free prediction by recursive centering: with a° = a − φ(a), the
/// alternating centered product has φ = 0, which determines φ(word) from
/// shorter words.
Rational free_prediction(const Word& word, const MarginalMoments& marginals);

/// Free prediction as a sum over non-crossing, colour-respecting pairings of
/// the x positions, with the d-blocks grouped by the Kreweras complement.
Rational free_prediction_by_pairings(const Word& word, const MarginalMoments& marginals);

struct XBinding {
  RelationKind kind = RelationKind::iid;
  Distribution distribution = Distribution::gaussian_complex;
};

/// Every letter index used by a word must be bound.
struct Bindings {
  std::map<int, XBinding> x;
  std::map<int, DiagonalLaw> d;
};

MarginalMoments marginals_for(const Word& word, const Bindings& bindings);

struct MomentReport {
  Word word;
  int n = 0;
  int samples = 0;
  double estimate = 0.0;
  double std_error = 0.0;
  double prediction = 0.0;
};

/// Monte Carlo mean of (1/n)Re Tr(word) over independent draws.
MomentReport estimate_mixed_moment(const Word& word, const Bindings& bindings, int n, int samples, std::uint64_t seed);

struct FreenessRow {
  std::string word;
  int n = 0;
  double estimate = 0.0;
  double std_error = 0.0;
  double prediction = 0.0;
  double z_score = 0.0;
};

std::vector<FreenessRow> freeness_report(std::span<const Word> words, const Bindings& bindings,
                                         std::span<const int> n_ladder, int samples, std::uint64_t seed);

}  // namespace wigner
