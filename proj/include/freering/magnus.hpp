#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "freering/rational.hpp"
#include "freering/word.hpp"

namespace freering {

/// A monomial y_{i1} y_{i2} ... y_{id} of the free power series ring,
/// stored as the index sequence (i1, ..., id) with 1 <= ik <= rank.
using Monomial = std::vector<int>;

/// Degree first, then left-lexicographic with y1 < y2 < ... .
struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const noexcept {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

/// Element of Q<<y_1..y_rank>> truncated above `degree_bound`.
class PowerSeries {
 public:
  using Terms = std::map<Monomial, Rational, MonomialLess>;

  PowerSeries(int rank, int degree_bound);

  static PowerSeries one(int rank, int degree_bound);
  static PowerSeries from_terms(int rank, int degree_bound,
                                const std::vector<std::pair<Monomial, Rational>>& terms);

  int rank() const noexcept { return rank_; }
  int degree_bound() const noexcept { return degree_bound_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  Rational coefficient(const Monomial& m) const;
  Rational constant_term() const { return coefficient({}); }

  /// Adds c * m. Monomials above the degree bound are dropped.
  void add_term(const Monomial& m, const Rational& c);

  /// The degree-d homogeneous part, same rank and bound.
  PowerSeries homogeneous(int d) const;

  friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b);
  friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b);
  friend PowerSeries operator-(const PowerSeries& a);
  friend bool operator==(const PowerSeries& a, const PowerSeries& b);

 private:
  int rank_;
  int degree_bound_;
  Terms terms_;
};

PowerSeries ps_mul(const PowerSeries& f, const PowerSeries& g);

/// Two-sided inverse up to the degree bound. Throws NotInvertible when the
/// constant term is zero.
PowerSeries ps_inv(const PowerSeries& f);

/// Image of u under x_i -> 1 + y_i, x_i^{-1} -> sum_k (-1)^k y_i^k, truncated at D.
PowerSeries embed_word(const Word& u, int degree_bound);

enum class Order { Less, Equal, Greater };

struct OrderVerdict {
  Order order = Order::Equal;
  /// First degree in which the two sides disagree; empty when Equal.
  std::optional<int> degree;
};

/// Bergman's order on the free group. At the first degree where the Magnus
/// images disagree, the left-lex smallest monomial with a nonzero coefficient
/// in (image(v) - image(u)) decides: positive means u < v.
OrderVerdict bergman_cmp(const Word& u, const Word& v);

/// Same convention applied to two truncated series directly.
OrderVerdict series_cmp(const PowerSeries& f, const PowerSeries& g);

/// A word together with its low-degree Magnus coefficients, so that most
/// Bergman comparisons reduce to comparing small integer vectors. Ties in the
/// cached degrees fall back to `bergman_cmp`.
class MagnusKey {
 public:
  explicit MagnusKey(Word w);

  const Word& word() const noexcept { return word_; }

  /// Key of a.word() * b.word(), computed from the cached coefficients
  /// (the Magnus embedding is multiplicative) when both sides have them.
  friend MagnusKey operator*(const MagnusKey& a, const MagnusKey& b);

  friend std::strong_ordering operator<=>(const MagnusKey& a, const MagnusKey& b);
  friend bool operator==(const MagnusKey& a, const MagnusKey& b) { return a.word_ == b.word_; }

 private:
  MagnusKey() = default;

  Word word_;
  std::vector<std::int64_t> low_;
  bool cached_ = false;
};

/// Highest cached degree for MagnusKey at the given rank.
int magnus_key_degree(int rank);

/// "1 + y1 - y1*y1" style; ascending degree then left-lex.
std::string to_string(const PowerSeries& f);

}  // namespace freering
