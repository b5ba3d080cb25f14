#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace freering {

/// Letter encoding: +i is the generator x_i, -i its inverse, 1 <= i <= rank.
using Letter = int;

/// A freely reduced word in the free group F(x_1, ..., x_rank).
///
/// Words are values. The rank travels with the word and every binary
/// operation rejects mismatched ranks instead of promoting.
class Word {
 public:
  /// The identity of F_1. Only useful as a placeholder.
  Word() = default;

  /// The identity of F_rank.
  explicit Word(int rank);

  /// Freely reduces `letters`. Throws on a zero letter or |letter| > rank.
  static Word reduce(std::span<const Letter> letters, int rank);
  static Word reduce(std::initializer_list<Letter> letters, int rank) {
    return reduce(std::span<const Letter>(letters.begin(), letters.size()), rank);
  }

  /// The single-letter word x_i^{sign i}.
  static Word generator(Letter letter, int rank);

  int rank() const noexcept { return rank_; }
  const std::vector<Letter>& letters() const noexcept { return letters_; }
  std::size_t length() const noexcept { return letters_.size(); }
  bool is_identity() const noexcept { return letters_.empty(); }

  Word inverse() const;
  Word pow(long exponent) const;

  friend Word operator*(const Word& u, const Word& v);
  friend bool operator==(const Word& u, const Word& v) = default;

 private:
  Word(int rank, std::vector<Letter> letters) : rank_(rank), letters_(std::move(letters)) {}

  int rank_ = 1;
  std::vector<Letter> letters_;
};

/// u = conjugator * core * conjugator^{-1}, core cyclically reduced.
struct CyclicReduction {
  Word core;
  Word conjugator;
};

CyclicReduction cyclic_reduce(const Word& u);

/// u = root^exponent with root not a proper power and exponent >= 1.
struct PrimitiveRoot {
  Word root;
  long exponent = 1;
};

/// Throws IdentityInput on the identity.
PrimitiveRoot primitive_root(const Word& u);

/// Exponent sum of each generator; the image of u in Z^rank.
std::vector<long> abelianize(const Word& u);

/// Letter order used by shortlex: x1 < x1^-1 < x2 < x2^-1 < ...
int letter_rank(Letter letter) noexcept;

/// Shortlex comparison: length first, then letters under `letter_rank`.
int shortlex_compare(const Word& u, const Word& v) noexcept;

struct ShortLex {
  bool operator()(const Word& u, const Word& v) const noexcept {
    return shortlex_compare(u, v) < 0;
  }
};

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

/// All reduced words of length <= radius, in shortlex order.
std::vector<Word> ball(int rank, int radius);

/// All reduced words of length exactly `length`, in shortlex order.
std::vector<Word> sphere(int rank, int length);

/// "1" for the identity, otherwise e.g. "x1^2*x2^-1".
std::string to_string(const Word& w);

void check_same_rank(int a, int b);

}  // namespace freering
