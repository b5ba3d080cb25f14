#pragma once

// Reference implementations used by the tests. They share no code with the
// library beyond the value types, and favour obviousness over speed.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "freering/group_ring.hpp"
#include "freering/rational.hpp"
#include "freering/word.hpp"

namespace oracle {

using Letters = std::vector<int>;

/// Free reduction with an explicit stack.
Letters reduce(const Letters& w);
Letters multiply(const Letters& u, const Letters& v);
Letters inverse(const Letters& u);

/// Every reduced word of length <= radius, enumerated by brute force over all
/// letter strings.
std::vector<Letters> all_reduced(int rank, int radius);

/// Truncated free power series keyed by index sequences.
using Series = std::map<std::vector<int>, freering::Rational>;

/// Magnus image x_i -> 1 + y_i, truncated above `degree`, computed letter by
/// letter with a literal series product.
Series magnus(const Letters& u, int degree);

/// -1, 0, 1 for u < v, u == v, u > v: at the lowest degree where the images
/// differ, the sign of the first nonzero coefficient of (image(v) - image(u))
/// in left-lex order (y1 < y2 < ...) is positive iff u < v.
int bergman(const Letters& u, const Letters& v);
int series_sign(const Series& f, const Series& g);

/// A ring homomorphism Q(F_rank) -> M_3(Z/p) with p = 2^61 - 1, sending x_i
/// to a random invertible matrix. Distinct images certify distinct elements.
class Fingerprint {
 public:
  using Mat = std::array<std::uint64_t, 9>;

  Fingerprint(int rank, std::uint64_t seed);

  Mat word(const freering::Word& w) const;
  Mat element(const freering::GroupRingElem& f) const;
  Mat product(const std::vector<freering::GroupRingElem>& factors) const;
  Mat scalar(const freering::Rational& q) const;

  static Mat mul(const Mat& a, const Mat& b);
  static Mat add(const Mat& a, const Mat& b);

 private:
  std::vector<Mat> gens_;  // x_1, x_1^-1, x_2, x_2^-1, ...
};

/// Exact consistency of d * q = w (Left) or q * d = w (Right) with q supported
/// on the ball of the given radius, by Gaussian elimination over Q. Returns a
/// solution when one exists.
std::optional<freering::GroupRingElem> brute_divide(const freering::GroupRingElem& w,
                                                    const freering::GroupRingElem& d,
                                                    freering::Side side, int radius);

/// Random reduced word of length exactly `length`.
freering::Word random_word(std::mt19937_64& rng, int rank, int length);

}  // namespace oracle
