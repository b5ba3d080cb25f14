#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "freering/rational.hpp"

namespace freering {

using Exponents = std::vector<long>;

/// Graded lex: total degree first, then lexicographic with x1 most significant.
struct GradedLex {
  bool operator()(const Exponents& a, const Exponents& b) const noexcept;
};

/// Commutative Laurent polynomial over Q in `nvars` variables X1..Xn.
class LaurentPoly {
 public:
  using Terms = std::map<Exponents, Rational, GradedLex>;

  explicit LaurentPoly(int nvars);

  static LaurentPoly constant(int nvars, const Rational& c);
  static LaurentPoly monomial(Exponents exps, const Rational& c = 1);
  /// X_i (1-based), as a polynomial in `nvars` variables.
  static LaurentPoly variable(int i, int nvars);

  int nvars() const noexcept { return nvars_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_monomial() const noexcept { return terms_.size() == 1; }
  bool is_constant() const;

  Rational coefficient(const Exponents& e) const;
  void add_term(const Exponents& e, const Rational& c);

  /// Per-variable minimum and maximum exponents (the normalization
  /// exponents of a single-variable polynomial). Empty polynomial: zeros.
  Exponents min_exponents() const;
  Exponents max_exponents() const;

  LaurentPoly pow(long k) const;  // negative k only for monomials

  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator-(const LaurentPoly& a);
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(const Rational& s, const LaurentPoly& a);
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) = default;

 private:
  int nvars_;
  Terms terms_;
};

/// q with d * q == f, or nothing. Throws ZeroDivisor on d == 0.
std::optional<LaurentPoly> divides_exact(const LaurentPoly& d, const LaurentPoly& f);

/// 1 - X1^m X2^n is irreducible in the Laurent ring iff gcd(|m|,|n|) == 1.
bool binomial_irreducible(long m, long n);

/// Whether (i, j) -> m*j - n*i is injective on 0 <= i < m, 0 <= j < n,
/// i.e. no two monomials collide under X1 = z^{-n}, X2 = z^m. m, n >= 1.
bool substitution_is_injective(long m, long n);

/// For d = gcd(m, n) > 1: the factors (1 - g) and (1 + g + ... + g^{d-1})
/// of 1 - X1^m X2^n with g = X1^{m/d} X2^{n/d}. Empty when d == 1.
std::optional<std::pair<LaurentPoly, LaurentPoly>> binomial_factorization(long m, long n);

/// Coefficients (c_0..c_N) with Q = sum c_i P^i, or nothing when Q is not in
/// K[P]. P must be single-variable, not a monomial, with at least 3 terms.
std::optional<std::vector<Rational>> in_KP(const LaurentPoly& Q, const LaurentPoly& P);

/// Throws Precondition unless P is a valid base for in_KP.
void check_kp_base(const LaurentPoly& P);

struct PsiResult {
  bool pass = true;
  std::optional<Rational> witness;  // first failing alpha
};

/// For each alpha decides exactly whether some beta in Q gives
/// (P - alpha) | (Q - beta). Pass iff every sample succeeds.
PsiResult psi_check(const LaurentPoly& Q, const LaurentPoly& P,
                    const std::vector<Rational>& samples);

/// The beta for a single alpha, or nothing when none exists.
std::optional<Rational> psi_beta(const LaurentPoly& Q, const LaurentPoly& P, const Rational& alpha);

/// Coefficients of Q = sum_{i=-N}^{N} c_i g^i on a symmetric window.
struct LineCoordinates {
  long window = 0;  // N
  std::vector<Rational> coefficients;  // index i + N
};

std::optional<LineCoordinates> in_K_g(const LaurentPoly& Q, const Exponents& g);

/// x is a non-constant unit with (g - 1) | (x - 1). g must be a non-constant monomial.
bool powers_predicate(const LaurentPoly& x, const LaurentPoly& g);

/// The pair (sum alpha_i P^i, P^n) with n = length - 1.
struct TupleCode {
  LaurentPoly value;
  LaurentPoly marker;
  LaurentPoly base;
};

TupleCode tuple_encode(const std::vector<Rational>& alphas, const LaurentPoly& P);
std::vector<Rational> tuple_decode(const TupleCode& code);

/// Decodes under the code's base and re-encodes under Q.
TupleCode nu_transport(const TupleCode& code, const LaurentPoly& Q);

std::string to_string(const LaurentPoly& p);

}  // namespace freering
