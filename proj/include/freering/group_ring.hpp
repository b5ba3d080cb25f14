#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "freering/laurent.hpp"
#include "freering/rational.hpp"
#include "freering/word.hpp"

namespace freering {

/// Element of the group algebra Q(F) of the free group of the given rank:
/// a finite formal sum of reduced words with nonzero rational coefficients.
/// Terms are kept sorted shortlex by word.
class GroupRingElem {
 public:
  using Term = std::pair<Word, Rational>;

  explicit GroupRingElem(int rank);

  static GroupRingElem scalar(int rank, const Rational& c);
  static GroupRingElem monomial(const Word& w, const Rational& c = 1);
  /// Sums the given terms; repeated words accumulate, zeros vanish.
  static GroupRingElem from_terms(int rank, const std::vector<Term>& terms);
  /// Same for pairwise distinct words; skips the accumulation pass.
  static GroupRingElem from_distinct_terms(int rank, std::vector<Term> terms);

  int rank() const noexcept { return rank_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  Rational coefficient(const Word& w) const;
  std::vector<Word> support() const;

  friend GroupRingElem operator+(const GroupRingElem& a, const GroupRingElem& b);
  friend GroupRingElem operator-(const GroupRingElem& a, const GroupRingElem& b);
  friend GroupRingElem operator-(const GroupRingElem& a);
  friend GroupRingElem operator*(const GroupRingElem& a, const GroupRingElem& b);
  friend GroupRingElem operator*(const Rational& s, const GroupRingElem& a);
  friend bool operator==(const GroupRingElem& a, const GroupRingElem& b) = default;
  friend GroupRingElem expand_product(const std::vector<GroupRingElem>& factors, std::size_t max_terms);

 private:
  int rank_;
  std::vector<Term> terms_;
};

/// 1 - g.
GroupRingElem one_minus(const Word& g);

/// Multiplies the factors left to right. Throws ExpansionTooLarge as soon as
/// an intermediate product has more than `max_terms` terms, or a partial sum
/// inside one step more than 2 * max_terms.
GroupRingElem expand_product(const std::vector<GroupRingElem>& factors, std::size_t max_terms);

Rational augmentation(const GroupRingElem& f);

struct TrivialUnit {
  Rational alpha;
  Word g;
};

/// alpha * g when f has exactly one term; units of Q(F) are exactly these.
std::optional<TrivialUnit> is_trivial_unit(const GroupRingElem& f);

/// x == -1, or both x and x + 1 are units. Holds exactly on nonzero scalars.
bool field_unit_predicate(const GroupRingElem& x);

/// Image in the Laurent ring Q[X1^{+-1}, ..., Xn^{+-1}] of the abelianization.
LaurentPoly specialize_abelian(const GroupRingElem& f);

/// Image under x_i -> z^{k_i} in Q[z, z^-1].
LaurentPoly specialize_powers(const GroupRingElem& f, const std::vector<long>& k);

enum class Side { Left, Right };

enum class DivisionStatus { Exact, NotDivisible, BudgetExhausted };

struct DivisionResult {
  DivisionStatus status = DivisionStatus::NotDivisible;
  std::optional<GroupRingElem> quotient;  // present iff Exact
};

/// Left: q with d * q == w. Right: q with q * d == w.
///
/// Peels the quotient from the top of the Bergman order: the largest word of
/// a product is the product of the largest words. NotDivisible is a proof;
/// BudgetExhausted means the quotient would need more than `budget` terms.
/// Throws ZeroDivisor when d == 0.
DivisionResult divide_exact(const GroupRingElem& w, const GroupRingElem& d, Side side,
                            std::size_t budget);

/// g = root^k with root not a proper power. The centralizer of g in Q(F) is
/// Q[root, root^-1]. Throws IdentityInput on the identity.
PrimitiveRoot centralizer_root(const Word& g);

enum class Verdict { Irreducible, Reducible, Unknown };

struct IrreducibilityCertificate {
  Verdict verdict = Verdict::Unknown;
  /// For Reducible: (1 - r) and (1 + r + ... + r^{k-1}) with h = r^k.
  std::optional<std::pair<GroupRingElem, GroupRingElem>> witness;
};

/// Decides what it can about 1 - h. Unknown when f is not of that shape or
/// when neither the proper-power test nor the abelian gcd test applies.
/// Throws ZeroInput on f == 0.
IrreducibilityCertificate irreducibility_certificate(const GroupRingElem& f);

/// True iff every g_i != 1 and every 1 - g_i is certified Irreducible, which
/// makes the product of the (1 - g_i) rigid.
bool rigidity_certificate(const std::vector<Word>& factors);

/// An inverse of f supported in the ball of the given radius with at most
/// `max_terms` terms, or nothing. Throws ZeroInput on f == 0.
std::optional<GroupRingElem> brute_inverse_search(const GroupRingElem& f, int radius,
                                                  std::size_t max_terms);

/// Canonical expression form, parseable back with the same rank,
/// e.g. "1 - 2*x1 + 1/2*x1^-1*x2".
std::string to_string(const GroupRingElem& f);

}  // namespace freering
