#include "freering/group_ring.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <span>
#include <unordered_map>

#include "freering/error.hpp"
#include "freering/linalg.hpp"
#include "freering/magnus.hpp"

namespace freering {

namespace {

using Accumulator = std::unordered_map<Word, Rational, WordHash>;
using Wide = __int128;
using IntAccumulator = std::unordered_map<Word, Wide, WordHash>;

bool shortlex_less(const Word& a, const Word& b) { return shortlex_compare(a, b) < 0; }

// Sorts by word through a permutation applied with swaps, so that neither
// words nor rationals are copied or re-allocated.
template <class T>
void sort_by_word(std::vector<std::pair<Word, T>>& v) {
  std::vector<std::size_t> perm(v.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return shortlex_less(v[a].first, v[b].first); });
  // Position i must receive v[perm[i]].
  std::vector<char> done(v.size(), 0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (done[i]) continue;
    std::size_t j = i;
    while (perm[j] != i) {
      std::swap(v[j], v[perm[j]]);
      done[j] = 1;
      j = perm[j];
    }
    done[j] = 1;
  }
}

std::vector<GroupRingElem::Term> drain(Accumulator& acc) {
  std::vector<GroupRingElem::Term> out;
  out.reserve(acc.size());
  for (auto& [w, c] : acc) {
    if (c != 0) {
      out.emplace_back(w, Rational());
      out.back().second.swap(c);
    }
  }
  sort_by_word(out);
  return out;
}

// Coefficients are integers well inside 64 bits, so sums of products of
// two of them cannot overflow 128 bits in any realistic expansion.
constexpr int kSmallBits = 40;

bool small_integral(const GroupRingElem& f) {
  for (const auto& [w, c] : f.terms()) {
    if (c.get_den() != 1 || mpz_sizeinbase(c.get_num_mpz_t(), 2) > kSmallBits) return false;
  }
  return true;
}

Wide wide_of(const Rational& c) { return static_cast<Wide>(c.get_num().get_si()); }

Rational rational_of(Wide x) {
  if (x >= std::numeric_limits<long>::min() && x <= std::numeric_limits<long>::max()) {
    return Rational(static_cast<long>(x));
  }
  const bool negative = x < 0;
  unsigned __int128 m = negative ? -static_cast<unsigned __int128>(x) : static_cast<unsigned __int128>(x);
  Integer z(static_cast<unsigned long>(m >> 64));
  z <<= 64;
  z += static_cast<unsigned long>(m & ~std::uint64_t{0});
  if (negative) z = -z;
  return Rational(z);
}

std::vector<GroupRingElem::Term> drain(IntAccumulator& acc) {
  std::vector<std::pair<Word, Wide>> tmp;
  tmp.reserve(acc.size());
  for (auto& [w, c] : acc) {
    if (c != 0) tmp.emplace_back(w, c);
  }
  sort_by_word(tmp);
  std::vector<GroupRingElem::Term> out;
  out.reserve(tmp.size());
  for (auto& [w, c] : tmp) out.emplace_back(std::move(w), rational_of(c));
  return out;
}

}  // namespace

GroupRingElem::GroupRingElem(int rank) : rank_(rank) {
  if (rank < 1) throw Error(ErrorKind::Precondition, "rank must be positive");
}

GroupRingElem GroupRingElem::scalar(int rank, const Rational& c) {
  GroupRingElem out(rank);
  if (c != 0) out.terms_.emplace_back(Word(rank), c);
  return out;
}

GroupRingElem GroupRingElem::monomial(const Word& w, const Rational& c) {
  GroupRingElem out(w.rank());
  if (c != 0) out.terms_.emplace_back(w, c);
  return out;
}

GroupRingElem GroupRingElem::from_distinct_terms(int rank, std::vector<Term> terms) {
  GroupRingElem out(rank);
  std::erase_if(terms, [](const Term& t) { return t.second == 0; });
  for (const auto& t : terms) check_same_rank(rank, t.first.rank());
  sort_by_word(terms);
  for (std::size_t i = 1; i < terms.size(); ++i) {
    if (terms[i].first == terms[i - 1].first) throw Error(ErrorKind::Precondition, "repeated word");
  }
  out.terms_ = std::move(terms);
  return out;
}

GroupRingElem GroupRingElem::from_terms(int rank, const std::vector<Term>& terms) {
  GroupRingElem out(rank);
  Accumulator acc;
  acc.reserve(terms.size());
  for (const auto& [w, c] : terms) {
    check_same_rank(rank, w.rank());
    acc[w] += c;
  }
  out.terms_ = drain(acc);
  return out;
}

Rational GroupRingElem::coefficient(const Word& w) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), w, [](const Term& t, const Word& x) {
    return shortlex_compare(t.first, x) < 0;
  });
  if (it != terms_.end() && it->first == w) return it->second;
  return 0;
}

std::vector<Word> GroupRingElem::support() const {
  std::vector<Word> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back(t.first);
  return out;
}

GroupRingElem operator+(const GroupRingElem& a, const GroupRingElem& b) {
  check_same_rank(a.rank_, b.rank_);
  GroupRingElem out(a.rank_);
  auto& t = out.terms_;
  t.reserve(a.terms_.size() + b.terms_.size());
  auto i = a.terms_.begin();
  auto j = b.terms_.begin();
  while (i != a.terms_.end() || j != b.terms_.end()) {
    int c = 0;
    if (i == a.terms_.end()) {
      c = 1;
    } else if (j == b.terms_.end()) {
      c = -1;
    } else {
      c = shortlex_compare(i->first, j->first);
    }
    if (c < 0) {
      t.push_back(*i++);
    } else if (c > 0) {
      t.push_back(*j++);
    } else {
      Rational s = i->second + j->second;
      if (s != 0) t.emplace_back(i->first, std::move(s));
      ++i;
      ++j;
    }
  }
  return out;
}

GroupRingElem operator-(const GroupRingElem& a) {
  GroupRingElem out = a;
  for (auto& [w, c] : out.terms_) c = -c;
  return out;
}

GroupRingElem operator-(const GroupRingElem& a, const GroupRingElem& b) { return a + (-b); }

GroupRingElem operator*(const GroupRingElem& a, const GroupRingElem& b) {
  check_same_rank(a.rank_, b.rank_);
  GroupRingElem out(a.rank_);
  if (a.is_zero() || b.is_zero()) return out;
  const std::size_t hint = std::min<std::size_t>(a.terms_.size() * b.terms_.size(), 1u << 20);
  if (a.terms_.size() == 1 || b.terms_.size() == 1) {
    // Products with a single term have distinct words.
    std::vector<GroupRingElem::Term> terms;
    terms.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& [u, cu] : a.terms_) {
      for (const auto& [v, cv] : b.terms_) terms.emplace_back(u * v, cu * cv);
    }
    sort_by_word(terms);
    out.terms_ = std::move(terms);
    return out;
  }
  if (small_integral(a) && small_integral(b)) {
    IntAccumulator acc;
    acc.reserve(hint);
    for (const auto& [u, cu] : a.terms_) {
      const Wide x = wide_of(cu);
      for (const auto& [v, cv] : b.terms_) acc[u * v] += x * wide_of(cv);
    }
    out.terms_ = drain(acc);
    return out;
  }
  Accumulator acc;
  acc.reserve(hint);
  Rational prod;
  for (const auto& [u, cu] : a.terms_) {
    for (const auto& [v, cv] : b.terms_) {
      mpq_mul(prod.get_mpq_t(), cu.get_mpq_t(), cv.get_mpq_t());
      acc[u * v] += prod;
    }
  }
  out.terms_ = drain(acc);
  return out;
}

GroupRingElem operator*(const Rational& s, const GroupRingElem& a) {
  GroupRingElem out(a.rank_);
  if (s == 0) return out;
  out.terms_ = a.terms_;
  for (auto& [w, c] : out.terms_) c *= s;
  return out;
}

GroupRingElem one_minus(const Word& g) {
  return GroupRingElem::scalar(g.rank(), 1) - GroupRingElem::monomial(g);
}

GroupRingElem expand_product(const std::vector<GroupRingElem>& factors, std::size_t max_terms) {
  if (factors.empty()) throw Error(ErrorKind::Precondition, "empty product has no rank");
  const int rank = factors.front().rank();
  auto too_large = [&] {
    return Error(ErrorKind::ExpansionTooLarge, "expanded product exceeds " + std::to_string(max_terms) + " terms");
  };
  GroupRingElem acc = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) {
    const GroupRingElem& f = factors[i];
    check_same_rank(rank, f.rank());
    if (acc.size() * f.size() <= max_terms) {
      acc = acc * f;
      continue;
    }
    // Partial sums may exceed the final size through cancellation; allow
    // some slack before giving up so memory stays bounded.
    GroupRingElem next(rank);
    const std::size_t hint = std::min<std::size_t>(acc.size() * f.size(), 2 * max_terms);
    if (small_integral(acc) && small_integral(f)) {
      IntAccumulator sum;
      sum.reserve(hint);
      for (const auto& [u, cu] : acc.terms_) {
        const Wide x = wide_of(cu);
        for (const auto& [v, cv] : f.terms_) sum[u * v] += x * wide_of(cv);
        if (sum.size() > 2 * max_terms) throw too_large();
      }
      next.terms_ = drain(sum);
    } else {
      Accumulator sum;
      sum.reserve(hint);
      Rational prod;
      for (const auto& [u, cu] : acc.terms_) {
        for (const auto& [v, cv] : f.terms_) {
          mpq_mul(prod.get_mpq_t(), cu.get_mpq_t(), cv.get_mpq_t());
          sum[u * v] += prod;
        }
        if (sum.size() > 2 * max_terms) throw too_large();
      }
      next.terms_ = drain(sum);
    }
    if (next.size() > max_terms) throw too_large();
    acc = std::move(next);
  }
  return acc;
}

Rational augmentation(const GroupRingElem& f) {
  Rational s = 0;
  for (const auto& [w, c] : f.terms()) s += c;
  return s;
}

std::optional<TrivialUnit> is_trivial_unit(const GroupRingElem& f) {
  if (f.size() != 1) return std::nullopt;
  return TrivialUnit{f.terms().front().second, f.terms().front().first};
}

bool field_unit_predicate(const GroupRingElem& x) {
  if (x == GroupRingElem::scalar(x.rank(), -1)) return true;
  return is_trivial_unit(x) && is_trivial_unit(x + GroupRingElem::scalar(x.rank(), 1));
}

LaurentPoly specialize_abelian(const GroupRingElem& f) {
  LaurentPoly out(f.rank());
  for (const auto& [w, c] : f.terms()) out.add_term(abelianize(w), c);
  return out;
}

LaurentPoly specialize_powers(const GroupRingElem& f, const std::vector<long>& k) {
  if (static_cast<int>(k.size()) != f.rank()) {
    throw Error(ErrorKind::RankMismatch, "substitution vector length does not match rank");
  }
  LaurentPoly out(1);
  for (const auto& [w, c] : f.terms()) {
    const auto ab = abelianize(w);
    long e = 0;
    for (std::size_t i = 0; i < k.size(); ++i) e += k[i] * ab[i];
    out.add_term({e}, c);
  }
  return out;
}

namespace {

struct KeyedTerm {
  MagnusKey key;
  Rational coef;
};

std::vector<KeyedTerm> keyed(const GroupRingElem& f) {
  std::vector<KeyedTerm> out;
  out.reserve(f.size());
  for (const auto& [w, c] : f.terms()) out.push_back({MagnusKey(w), c});
  return out;
}

std::pair<std::size_t, std::size_t> extremes(const std::vector<KeyedTerm>& t) {
  std::size_t lo = 0;
  std::size_t hi = 0;
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (t[i].key < t[lo].key) lo = i;
    if (t[i].key > t[hi].key) hi = i;
  }
  return {lo, hi};
}

}  // namespace

namespace {

struct LetterVecHash {
  std::size_t operator()(const std::vector<Letter>& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (Letter l : v) h = (h ^ static_cast<std::size_t>(static_cast<unsigned>(l))) * 1099511628211ull;
    return h;
  }
};

// The folded graph of <g> for g = s g0 s^-1: a tail reading s from the base
// into a cycle reading g0. Vertex ids: tail 0..|s|-1, then cycle |s|+k.
class CyclicSubgroupGraph {
 public:
  explicit CyclicSubgroupGraph(const Word& g) {
    const auto red = cyclic_reduce(g);
    tail_ = red.conjugator.letters();
    cycle_ = red.core.letters();
  }

  // Reads x greedily from the base. Returns the stop vertex, the number of
  // letters read and the winding number j, so that x = g^j p_v r where p_v is
  // the winding-free path to v and r the unread suffix.
  void read(const std::vector<Letter>& x, int& vertex, std::size_t& consumed, long& winding) const {
    const int S = static_cast<int>(tail_.size());
    const int L = static_cast<int>(cycle_.size());
    int v = 0;
    long wind = 0;
    std::size_t n = 0;
    for (; n < x.size(); ++n) {
      const Letter l = x[n];
      if (v < S) {
        if (l == tail_[static_cast<std::size_t>(v)]) {
          ++v;
        } else if (v > 0 && l == -tail_[static_cast<std::size_t>(v - 1)]) {
          --v;
        } else {
          break;
        }
        continue;
      }
      const int k = v - S;
      if (l == cycle_[static_cast<std::size_t>(k)]) {
        if (k + 1 == L) {
          v = S;
          ++wind;
        } else {
          ++v;
        }
      } else if (l == -cycle_[static_cast<std::size_t>(k == 0 ? L - 1 : k - 1)]) {
        if (k == 0) {
          v = S + L - 1;
          --wind;
        } else {
          --v;
        }
      } else if (k == 0 && S > 0 && l == -tail_.back()) {
        v = S - 1;
      } else {
        break;
      }
    }
    vertex = v;
    consumed = n;
    winding = wind;
  }

  // Letters of g^j p_v r, freely reduced.
  Word point(int vertex, long j, std::span<const Letter> rest, int rank) const {
    const int S = static_cast<int>(tail_.size());
    std::vector<Letter> out(tail_.begin(), tail_.end());
    const long reps = j < 0 ? -j : j;
    for (long t = 0; t < reps; ++t) {
      if (j > 0) {
        out.insert(out.end(), cycle_.begin(), cycle_.end());
      } else {
        for (auto it = cycle_.rbegin(); it != cycle_.rend(); ++it) out.push_back(-*it);
      }
    }
    if (vertex < S) {
      for (int i = S - 1; i >= vertex; --i) out.push_back(-tail_[static_cast<std::size_t>(i)]);
    } else {
      out.insert(out.end(), cycle_.begin(), cycle_.begin() + (vertex - S));
    }
    out.insert(out.end(), rest.begin(), rest.end());
    return Word::reduce(out, rank);
  }

 private:
  std::vector<Letter> tail_;
  std::vector<Letter> cycle_;
};

// Solves (1 + c g) q = w' for g != 1, where w' has the terms
// scale * coef at P x (or P x^-1 when `invert_in`). Left multiplication by g
// splits F into orbits {g^j x}; on each the equation reads q_j + c q_{j-1} = w'_j,
// which has a finitely supported solution iff the forward recurrence ends at
// zero. Output words are inverted when `invert_out`.
std::optional<std::vector<GroupRingElem::Term>> solve_one_plus(const Rational& c, const Word& g,
                                                               const GroupRingElem& w, const Word& P,
                                                               const Rational& scale, bool invert_in,
                                                               bool invert_out) {
  const int rank = w.rank();
  const CyclicSubgroupGraph graph(g);
  struct Point {
    long j;
    const Rational* coef;
  };
  struct Orbit {
    int vertex;
    std::vector<Letter> rest;
    std::vector<Point> points;
  };
  std::vector<Orbit> orbits;
  std::unordered_map<std::vector<Letter>, std::size_t, LetterVecHash> index;
  index.reserve(w.size());
  std::vector<Letter> key;
  for (const auto& [x, coef] : w.terms()) {
    const Word y = invert_in ? P * x.inverse() : P * x;
    int vertex = 0;
    std::size_t consumed = 0;
    long j = 0;
    graph.read(y.letters(), vertex, consumed, j);
    key.assign(1, vertex);
    key.insert(key.end(), y.letters().begin() + static_cast<long>(consumed), y.letters().end());
    auto [it, fresh] = index.try_emplace(key, orbits.size());
    if (fresh) orbits.push_back({vertex, std::vector<Letter>(key.begin() + 1, key.end()), {}});
    orbits[it->second].points.push_back({j, &coef});
  }

  // With c = +-1 and integral data the recurrence stays in machine integers.
  const bool integral = (c == 1 || c == -1) && scale.get_den() == 1 &&
                        mpz_sizeinbase(scale.get_num_mpz_t(), 2) <= kSmallBits && small_integral(w);
  const Wide ci = integral ? wide_of(c) : 0;
  const Wide si = integral ? wide_of(scale) : 0;

  std::vector<GroupRingElem::Term> q;
  auto emit = [&](const Orbit& orbit, long j, Rational value) {
    Word x = graph.point(orbit.vertex, j, orbit.rest, rank);
    q.emplace_back(invert_out ? x.inverse() : std::move(x), std::move(value));
  };
  Rational prev;
  Rational qj;
  Rational tmp;
  for (auto& orbit : orbits) {
    auto& points = orbit.points;
    std::sort(points.begin(), points.end(), [](const Point& a, const Point& b) { return a.j < b.j; });
    std::size_t k = 0;
    if (integral) {
      Wide p = 0;
      for (long j = points.front().j; j <= points.back().j; ++j) {
        Wide v = -ci * p;
        if (k < points.size() && points[k].j == j) v += si * wide_of(*points[k++].coef);
        if (j == points.back().j) {
          if (v != 0) return std::nullopt;
          break;
        }
        if (v != 0) emit(orbit, j, rational_of(v));
        p = v;
      }
      continue;
    }
    prev = 0;
    for (long j = points.front().j; j <= points.back().j; ++j) {
      mpq_mul(qj.get_mpq_t(), c.get_mpq_t(), prev.get_mpq_t());
      mpq_neg(qj.get_mpq_t(), qj.get_mpq_t());
      if (k < points.size() && points[k].j == j) {
        mpq_mul(tmp.get_mpq_t(), scale.get_mpq_t(), points[k++].coef->get_mpq_t());
        qj += tmp;
      }
      if (j == points.back().j) {
        if (qj != 0) return std::nullopt;
        break;
      }
      if (qj != 0) emit(orbit, j, qj);
      prev.swap(qj);
    }
  }
  return q;
}

}  // namespace

DivisionResult divide_exact(const GroupRingElem& w, const GroupRingElem& d, Side side,
                            std::size_t budget) {
  check_same_rank(w.rank(), d.rank());
  if (d.is_zero()) throw Error(ErrorKind::ZeroDivisor, "division by zero");
  const int rank = w.rank();
  if (w.is_zero()) return {DivisionStatus::Exact, GroupRingElem(rank)};
  const bool left = side == Side::Left;

  if (d.size() == 1) {
    const auto& [g, a] = d.terms().front();
    const GroupRingElem ginv = GroupRingElem::monomial(g.inverse(), 1 / a);
    return {DivisionStatus::Exact, left ? ginv * w : w * ginv};
  }

  if (d.size() == 2) {
    // d = a u + b v. Left: d = a u (1 + (b/a) u^-1 v). Right: d = (1 + (b/a) v u^-1) a u,
    // and word inversion turns the right problem into a left one.
    const auto& [u, a] = d.terms()[0];
    const auto& [v, b] = d.terms()[1];
    const Rational c = b / a;
    const Rational scale = 1 / a;
    const auto q = left ? solve_one_plus(c, u.inverse() * v, w, u.inverse(), scale, false, false)
                        : solve_one_plus(c, u * v.inverse(), w, u, scale, true, true);
    if (!q) return {DivisionStatus::NotDivisible, std::nullopt};
    if (q->size() > budget) return {DivisionStatus::BudgetExhausted, std::nullopt};
    return {DivisionStatus::Exact, GroupRingElem::from_distinct_terms(rank, std::move(*q))};
  }

  // The abelianization is a ring map into a commutative domain, so any
  // quotient in Q(F) maps to a quotient there.
  const LaurentPoly ad = specialize_abelian(d);
  const LaurentPoly aw = specialize_abelian(w);
  if (ad.is_zero()) {
    if (!aw.is_zero()) return {DivisionStatus::NotDivisible, std::nullopt};
  } else if (!divides_exact(ad, aw)) {
    return {DivisionStatus::NotDivisible, std::nullopt};
  }

  const std::vector<KeyedTerm> dk = keyed(d);
  std::vector<KeyedTerm> wk = keyed(w);
  const auto [dlo, dhi] = extremes(dk);
  const auto [wlo, whi] = extremes(wk);
  const MagnusKey dmax_inv(dk[dhi].key.word().inverse());
  const Rational dmax_coef = dk[dhi].coef;
  // Every quotient word is at least min(d)^-1 min(w) (left) or min(w) min(d)^-1.
  const MagnusKey dmin_inv(dk[dlo].key.word().inverse());
  const MagnusKey qmin = left ? dmin_inv * wk[wlo].key : wk[wlo].key * dmin_inv;

  std::map<MagnusKey, Rational> rem;
  for (auto& t : wk) rem.emplace(std::move(t.key), std::move(t.coef));

  std::vector<GroupRingElem::Term> q;
  while (!rem.empty()) {
    if (q.size() >= budget) return {DivisionStatus::BudgetExhausted, std::nullopt};
    const auto top = std::prev(rem.end());
    MagnusKey t = left ? dmax_inv * top->first : top->first * dmax_inv;
    const Rational c = top->second / dmax_coef;
    if (t < qmin) return {DivisionStatus::NotDivisible, std::nullopt};
    for (const auto& [g, a] : dk) {
      auto [it, inserted] = rem.try_emplace(left ? g * t : t * g, -a * c);
      if (!inserted) {
        it->second -= a * c;
        if (it->second == 0) rem.erase(it);
      }
    }
    const bool last = t == qmin;
    q.emplace_back(t.word(), c);
    if (last && !rem.empty()) return {DivisionStatus::NotDivisible, std::nullopt};
  }
  return {DivisionStatus::Exact, GroupRingElem::from_terms(rank, q)};
}

PrimitiveRoot centralizer_root(const Word& g) { return primitive_root(g); }

IrreducibilityCertificate irreducibility_certificate(const GroupRingElem& f) {
  if (f.is_zero()) throw Error(ErrorKind::ZeroInput, "certificate requested for zero");
  const int rank = f.rank();
  if (f.size() != 2 || f.coefficient(Word(rank)) != 1) return {};
  const auto& h_term = f.terms()[0].first.is_identity() ? f.terms()[1] : f.terms()[0];
  if (h_term.second != -1) return {};
  const Word& h = h_term.first;

  const PrimitiveRoot pr = primitive_root(h);
  if (pr.exponent > 1) {
    GroupRingElem sum(rank);
    for (long i = 0; i < pr.exponent; ++i) sum = sum + GroupRingElem::monomial(pr.root.pow(i));
    return {Verdict::Reducible, std::make_pair(one_minus(pr.root), std::move(sum))};
  }

  const auto ab = abelianize(h);
  long g = 0;
  int nonzero = 0;
  for (long e : ab) {
    if (e != 0) {
      ++nonzero;
      g = std::gcd(g, e < 0 ? -e : e);
    }
  }
  if (nonzero >= 1 && nonzero <= 2 && g == 1) return {Verdict::Irreducible, std::nullopt};
  return {};
}

bool rigidity_certificate(const std::vector<Word>& factors) {
  for (const auto& g : factors) {
    if (g.is_identity()) return false;
    if (irreducibility_certificate(one_minus(g)).verdict != Verdict::Irreducible) return false;
  }
  return true;
}

std::optional<GroupRingElem> brute_inverse_search(const GroupRingElem& f, int radius,
                                                  std::size_t max_terms) {
  if (f.is_zero()) throw Error(ErrorKind::ZeroInput, "zero has no inverse");
  const int rank = f.rank();
  const std::vector<Word> columns = ball(rank, radius);

  // Row per word of f * (ball); the unknowns are the coefficients on the ball.
  std::unordered_map<Word, std::size_t, WordHash> row_of;
  std::vector<SparseRow> rows;
  for (std::size_t j = 0; j < columns.size(); ++j) {
    for (const auto& [h, a] : f.terms()) {
      auto [it, inserted] = row_of.try_emplace(h * columns[j], rows.size());
      if (inserted) rows.emplace_back();
      rows[it->second].emplace_back(j, a);
    }
  }
  std::vector<Rational> rhs(rows.size(), Rational(0));
  auto one = row_of.find(Word(rank));
  if (one == row_of.end()) return std::nullopt;
  rhs[one->second] = 1;

  auto sol = solve_linear(rows, rhs, columns.size());
  if (!sol) return std::nullopt;
  // x -> f x is injective (no zero divisors), so the solution is unique and
  // no other support can do better.
  if (sol->nullity != 0) throw Error(ErrorKind::Internal, "zero divisor found in Q(F)");
  std::vector<GroupRingElem::Term> terms;
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (sol->values[j] != 0) terms.emplace_back(columns[j], sol->values[j]);
  }
  if (terms.size() > max_terms) return std::nullopt;
  return GroupRingElem::from_terms(rank, terms);
}

std::string to_string(const GroupRingElem& f) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : f.terms()) {
    const Rational mag = abs(c);
    if (!first) out += c < 0 ? " - " : " + ";
    if (w.is_identity()) {
      out += (first ? c : mag).get_str();
    } else if (mag == 1) {
      // The grammar has no unary minus, only signed numbers.
      if (first && c < 0) out += "-1*";
      out += to_string(w);
    } else {
      out += (first ? c : mag).get_str() + '*' + to_string(w);
    }
    first = false;
  }
  return out;
}

}  // namespace freering
