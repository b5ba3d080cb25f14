#include "freering/codec.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <string>

#include "freering/error.hpp"
#include "freering/linalg.hpp"
#include "freering/magnus.hpp"

namespace freering {

namespace {

Word x1_x2(long i, long j, int rank) {
  return Word::generator(1, rank).pow(i) * Word::generator(2, rank).pow(j);
}

void require_two_generators(int rank) {
  if (rank < 2) throw Error(ErrorKind::Precondition, "the codecs need at least two generators");
}

std::size_t division_budget(const GroupRingElem& r) { return 2 * r.size() + 64; }

bool divides(const GroupRingElem& w, const GroupRingElem& d, Side side,
             GroupRingElem* quotient = nullptr) {
  DivisionResult res = divide_exact(w, d, side, division_budget(w));
  if (res.status != DivisionStatus::Exact) return false;
  if (quotient) *quotient = std::move(*res.quotient);
  return true;
}

std::vector<GroupRingElem> block_factors(const Word& a, const Word& b, const Word& c, int i) {
  std::vector<GroupRingElem> out{one_minus(c)};
  for (int k = 0; k <= i; ++k) out.push_back(one_minus(a));
  out.push_back(one_minus(b));
  return out;
}

GroupRingElem block(const Word& a, const Word& b, const Word& c, int i) {
  GroupRingElem out = GroupRingElem::scalar(a.rank(), 1);
  for (const auto& f : block_factors(a, b, c, i)) out = out * f;
  return out;
}

// Divides by the product of `factors` one factor at a time; Q(F) has no zero
// divisors, so the product divides iff every step does.
bool divides_all(const GroupRingElem& w, const std::vector<GroupRingElem>& factors, Side side,
                 GroupRingElem* quotient = nullptr) {
  GroupRingElem rem = w;
  const std::size_t n = factors.size();
  for (std::size_t k = 0; k < n; ++k) {
    const GroupRingElem& f = side == Side::Left ? factors[k] : factors[n - 1 - k];
    if (!divides(rem, f, side, &rem)) return false;
  }
  if (quotient) *quotient = std::move(rem);
  return true;
}

std::vector<GroupRingElem> concat(std::vector<GroupRingElem> a, const std::vector<GroupRingElem>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// beta (1 - M) with beta != 0 and M not the identity.
std::optional<Word> payload_word(const GroupRingElem& p) {
  if (p.size() != 2) return std::nullopt;
  const Rational beta = p.coefficient(Word(p.rank()));
  if (beta == 0) return std::nullopt;
  const auto& other = p.terms()[0].first.is_identity() ? p.terms()[1] : p.terms()[0];
  if (other.second != -beta) return std::nullopt;
  return other.first;
}

}  // namespace

void validate_markers(const MarkerFamily& fam) {
  const Word* all[] = {&fam.a, &fam.b, &fam.c};
  const char* names[] = {"a", "b", "c"};
  for (int k = 0; k < 3; ++k) {
    if (all[k]->is_identity() ||
        irreducibility_certificate(one_minus(*all[k])).verdict != Verdict::Irreducible) {
      throw Error(ErrorKind::MarkerInvariant,
                  std::string("1 - ") + names[k] + " is not certified irreducible");
    }
  }
  for (int k = 0; k < 3; ++k) {
    for (int l = k + 1; l < 3; ++l) {
      if (*all[k] * *all[l] == *all[l] * *all[k]) {
        throw Error(ErrorKind::MarkerInvariant,
                    std::string("markers ") + names[k] + " and " + names[l] + " commute");
      }
    }
  }
  const int longest = (fam.m - 1) / 2;  // words of length < m/2
  std::optional<std::vector<Word>> small;
  for (int k = 0; k < 3; ++k) {
    // At degree 1 the y1 coefficient of a word is its x1 exponent sum, which
    // is at most its length; a larger x1 exponent sum settles the comparison.
    if (abelianize(*all[k])[0] > longest) continue;
    if (!small) small = ball(all[k]->rank(), longest);
    for (const auto& u : *small) {
      if (bergman_cmp(u, *all[k]).order != Order::Less) {
        throw Error(ErrorKind::MarkerInvariant, std::string("marker ") + names[k] +
                                                    " does not dominate " + to_string(u));
      }
    }
  }
}

MarkerFamily markers(int m, int rank) {
  if (m < 1) throw Error(ErrorKind::Precondition, "marker index must be positive");
  require_two_generators(rank);
  MarkerFamily fam{m, x1_x2(m + 2, m + 3, rank), x1_x2(m, m + 1, rank),
                   x1_x2(m + 1, m + 2, rank)};
  validate_markers(fam);
  return fam;
}

GroupRingElem a_block(const MarkerFamily& fam, int i) {
  if (i < 0) throw Error(ErrorKind::Precondition, "block index must be nonnegative");
  return block(fam.a, fam.b, fam.c, i);
}

std::vector<GroupRingElem> word_code_factors(const std::vector<Letter>& t, int rank) {
  if (t.empty()) throw Error(ErrorKind::Precondition, "tuple must be nonempty");
  require_two_generators(rank);
  for (std::size_t j = 0; j < t.size(); ++j) {
    if (t[j] == 0) throw Error(ErrorKind::ZeroLetter, "zero letter in tuple");
    if (std::abs(t[j]) > rank) {
      throw Error(ErrorKind::LetterOutOfRange, "letter " + std::to_string(t[j]) + " exceeds rank");
    }
    if (j > 0 && t[j] == -t[j - 1]) {
      throw Error(ErrorKind::UnreducedTuple, "adjacent letters cancel at position " +
                                                 std::to_string(j));
    }
  }
  const int m = static_cast<int>(t.size());
  const MarkerFamily fam = markers(m, rank);
  std::vector<GroupRingElem> factors{a_block(fam, 0)};
  Word prefix(rank);
  for (int i = 1; i <= m; ++i) {
    prefix = prefix * Word::generator(t[static_cast<std::size_t>(i - 1)], rank);
    factors.push_back(one_minus(prefix));
    factors.push_back(a_block(fam, i));
  }
  return factors;
}

WordCode encode_word(const std::vector<Letter>& t, int rank, std::size_t max_terms) {
  return {static_cast<int>(t.size()), expand_product(word_code_factors(t, rank), max_terms)};
}

std::vector<Letter> decode_word(const WordCode& code) {
  const int m = code.m;
  const int rank = code.w.rank();
  if (m < 1) throw Error(ErrorKind::Precondition, "payload length must be positive");
  require_two_generators(rank);
  const MarkerFamily fam = markers(m, rank);

  GroupRingElem rem(rank);
  auto block_of = [&](int i) { return block_factors(fam.a, fam.b, fam.c, i); };
  if (code.w.is_zero() || !divides_all(code.w, block_of(0), Side::Left, &rem)) {
    throw Error(ErrorKind::NoCandidate, "head block A_{m,0} does not divide");
  }
  std::vector<Letter> out;
  Word prefix(rank);
  for (int i = 1; i <= m; ++i) {
    const std::vector<GroupRingElem> block_i = block_of(i);
    std::vector<std::pair<Letter, GroupRingElem>> hits;
    for (int g = 1; g <= rank; ++g) {
      for (Letter l : {g, -g}) {
        if (!out.empty() && l == -out.back()) continue;
        const Word next = prefix * Word::generator(l, rank);
        GroupRingElem q(rank);
        if (divides_all(rem, concat({one_minus(next)}, block_i), Side::Left, &q)) {
          hits.emplace_back(l, std::move(q));
        }
      }
    }
    if (hits.empty()) {
      throw Error(ErrorKind::NoCandidate, "no letter fits at position " + std::to_string(i));
    }
    if (hits.size() > 1) {
      throw Error(ErrorKind::AmbiguousCandidate,
                  "several letters fit at position " + std::to_string(i));
    }
    out.push_back(hits.front().first);
    prefix = prefix * Word::generator(hits.front().first, rank);
    rem = std::move(hits.front().second);
  }
  if (rem != GroupRingElem::scalar(rank, 1)) {
    throw Error(ErrorKind::NoCandidate, "code has trailing factors after the last block");
  }
  return out;
}

std::vector<GroupRingElem> fq_payloads(const GroupRingElem& f) {
  if (f.is_zero()) throw Error(ErrorKind::ZeroInput, "cannot pack zero");
  if (f.coefficient(Word(f.rank())) != 0) {
    throw Error(ErrorKind::IdentityInSupport, "identity word in the support");
  }
  std::vector<GroupRingElem> h;
  for (const auto& [M, alpha] : f.terms()) {
    GroupRingElem step = alpha * one_minus(M);
    h.push_back(h.empty() ? step : h.back() + step);
  }
  return h;
}

std::vector<GroupRingElem> fq_factors(const GroupRingElem& f) {
  const auto h = fq_payloads(f);
  require_two_generators(f.rank());
  std::size_t longest = 0;
  for (const auto& [M, alpha] : f.terms()) longest = std::max(longest, M.length());
  const MarkerFamily fam = markers(static_cast<int>(2 * longest), f.rank());
  std::vector<GroupRingElem> factors;
  for (std::size_t i = 0; i < h.size(); ++i) {
    factors.push_back(a_block(fam, static_cast<int>(i + 1)));
    factors.push_back(h[i]);
  }
  factors.push_back(a_block(fam, static_cast<int>(h.size() + 1)));
  return factors;
}

ElementCode pack_fq(const GroupRingElem& f, std::size_t max_terms) {
  const auto factors = fq_factors(f);
  std::size_t longest = 0;
  for (const auto& [M, alpha] : f.terms()) longest = std::max(longest, M.length());
  return {expand_product(factors, max_terms), static_cast<int>(f.size()),
          static_cast<int>(2 * longest), 0};
}

ElementCode pack_element(const GroupRingElem& f, std::size_t max_terms) {
  const Word one(f.rank());
  const Rational c = f.coefficient(one);
  ElementCode code = pack_fq(f - GroupRingElem::scalar(f.rank(), c), max_terms);
  code.constant = c;
  return code;
}

bool check_fq(const GroupRingElem& w, const GroupRingElem& f) {
  if (w.rank() != f.rank() || w.is_zero()) return false;
  std::vector<GroupRingElem> factors;
  try {
    factors = fq_factors(f);
    if (expand_product(factors, kDefaultExpansionLimit) != w) return false;
  } catch (const Error&) {
    return false;
  }
  const std::size_t s = f.size();
  std::size_t longest = 0;
  for (const auto& [M, alpha] : f.terms()) longest = std::max(longest, M.length());
  const MarkerFamily fam = markers(static_cast<int>(2 * longest), f.rank());
  auto A = [&](int i) { return block_factors(fam.a, fam.b, fam.c, i); };
  // i) the head A_{m,1} h_1 A_{m,2} [h_2 A_{m,3}] divides on the left.
  std::vector<GroupRingElem> head = concat(concat(A(1), {factors[1]}), A(2));
  if (s >= 2) head = concat(concat(head, {factors[3]}), A(3));
  if (!divides_all(w, head, Side::Left)) return false;
  // iv) A_{m,s+1} divides on the right.
  if (!divides_all(w, A(static_cast<int>(s) + 1), Side::Right)) return false;
  // iii) consecutive payloads differ by alpha (1 - M), M a non-identity word.
  GroupRingElem prev(f.rank());
  std::size_t idx = 0;
  for (std::size_t i = 1; i < factors.size(); i += 2, ++idx) {
    const GroupRingElem& h = factors[i];
    const auto M = payload_word(h - prev);
    if (!M || *M != f.terms()[idx].first) return false;
    prev = h;
  }
  Rational total = 0;
  for (const auto& [M, alpha] : f.terms()) total += alpha;
  return prev == GroupRingElem::scalar(f.rank(), total) - f;
}

namespace {

// Exact n-th root of a rational, if it has one.
std::vector<Rational> rational_roots(const Rational& q, int n) {
  if (q == 0 || n < 1) return {};
  if (n % 2 == 0 && q < 0) return {};
  Integer num = abs(q.get_num());
  Integer den = q.get_den();
  Integer rn;
  Integer rd;
  if (mpz_root(rn.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(n)) == 0) return {};
  if (mpz_root(rd.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(n)) == 0) return {};
  Rational r(rn, rd);
  r.canonicalize();
  if (n % 2 == 0) return {r, -r};
  return {q < 0 ? Rational(-r) : r};
}

}  // namespace

FqDecoder::FqDecoder(int rank, int max_len, int max_terms) : rank_(rank) {
  require_two_generators(rank);
  if (max_len < 1 || max_terms < 1) throw Error(ErrorKind::Precondition, "bounds must be positive");
  std::vector<Word> words = ball(rank, max_len);
  words.erase(words.begin());  // the identity

  std::map<int, MarkerFamily> fams;
  std::map<std::pair<int, int>, LaurentPoly> block_images;
  auto block_image = [&](int m, int i) -> const LaurentPoly& {
    auto key = std::make_pair(m, i);
    auto it = block_images.find(key);
    if (it == block_images.end()) {
      auto f = fams.find(m);
      if (f == fams.end()) f = fams.emplace(m, markers(m, rank)).first;
      it = block_images.emplace(key, specialize_abelian(a_block(f->second, i))).first;
    }
    return it->second;
  };

  std::vector<std::size_t> pick;
  auto emit = [&]() {
    Support sup;
    std::size_t longest = 0;
    for (auto k : pick) {
      sup.words.push_back(words[k]);
      longest = std::max(longest, words[k].length());
    }
    sup.m = static_cast<int>(2 * longest);
    const int s = static_cast<int>(pick.size());
    std::vector<LaurentPoly> payload_images;
    for (const auto& M : sup.words) payload_images.push_back(specialize_abelian(one_minus(M)));
    // Payload i contributes a_j (1 - M_j) for some j <= i.
    std::map<AlphaMonomial, LaurentPoly> acc;
    std::vector<int> choice(static_cast<std::size_t>(s), 0);
    while (true) {
      LaurentPoly img = block_image(sup.m, 1);
      for (int i = 0; i < s; ++i) {
        img = img * payload_images[static_cast<std::size_t>(choice[static_cast<std::size_t>(i)])] *
              block_image(sup.m, i + 2);
      }
      AlphaMonomial mu(choice.begin(), choice.end());
      std::sort(mu.begin(), mu.end());
      auto [it, inserted] = acc.try_emplace(mu, img);
      if (!inserted) it->second = it->second + img;
      int i = s - 1;
      while (i >= 0 && choice[static_cast<std::size_t>(i)] == i) {
        choice[static_cast<std::size_t>(i)] = 0;
        --i;
      }
      if (i < 0) break;
      ++choice[static_cast<std::size_t>(i)];
    }
    for (auto& [mu, img] : acc) {
      sup.monomials.push_back(mu);
      sup.images.push_back(std::move(img));
    }
    supports_.push_back(std::move(sup));
  };

  // Supports as increasing index sequences, i.e. shortlex-sorted word sets.
  for (int s = 1; s <= max_terms && s <= static_cast<int>(words.size()); ++s) {
    pick.assign(static_cast<std::size_t>(s), 0);
    for (int i = 0; i < s; ++i) pick[static_cast<std::size_t>(i)] = static_cast<std::size_t>(i);
    while (true) {
      emit();
      int i = s - 1;
      while (i >= 0 && pick[static_cast<std::size_t>(i)] == words.size() - static_cast<std::size_t>(s - i)) --i;
      if (i < 0) break;
      ++pick[static_cast<std::size_t>(i)];
      for (int k = i + 1; k < s; ++k) {
        pick[static_cast<std::size_t>(k)] = pick[static_cast<std::size_t>(k - 1)] + 1;
      }
    }
  }
}

const std::vector<GroupRingElem>& FqDecoder::word_system(std::size_t index) const {
  auto it = word_systems_.find(index);
  if (it != word_systems_.end()) return it->second;
  const Support& sup = supports_[index];
  const std::size_t n = sup.monomials.size();
  std::vector<GroupRingElem> coeff(n, GroupRingElem(rank_));
  const int s = static_cast<int>(sup.words.size());
  const MarkerFamily fam = markers(sup.m, rank_);
  std::vector<int> choice(static_cast<std::size_t>(s), 0);
  while (true) {
    GroupRingElem prod = a_block(fam, 1);
    for (int i = 0; i < s; ++i) {
      prod = prod * one_minus(sup.words[static_cast<std::size_t>(choice[static_cast<std::size_t>(i)])]) *
             a_block(fam, i + 2);
    }
    AlphaMonomial mu(choice.begin(), choice.end());
    std::sort(mu.begin(), mu.end());
    const auto k = static_cast<std::size_t>(
        std::find(sup.monomials.begin(), sup.monomials.end(), mu) - sup.monomials.begin());
    coeff[k] = coeff[k] + prod;
    int i = s - 1;
    while (i >= 0 && choice[static_cast<std::size_t>(i)] == i) {
      choice[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
    ++choice[static_cast<std::size_t>(i)];
  }
  return word_systems_.emplace(index, std::move(coeff)).first->second;
}

std::optional<GroupRingElem> FqDecoder::decode(const GroupRingElem& w) const {
  if (w.rank() != rank_ || w.is_zero()) return std::nullopt;
  const LaurentPoly aw = specialize_abelian(w);
  std::vector<GroupRingElem> found;

  for (std::size_t si = 0; si < supports_.size(); ++si) {
    const Support& sup = supports_[si];
    const std::size_t n = sup.monomials.size();
    std::map<Exponents, std::size_t> row_of;
    for (std::size_t k = 0; k < n; ++k) {
      for (const auto& [e, c] : sup.images[k].terms()) row_of.try_emplace(e, row_of.size());
    }
    bool covered = true;
    for (const auto& [e, c] : aw.terms()) {
      if (!row_of.count(e)) {
        covered = false;
        break;
      }
    }
    if (!covered) continue;

    std::vector<SparseRow> rows(row_of.size());
    std::vector<Rational> rhs(row_of.size(), Rational(0));
    for (std::size_t k = 0; k < n; ++k) {
      for (const auto& [e, c] : sup.images[k].terms()) rows[row_of[e]].emplace_back(k, c);
    }
    for (const auto& [e, c] : aw.terms()) rhs[row_of[e]] = c;
    auto sol = solve_linear(rows, rhs, n);
    if (!sol) continue;
    std::vector<Rational> beta = sol->values;

    if (sol->nullity > 0) {
      // The abelian image does not pin the coefficients; solve on the words.
      const std::vector<GroupRingElem>& coeff = word_system(si);
      std::map<Word, std::size_t, ShortLex> wrow;
      for (std::size_t k = 0; k < n; ++k) {
        for (const auto& [u, c] : coeff[k].terms()) wrow.try_emplace(u, wrow.size());
      }
      bool inside = true;
      for (const auto& [u, c] : w.terms()) inside = inside && wrow.count(u);
      if (!inside) continue;
      std::vector<SparseRow> wrows(wrow.size());
      std::vector<Rational> wrhs(wrow.size(), Rational(0));
      for (std::size_t k = 0; k < n; ++k) {
        for (const auto& [u, c] : coeff[k].terms()) wrows[wrow[u]].emplace_back(k, c);
      }
      for (const auto& [u, c] : w.terms()) wrhs[wrow[u]] = c;
      auto wsol = solve_linear(wrows, wrhs, n);
      if (!wsol) continue;
      beta = wsol->values;
    }

    // beta_mu = alpha^mu. a_1^s and a_1^{s-1} a_j are always present.
    const int s = static_cast<int>(sup.words.size());
    auto beta_of = [&](AlphaMonomial mu) {
      std::sort(mu.begin(), mu.end());
      const auto k = static_cast<std::size_t>(
          std::find(sup.monomials.begin(), sup.monomials.end(), mu) - sup.monomials.begin());
      return beta[k];
    };
    for (const Rational& a1 : rational_roots(beta_of(AlphaMonomial(static_cast<std::size_t>(s), 0)), s)) {
      std::vector<GroupRingElem::Term> terms{{sup.words[0], a1}};
      Rational a1_pow = 1;
      for (int i = 1; i < s; ++i) a1_pow *= a1;
      bool nonzero = true;
      for (int j = 1; j < s; ++j) {
        AlphaMonomial mu(static_cast<std::size_t>(s - 1), 0);
        mu.push_back(j);
        const Rational aj = beta_of(mu) / a1_pow;
        if (aj == 0) nonzero = false;
        terms.emplace_back(sup.words[static_cast<std::size_t>(j)], aj);
      }
      if (!nonzero) continue;
      GroupRingElem f = GroupRingElem::from_terms(rank_, terms);
      if (std::find(found.begin(), found.end(), f) != found.end()) continue;
      try {
        if (pack_fq(f).w == w) found.push_back(std::move(f));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::ExpansionTooLarge) throw;
      }
    }
  }
  if (found.empty()) return std::nullopt;
  if (found.size() > 1) {
    std::string detail = "preimages";
    for (const auto& f : found) detail += " [" + to_string(f) + "]";
    throw Error(ErrorKind::AmbiguousPreimage, detail);
  }
  return found.front();
}

std::optional<GroupRingElem> decode_fq_small(const GroupRingElem& w, int max_len, int max_terms) {
  return FqDecoder(w.rank(), max_len, max_terms).decode(w);
}

ChainBase chain_base(int rank) {
  require_two_generators(rank);
  return {x1_x2(1, 2, rank), x1_x2(2, 3, rank), x1_x2(3, 4, rank)};
}

std::vector<GroupRingElem> am_chain_factors(int m, int rank) {
  if (m < 2) throw Error(ErrorKind::Precondition, "chain length must be at least 2");
  const ChainBase base = chain_base(rank);
  std::vector<GroupRingElem> factors{block(base.a, base.b, base.c, 1)};
  for (int i = 2; i <= m; ++i) {
    factors.push_back(one_minus(markers(i, rank).a));
    factors.push_back(block(base.a, base.b, base.c, i));
  }
  return factors;
}

GroupRingElem am_chain(int m, int rank, std::size_t max_terms) {
  return expand_product(am_chain_factors(m, rank), max_terms);
}

bool am_chain_verify(const GroupRingElem& w, int m) {
  if (m < 2) throw Error(ErrorKind::Precondition, "chain length must be at least 2");
  const int rank = w.rank();
  if (rank < 2 || w.is_zero()) return false;
  const ChainBase base = chain_base(rank);
  auto C = [&](int i) { return block_factors(base.a, base.b, base.c, i); };

  // a) head and b) tail.
  if (!divides_all(w, concat(concat(C(1), {one_minus(markers(2, rank).a)}), C(2)), Side::Left)) return false;
  if (!divides_all(w, concat(concat(C(m - 1), {one_minus(markers(m, rank).a)}), C(m)), Side::Right)) {
    return false;
  }

  // c) recursion from u_2, d) the walk ends exactly at C_m.
  GroupRingElem rem(rank);
  if (!divides_all(w, C(1), Side::Left, &rem)) return false;
  const Word x1 = Word::generator(1, rank);
  const Word x2 = Word::generator(2, rank);
  Word u = markers(2, rank).a;
  for (int i = 2; i <= m; ++i) {
    const GroupRingElem payload = one_minus(u);
    const Rational beta = payload.coefficient(Word(rank));
    const auto unit = is_trivial_unit(GroupRingElem::scalar(rank, beta) - payload);
    if (beta == 0 || !unit || unit->g.is_identity()) return false;
    if (!divides_all(rem, concat({payload}, C(i)), Side::Left, &rem)) return false;
    if (i < m) u = x1 * u * x2;
  }
  return rem == GroupRingElem::scalar(rank, 1) && u == markers(m, rank).a;
}

}  // namespace freering
