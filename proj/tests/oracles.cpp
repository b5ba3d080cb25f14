#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

namespace oracle {

using freering::GroupRingElem;
using freering::Rational;
using freering::Side;
using freering::Word;

Letters reduce(const Letters& w) {
  Letters out;
  for (int l : w) {
    if (!out.empty() && out.back() == -l) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

Letters multiply(const Letters& u, const Letters& v) {
  Letters w = u;
  w.insert(w.end(), v.begin(), v.end());
  return reduce(w);
}

Letters inverse(const Letters& u) {
  Letters out;
  for (auto it = u.rbegin(); it != u.rend(); ++it) out.push_back(-*it);
  return out;
}

std::vector<Letters> all_reduced(int rank, int radius) {
  std::vector<int> alphabet;
  for (int i = 1; i <= rank; ++i) {
    alphabet.push_back(i);
    alphabet.push_back(-i);
  }
  std::vector<Letters> out;
  std::function<void(Letters&)> walk = [&](Letters& cur) {
    if (reduce(cur) == cur) out.push_back(cur);
    if (static_cast<int>(cur.size()) == radius) return;
    for (int l : alphabet) {
      cur.push_back(l);
      walk(cur);
      cur.pop_back();
    }
  };
  Letters start;
  walk(start);
  return out;
}

namespace {

Series series_mul(const Series& a, const Series& b, int degree) {
  Series out;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) {
      if (static_cast<int>(ma.size() + mb.size()) > degree) continue;
      std::vector<int> m = ma;
      m.insert(m.end(), mb.begin(), mb.end());
      out[m] += ca * cb;
    }
  }
  std::erase_if(out, [](const auto& t) { return t.second == 0; });
  return out;
}

Series letter_series(int l, int degree) {
  const int i = l > 0 ? l : -l;
  Series s;
  if (l > 0) {
    s[{}] = 1;
    s[{i}] = 1;
    return s;
  }
  for (int k = 0; k <= degree; ++k) s[std::vector<int>(static_cast<std::size_t>(k), i)] = k % 2 == 0 ? 1 : -1;
  return s;
}

}  // namespace

Series magnus(const Letters& u, int degree) {
  Series out{{{}, Rational(1)}};
  for (int l : u) out = series_mul(out, letter_series(l, degree), degree);
  return out;
}

int series_sign(const Series& f, const Series& g) {
  Series diff = g;
  for (const auto& [m, c] : f) diff[m] -= c;
  std::erase_if(diff, [](const auto& t) { return t.second == 0; });
  if (diff.empty()) return 0;
  // std::map orders by plain lexicographic comparison, so pick the lowest
  // degree first and then the lex-first monomial within it.
  const std::vector<int>* best = nullptr;
  for (const auto& [m, c] : diff) {
    if (!best || m.size() < best->size()) best = &m;
  }
  return diff.at(*best) > 0 ? -1 : 1;
}

int bergman(const Letters& u, const Letters& v) {
  // Images of distinct elements differ by degree |u| + |v|; stop at the first
  // degree that separates them.
  const int bound = static_cast<int>(u.size() + v.size()) + 1;
  for (int degree = 1; degree <= bound; ++degree) {
    const int s = series_sign(magnus(u, degree), magnus(v, degree));
    if (s != 0) return s;
  }
  return 0;
}

namespace {

constexpr std::uint64_t kP = (std::uint64_t{1} << 61) - 1;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  const unsigned __int128 x = static_cast<unsigned __int128>(a) * b;
  std::uint64_t r = static_cast<std::uint64_t>(x & kP) + static_cast<std::uint64_t>(x >> 61);
  r = (r & kP) + (r >> 61);
  return r >= kP ? r - kP : r;
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a);
    a = mulmod(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t invmod(std::uint64_t a) { return powmod(a, kP - 2); }

std::uint64_t integer_mod(const freering::Integer& z) {
  freering::Integer r;
  mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), kP);
  return r.get_ui();
}

}  // namespace

Fingerprint::Mat Fingerprint::mul(const Mat& a, const Mat& b) {
  Mat c{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      std::uint64_t s = 0;
      for (int k = 0; k < 3; ++k) s = (s + mulmod(a[i * 3 + k], b[k * 3 + j])) % kP;
      c[i * 3 + j] = s;
    }
  }
  return c;
}

Fingerprint::Mat Fingerprint::add(const Mat& a, const Mat& b) {
  Mat c{};
  for (int i = 0; i < 9; ++i) c[i] = (a[i] + b[i]) % kP;
  return c;
}

namespace {

std::uint64_t rational_mod(const Rational& q) {
  const std::uint64_t num = integer_mod(q.get_num());
  if (q.get_den() == 1) return num;
  return mulmod(num, invmod(integer_mod(q.get_den())));
}

}  // namespace

Fingerprint::Mat Fingerprint::scalar(const Rational& q) const {
  const std::uint64_t v = rational_mod(q);
  return Mat{v, 0, 0, 0, v, 0, 0, 0, v};
}

Fingerprint::Fingerprint(int rank, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> dist(0, kP - 1);
  for (int g = 0; g < rank; ++g) {
    while (true) {
      Mat m;
      for (auto& x : m) x = dist(rng);
      // Adjugate / determinant.
      auto at = [&](int i, int j) { return m[i * 3 + j]; };
      auto minor = [&](int i0, int i1, int j0, int j1) {
        return (mulmod(at(i0, j0), at(i1, j1)) + kP - mulmod(at(i0, j1), at(i1, j0))) % kP;
      };
      Mat cof{};
      const int rows[3][2] = {{1, 2}, {0, 2}, {0, 1}};
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          std::uint64_t c = minor(rows[i][0], rows[i][1], rows[j][0], rows[j][1]);
          if ((i + j) % 2 == 1) c = (kP - c) % kP;
          cof[i * 3 + j] = c;
        }
      }
      std::uint64_t det = 0;
      for (int j = 0; j < 3; ++j) det = (det + mulmod(at(0, j), cof[j])) % kP;
      if (det == 0) continue;
      const std::uint64_t dinv = invmod(det);
      Mat inv{};
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) inv[i * 3 + j] = mulmod(cof[j * 3 + i], dinv);
      }
      gens_.push_back(m);
      gens_.push_back(inv);
      break;
    }
  }
}

Fingerprint::Mat Fingerprint::word(const Word& w) const {
  Mat out{1, 0, 0, 0, 1, 0, 0, 0, 1};
  for (int l : w.letters()) {
    const std::size_t idx = static_cast<std::size_t>(2 * ((l > 0 ? l : -l) - 1) + (l > 0 ? 0 : 1));
    out = mul(out, gens_.at(idx));
  }
  return out;
}

Fingerprint::Mat Fingerprint::element(const GroupRingElem& f) const {
  Mat out{};
  for (const auto& [w, c] : f.terms()) {
    const std::uint64_t v = rational_mod(c);
    const Mat m = word(w);
    for (int i = 0; i < 9; ++i) out[i] = (out[i] + mulmod(v, m[i])) % kP;
  }
  return out;
}

Fingerprint::Mat Fingerprint::product(const std::vector<GroupRingElem>& factors) const {
  Mat out{1, 0, 0, 0, 1, 0, 0, 0, 1};
  for (const auto& f : factors) out = mul(out, element(f));
  return out;
}

std::optional<GroupRingElem> brute_divide(const GroupRingElem& w, const GroupRingElem& d, Side side,
                                          int radius) {
  const int rank = w.rank();
  const auto unknowns = all_reduced(rank, radius);
  std::map<Letters, std::size_t> row_of;
  std::vector<std::map<std::size_t, Rational>> rows;
  auto row = [&](const Letters& z) -> std::map<std::size_t, Rational>& {
    auto [it, fresh] = row_of.try_emplace(z, rows.size());
    if (fresh) rows.emplace_back();
    return rows[it->second];
  };
  for (std::size_t j = 0; j < unknowns.size(); ++j) {
    for (const auto& [x, c] : d.terms()) {
      const Letters z = side == Side::Left ? multiply(x.letters(), unknowns[j]) : multiply(unknowns[j], x.letters());
      row(z)[j] += c;
    }
  }
  std::vector<Rational> rhs(rows.size());
  for (const auto& [z, c] : w.terms()) {
    auto it = row_of.find(z.letters());
    if (it == row_of.end()) return std::nullopt;
    rhs[it->second] = c;
  }

  // Row echelon form; pivots keyed by their leading column.
  struct Pivot {
    std::map<std::size_t, Rational> row;
    Rational rhs;
  };
  std::map<std::size_t, Pivot> pivots;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    auto cur = rows[r];
    Rational b = rhs[r];
    std::erase_if(cur, [](const auto& t) { return t.second == 0; });
    while (!cur.empty()) {
      auto lead = cur.begin();
      auto p = pivots.find(lead->first);
      if (p == pivots.end()) break;
      const Rational f = lead->second / p->second.row.begin()->second;
      for (const auto& [col, v] : p->second.row) {
        Rational& slot = cur[col];
        slot -= f * v;
        if (slot == 0) cur.erase(col);
      }
      b -= f * p->second.rhs;
    }
    if (cur.empty()) {
      if (b != 0) return std::nullopt;
      continue;
    }
    const std::size_t col = cur.begin()->first;
    pivots.emplace(col, Pivot{std::move(cur), b});
  }

  // Back substitution with free columns at zero.
  std::vector<Rational> x(unknowns.size());
  for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
    Rational s = it->second.rhs;
    auto entry = it->second.row.begin();
    const Rational lead = entry->second;
    for (++entry; entry != it->second.row.end(); ++entry) s -= entry->second * x[entry->first];
    x[it->first] = s / lead;
  }
  std::vector<GroupRingElem::Term> terms;
  for (std::size_t j = 0; j < unknowns.size(); ++j) {
    if (x[j] != 0) terms.emplace_back(Word::reduce(unknowns[j], rank), x[j]);
  }
  return GroupRingElem::from_terms(rank, terms);
}

Word random_word(std::mt19937_64& rng, int rank, int length) {
  std::uniform_int_distribution<int> gen(1, rank);
  std::uniform_int_distribution<int> sign(0, 1);
  Letters out;
  while (static_cast<int>(out.size()) < length) {
    int l = gen(rng) * (sign(rng) ? 1 : -1);
    if (!out.empty() && out.back() == -l) continue;
    out.push_back(l);
  }
  return Word::reduce(out, rank);
}

}  // namespace oracle
