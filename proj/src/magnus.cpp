#include "freering/magnus.hpp"

#include <cstdlib>
#include <sstream>

#include "freering/error.hpp"

namespace freering {

PowerSeries::PowerSeries(int rank, int degree_bound) : rank_(rank), degree_bound_(degree_bound) {
  if (rank < 1) throw Error(ErrorKind::Precondition, "rank must be positive");
  if (degree_bound < 0) throw Error(ErrorKind::Precondition, "degree bound must be nonnegative");
}

PowerSeries PowerSeries::one(int rank, int degree_bound) {
  PowerSeries s(rank, degree_bound);
  s.add_term({}, 1);
  return s;
}

PowerSeries PowerSeries::from_terms(int rank, int degree_bound,
                                    const std::vector<std::pair<Monomial, Rational>>& terms) {
  PowerSeries s(rank, degree_bound);
  for (const auto& [m, c] : terms) s.add_term(m, c);
  return s;
}

Rational PowerSeries::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void PowerSeries::add_term(const Monomial& m, const Rational& c) {
  if (static_cast<int>(m.size()) > degree_bound_ || c == 0) return;
  for (int i : m) {
    if (i < 1 || i > rank_) throw Error(ErrorKind::LetterOutOfRange, "monomial index out of range");
  }
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

PowerSeries PowerSeries::homogeneous(int d) const {
  PowerSeries out(rank_, degree_bound_);
  for (const auto& [m, c] : terms_) {
    if (static_cast<int>(m.size()) == d) out.terms_.emplace(m, c);
  }
  return out;
}

static void check_compatible(const PowerSeries& a, const PowerSeries& b) {
  check_same_rank(a.rank(), b.rank());
  if (a.degree_bound() != b.degree_bound()) {
    throw Error(ErrorKind::DegreeMismatch, "power series have different degree bounds");
  }
}

PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
  check_compatible(a, b);
  PowerSeries out = a;
  for (const auto& [m, c] : b.terms_) out.add_term(m, c);
  return out;
}

PowerSeries operator-(const PowerSeries& a) {
  PowerSeries out = a;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) { return a + (-b); }

bool operator==(const PowerSeries& a, const PowerSeries& b) {
  return a.rank_ == b.rank_ && a.degree_bound_ == b.degree_bound_ && a.terms_ == b.terms_;
}

PowerSeries ps_mul(const PowerSeries& f, const PowerSeries& g) {
  check_compatible(f, g);
  PowerSeries out(f.rank(), f.degree_bound());
  const auto bound = static_cast<std::size_t>(f.degree_bound());
  for (const auto& [a, ca] : f.terms()) {
    for (const auto& [b, cb] : g.terms()) {
      if (a.size() + b.size() > bound) {
        // g's terms are ordered by degree, nothing further fits.
        break;
      }
      Monomial m = a;
      m.insert(m.end(), b.begin(), b.end());
      out.add_term(m, ca * cb);
    }
  }
  return out;
}

PowerSeries ps_inv(const PowerSeries& f) {
  const Rational c0 = f.constant_term();
  if (c0 == 0) throw Error(ErrorKind::NotInvertible, "series with zero constant term is not a unit");
  const Rational inv0 = 1 / c0;
  // f = c0 (1 + r); f^{-1} = c0^{-1} sum_k (-r)^k, and r^k vanishes past the bound.
  PowerSeries minus_r(f.rank(), f.degree_bound());
  for (const auto& [m, c] : f.terms()) {
    if (!m.empty()) minus_r.add_term(m, -c * inv0);
  }
  PowerSeries sum = PowerSeries::one(f.rank(), f.degree_bound());
  PowerSeries power = sum;
  for (int k = 1; k <= f.degree_bound(); ++k) {
    power = ps_mul(power, minus_r);
    if (power.is_zero()) break;
    sum = sum + power;
  }
  PowerSeries out(f.rank(), f.degree_bound());
  for (const auto& [m, c] : sum.terms()) out.add_term(m, c * inv0);
  return out;
}

PowerSeries embed_word(const Word& u, int degree_bound) {
  const int rank = u.rank();
  PowerSeries acc = PowerSeries::one(rank, degree_bound);
  for (Letter l : u.letters()) {
    const int i = std::abs(l);
    PowerSeries factor(rank, degree_bound);
    if (l > 0) {
      factor.add_term({}, 1);
      factor.add_term({i}, 1);
    } else {
      Monomial m;
      for (int k = 0; k <= degree_bound; ++k) {
        factor.add_term(m, k % 2 == 0 ? 1 : -1);
        m.push_back(i);
      }
    }
    acc = ps_mul(acc, factor);
  }
  return acc;
}

namespace {

struct Overflow {};

inline void add_to(std::int64_t& a, std::int64_t b) {
  if (__builtin_add_overflow(a, b, &a)) throw Overflow{};
}
inline void sub_from(std::int64_t& a, std::int64_t b) {
  if (__builtin_sub_overflow(a, b, &a)) throw Overflow{};
}
inline void add_to(Integer& a, const Integer& b) { a += b; }
inline void sub_from(Integer& a, const Integer& b) { a -= b; }

inline bool is_zero(std::int64_t a) { return a == 0; }
inline bool is_zero(const Integer& a) { return a == 0; }
inline int sign_of(std::int64_t a) { return a > 0 ? 1 : (a < 0 ? -1 : 0); }
inline int sign_of(const Integer& a) { return sgn(a); }

/// Dense Magnus coefficients of a word for degrees 0..D. Degree d occupies
/// rank^d consecutive slots; within a degree the slot index is the monomial
/// read as a base-rank number with y1 as digit 0, which is left-lex order.
template <typename T>
class DenseMagnus {
 public:
  DenseMagnus(int rank, int degree) : rank_(rank), degree_(degree) {
    offsets_.push_back(0);
    std::size_t width = 1;
    for (int d = 0; d <= degree; ++d) {
      widths_.push_back(width);
      offsets_.push_back(offsets_.back() + width);
      width *= static_cast<std::size_t>(rank);
    }
    coeff_.assign(offsets_.back(), T(0));
    coeff_[0] = T(1);
  }

  void apply(Letter l) {
    const std::size_t digit = static_cast<std::size_t>(std::abs(l) - 1);
    const std::size_t n = static_cast<std::size_t>(rank_);
    if (l > 0) {
      // S * (1 + y_i): S'[m y_i] += S[m]; descend so S[m] is still old.
      for (int d = degree_; d >= 1; --d) {
        const std::size_t base = offsets_[d];
        const std::size_t parent = offsets_[d - 1];
        for (std::size_t p = 0; p < widths_[d - 1]; ++p) {
          add_to(coeff_[base + p * n + digit], coeff_[parent + p]);
        }
      }
    } else {
      // S * (1 + y_i)^{-1}: S'[m y_i] = S[m y_i] - S'[m]; ascend so S'[m] is new.
      for (int d = 1; d <= degree_; ++d) {
        const std::size_t base = offsets_[d];
        const std::size_t parent = offsets_[d - 1];
        for (std::size_t p = 0; p < widths_[d - 1]; ++p) {
          sub_from(coeff_[base + p * n + digit], coeff_[parent + p]);
        }
      }
    }
  }

  /// First nonzero (degree, sign) at degree >= 1, if any.
  std::optional<std::pair<int, int>> lowest() const {
    for (int d = 1; d <= degree_; ++d) {
      for (std::size_t k = offsets_[d]; k < offsets_[d + 1]; ++k) {
        if (!is_zero(coeff_[k])) return std::make_pair(d, sign_of(coeff_[k]));
      }
    }
    return std::nullopt;
  }

  const std::vector<T>& coefficients() const { return coeff_; }

 private:
  int rank_;
  int degree_;
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> widths_;
  std::vector<T> coeff_;
};

template <typename T>
std::optional<std::pair<int, int>> lowest_component(const Word& w, int degree) {
  DenseMagnus<T> dense(w.rank(), degree);
  for (Letter l : w.letters()) dense.apply(l);
  return dense.lowest();
}

}  // namespace

OrderVerdict bergman_cmp(const Word& u, const Word& v) {
  check_same_rank(u.rank(), v.rank());
  if (u == v) return {Order::Equal, std::nullopt};
  // image(v) - image(u) = image(u) * (image(u^{-1} v) - 1) and image(u) has
  // constant term 1, so both differences share their lowest component.
  const Word w = u.inverse() * v;
  const int cap = static_cast<int>(u.length() + v.length());
  int degree = 1;
  while (true) {
    std::optional<std::pair<int, int>> low;
    try {
      low = lowest_component<std::int64_t>(w, degree);
    } catch (const Overflow&) {
      low = lowest_component<Integer>(w, degree);
    }
    if (low) {
      return {low->second > 0 ? Order::Less : Order::Greater, low->first};
    }
    if (degree >= cap) break;
    degree = std::min(cap, degree < 8 ? degree * 2 : degree + 1);
    double slots = 1;
    for (int d = 0; d < degree; ++d) slots *= u.rank();
    if (slots > double(1 << 26)) {
      throw Error(ErrorKind::Internal, "Bergman comparison needs Magnus degree beyond " +
                                           std::to_string(degree - 1));
    }
  }
  throw Error(ErrorKind::Internal, "Magnus images agree up to degree |u|+|v| for distinct words");
}

OrderVerdict series_cmp(const PowerSeries& f, const PowerSeries& g) {
  check_compatible(f, g);
  const PowerSeries diff = g - f;
  if (diff.is_zero()) return {Order::Equal, std::nullopt};
  // Terms are ordered by degree then left-lex, so the first entry decides.
  const auto& [m, c] = *diff.terms().begin();
  return {c > 0 ? Order::Less : Order::Greater, static_cast<int>(m.size())};
}

int magnus_key_degree(int rank) {
  std::size_t total = 0;
  std::size_t width = 1;
  int degree = 0;
  while (true) {
    width *= static_cast<std::size_t>(rank);
    if (total + width > 64 && degree >= 1) break;
    total += width;
    ++degree;
    if (degree >= 8) break;
  }
  return degree;
}

MagnusKey::MagnusKey(Word w) : word_(std::move(w)) {
  try {
    DenseMagnus<std::int64_t> dense(word_.rank(), magnus_key_degree(word_.rank()));
    for (Letter l : word_.letters()) dense.apply(l);
    low_.assign(dense.coefficients().begin() + 1, dense.coefficients().end());
    cached_ = true;
  } catch (const Overflow&) {
    cached_ = false;
  }
}

MagnusKey operator*(const MagnusKey& a, const MagnusKey& b) {
  if (!a.cached_ || !b.cached_ || a.word_.rank() != b.word_.rank()) {
    return MagnusKey(a.word_ * b.word_);
  }
  MagnusKey out;
  out.word_ = a.word_ * b.word_;
  const int rank = a.word_.rank();
  const int top = magnus_key_degree(rank);
  // offset[d] is where degree d starts in low_ (degree 1 at 0).
  std::size_t offset[10] = {0, 0};
  std::size_t width[10] = {1};
  for (int d = 1; d <= top; ++d) {
    width[d] = width[d - 1] * static_cast<std::size_t>(rank);
    offset[d + 1] = offset[d] + width[d];
  }
  out.low_ = a.low_;
  try {
    for (std::size_t k = 0; k < out.low_.size(); ++k) add_to(out.low_[k], b.low_[k]);
    // Monomial m1 m2 sits at index(m1) * rank^{|m2|} + index(m2) in its degree.
    for (int d1 = 1; d1 < top; ++d1) {
      for (int d2 = 1; d1 + d2 <= top; ++d2) {
        const std::size_t base = offset[d1 + d2];
        for (std::size_t i = 0; i < width[d1]; ++i) {
          const std::int64_t x = a.low_[offset[d1] + i];
          if (x == 0) continue;
          const std::size_t row = base + i * width[d2];
          for (std::size_t j = 0; j < width[d2]; ++j) {
            const std::int64_t y = b.low_[offset[d2] + j];
            if (y == 0) continue;
            std::int64_t p = 0;
            if (__builtin_mul_overflow(x, y, &p)) throw Overflow{};
            add_to(out.low_[row + j], p);
          }
        }
      }
    }
    out.cached_ = true;
  } catch (const Overflow&) {
    return MagnusKey(out.word_);
  }
  return out;
}

std::strong_ordering operator<=>(const MagnusKey& a, const MagnusKey& b) {
  if (a.cached_ && b.cached_ && a.word_.rank() == b.word_.rank()) {
    // Lexicographic order of the concatenated components is the Bergman
    // order whenever the words already differ in the cached degrees.
    auto c = a.low_ <=> b.low_;
    if (c != 0) return c;
  }
  if (a.word_ == b.word_) return std::strong_ordering::equal;
  switch (bergman_cmp(a.word_, b.word_).order) {
    case Order::Less: return std::strong_ordering::less;
    case Order::Greater: return std::strong_ordering::greater;
    case Order::Equal: break;
  }
  return std::strong_ordering::equal;
}

std::string to_string(const PowerSeries& f) {
  if (f.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : f.terms()) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out << '-';
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    std::string mono;
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (k) mono += '*';
      mono += 'y' + std::to_string(m[k]);
    }
    if (m.empty()) {
      out << mag.get_str();
    } else if (mag == 1) {
      out << mono;
    } else {
      out << mag.get_str() << '*' << mono;
    }
  }
  return out.str();
}

}  // namespace freering
