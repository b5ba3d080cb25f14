#include "freering/word.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "freering/error.hpp"

namespace freering {

void check_same_rank(int a, int b) {
  if (a != b) {
    throw Error(ErrorKind::RankMismatch,
                "rank " + std::to_string(a) + " does not match rank " + std::to_string(b));
  }
}

Word::Word(int rank) : rank_(rank) {
  if (rank < 1) throw Error(ErrorKind::Precondition, "rank must be positive");
}

Word Word::reduce(std::span<const Letter> letters, int rank) {
  if (rank < 1) throw Error(ErrorKind::Precondition, "rank must be positive");
  std::vector<Letter> out;
  out.reserve(letters.size());
  for (Letter l : letters) {
    if (l == 0) throw Error(ErrorKind::ZeroLetter, "zero letter in word");
    if (std::abs(l) > rank) {
      throw Error(ErrorKind::LetterOutOfRange,
                  "letter " + std::to_string(l) + " exceeds rank " + std::to_string(rank));
    }
    if (!out.empty() && out.back() == -l) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return Word(rank, std::move(out));
}

Word Word::generator(Letter letter, int rank) {
  const Letter one[] = {letter};
  return reduce(one, rank);
}

Word Word::inverse() const {
  std::vector<Letter> out(letters_.rbegin(), letters_.rend());
  for (auto& l : out) l = -l;
  return Word(rank_, std::move(out));
}

Word Word::pow(long exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  Word result(rank_);
  Word base = *this;
  // Square-and-multiply keeps intermediate reductions short for conjugates.
  while (exponent > 0) {
    if (exponent & 1) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

Word operator*(const Word& u, const Word& v) {
  check_same_rank(u.rank_, v.rank_);
  const auto& a = u.letters_;
  const auto& b = v.letters_;
  std::size_t cancel = 0;
  const std::size_t limit = std::min(a.size(), b.size());
  while (cancel < limit && a[a.size() - 1 - cancel] == -b[cancel]) ++cancel;
  std::vector<Letter> out;
  out.reserve(a.size() + b.size() - 2 * cancel);
  out.insert(out.end(), a.begin(), a.end() - static_cast<std::ptrdiff_t>(cancel));
  out.insert(out.end(), b.begin() + static_cast<std::ptrdiff_t>(cancel), b.end());
  return Word(u.rank_, std::move(out));
}

CyclicReduction cyclic_reduce(const Word& u) {
  const auto& l = u.letters();
  std::size_t i = 0;
  std::size_t j = l.size();
  while (j - i >= 2 && l[i] == -l[j - 1]) {
    ++i;
    --j;
  }
  std::vector<Letter> core(l.begin() + static_cast<std::ptrdiff_t>(i),
                           l.begin() + static_cast<std::ptrdiff_t>(j));
  std::vector<Letter> conj(l.begin(), l.begin() + static_cast<std::ptrdiff_t>(i));
  return {Word::reduce(core, u.rank()), Word::reduce(conj, u.rank())};
}

PrimitiveRoot primitive_root(const Word& u) {
  if (u.is_identity()) throw Error(ErrorKind::IdentityInput, "identity has no primitive root");
  auto [core, conj] = cyclic_reduce(u);
  const auto& s = core.letters();
  const std::size_t n = s.size();
  // Failure function; n - fail[n] is the smallest period of the core.
  std::vector<std::size_t> fail(n + 1, 0);
  for (std::size_t i = 1, k = 0; i < n; ++i) {
    while (k > 0 && s[i] != s[k]) k = fail[k];
    if (s[i] == s[k]) ++k;
    fail[i + 1] = k;
  }
  std::size_t period = n - fail[n];
  if (n % period != 0) period = n;
  std::vector<Letter> piece(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(period));
  Word root = conj * Word::reduce(piece, u.rank()) * conj.inverse();
  return {root, static_cast<long>(n / period)};
}

std::vector<long> abelianize(const Word& u) {
  std::vector<long> v(static_cast<std::size_t>(u.rank()), 0);
  for (Letter l : u.letters()) v[static_cast<std::size_t>(std::abs(l) - 1)] += l > 0 ? 1 : -1;
  return v;
}

int letter_rank(Letter letter) noexcept {
  return 2 * (std::abs(letter) - 1) + (letter < 0 ? 1 : 0);
}

int shortlex_compare(const Word& u, const Word& v) noexcept {
  if (u.length() != v.length()) return u.length() < v.length() ? -1 : 1;
  const auto& a = u.letters();
  const auto& b = v.letters();
  const auto [i, j] = std::mismatch(a.begin(), a.end(), b.begin());
  if (i == a.end()) return 0;
  return letter_rank(*i) < letter_rank(*j) ? -1 : 1;
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
  std::size_t h = static_cast<std::size_t>(w.rank()) * 0x9e3779b97f4a7c15ULL;
  for (Letter l : w.letters()) {
    h ^= static_cast<std::size_t>(l + 0x40) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

std::vector<Word> sphere(int rank, int length) {
  if (length < 0) return {};
  std::vector<std::vector<Letter>> layer{{}};
  std::vector<Letter> alphabet;
  for (int i = 1; i <= rank; ++i) {
    alphabet.push_back(i);
    alphabet.push_back(-i);
  }
  for (int step = 0; step < length; ++step) {
    std::vector<std::vector<Letter>> next;
    for (const auto& w : layer) {
      for (Letter l : alphabet) {
        if (!w.empty() && w.back() == -l) continue;
        auto e = w;
        e.push_back(l);
        next.push_back(std::move(e));
      }
    }
    layer = std::move(next);
  }
  std::vector<Word> out;
  out.reserve(layer.size());
  for (const auto& w : layer) out.push_back(Word::reduce(w, rank));
  // The alphabet is already in letter_rank order, so generation order is shortlex.
  return out;
}

std::vector<Word> ball(int rank, int radius) {
  std::vector<Word> out;
  for (int r = 0; r <= radius; ++r) {
    auto s = sphere(rank, r);
    out.insert(out.end(), s.begin(), s.end());
  }
  return out;
}

std::string to_string(const Word& w) {
  if (w.is_identity()) return "1";
  std::string out;
  const auto& l = w.letters();
  for (std::size_t i = 0; i < l.size();) {
    std::size_t j = i;
    while (j < l.size() && l[j] == l[i]) ++j;
    const long run = static_cast<long>(j - i);
    if (!out.empty()) out += '*';
    out += 'x' + std::to_string(std::abs(l[i]));
    const long e = l[i] > 0 ? run : -run;
    if (e != 1) out += '^' + std::to_string(e);
    i = j;
  }
  return out;
}

}  // namespace freering
