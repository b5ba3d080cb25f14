#include <doctest.h>

#include <random>

#include "freering/magnus.hpp"
#include "oracles.hpp"

using namespace freering;

namespace {

int sign(Order o) { return o == Order::Less ? -1 : o == Order::Equal ? 0 : 1; }

}  // namespace

TEST_CASE("embedding matches the literal series product") {
  for (const auto& letters : oracle::all_reduced(2, 3)) {
    const PowerSeries s = embed_word(Word::reduce(letters, 2), 5);
    const oracle::Series ref = oracle::magnus(letters, 5);
    CHECK(s.terms().size() == ref.size());
    for (const auto& [m, c] : ref) CHECK(s.coefficient(m) == c);
  }
}

TEST_CASE("inverse series") {
  const PowerSeries f = embed_word(Word::reduce({1, 2, 2}, 2), 6);
  CHECK(ps_mul(f, ps_inv(f)) == PowerSeries::one(2, 6));
  CHECK(ps_inv(f) == embed_word(Word::reduce({-2, -2, -1}, 2), 6));
}

TEST_CASE("anchors") {
  CHECK(bergman_cmp(Word::generator(1, 2), Word::generator(2, 2)).order == Order::Greater);
  const auto f = PowerSeries::from_terms(2, 1, {{{}, 1}, {{1}, 2}, {{2}, 3}});
  const auto g = PowerSeries::from_terms(2, 1, {{{}, 1}, {{1}, 3}, {{2}, 2}});
  CHECK(series_cmp(f, g).order == Order::Less);
  CHECK(to_string(embed_word(Word::generator(-1, 2), 2)) == "1 - y1 + y1*y1");
}

TEST_CASE("bergman_cmp agrees with the literal oracle on the radius-3 ball") {
  const auto words = oracle::all_reduced(2, 3);
  for (const auto& u : words) {
    for (const auto& v : words) {
      const auto got = bergman_cmp(Word::reduce(u, 2), Word::reduce(v, 2));
      CHECK(sign(got.order) == oracle::bergman(u, v));
    }
  }
}

TEST_CASE("MagnusKey order and products agree with bergman_cmp") {
  std::mt19937_64 rng(3);
  for (int rank : {2, 3}) {
    for (int n = 0; n < 3000; ++n) {
      const Word u = oracle::random_word(rng, rank, static_cast<int>(rng() % 9));
      const Word v = oracle::random_word(rng, rank, static_cast<int>(rng() % 9));
      const MagnusKey ku(u);
      const MagnusKey kv(v);
      const auto c = ku <=> kv;
      const int s = c < 0 ? -1 : c > 0 ? 1 : 0;
      CHECK(s == sign(bergman_cmp(u, v).order));
      const MagnusKey prod = ku * kv;
      CHECK(prod.word() == u * v);
      const auto c2 = prod <=> MagnusKey(u * v);
      CHECK(c2 == std::strong_ordering::equal);
      const Word w = oracle::random_word(rng, rank, 3);
      const auto c3 = (prod <=> MagnusKey(w));
      CHECK((c3 < 0 ? -1 : c3 > 0 ? 1 : 0) == sign(bergman_cmp(u * v, w).order));
    }
  }
}

TEST_CASE("deep disagreements fall back correctly") {
  // [x1, x2] and [x1, x2]^2 agree with 1 up to degree 1, and commutators of
  // commutators agree much longer.
  const Word a = Word::generator(1, 2);
  const Word b = Word::generator(2, 2);
  const Word c = a * b * a.inverse() * b.inverse();
  const Word d = c * a * c.inverse() * a.inverse();
  const Word e = d * b * d.inverse() * b.inverse();
  for (const Word& u : {c, d, e, e * e, e.inverse()}) {
    const auto got = bergman_cmp(u, Word(2));
    CHECK(sign(got.order) == oracle::bergman(u.letters(), {}));
    const auto key = MagnusKey(u) <=> MagnusKey(Word(2));
    CHECK((key < 0 ? -1 : key > 0 ? 1 : 0) == sign(got.order));
  }
}
