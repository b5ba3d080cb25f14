#include <doctest.h>

#include "freering/geometry.hpp"
#include "oracles.hpp"

using namespace freering;

namespace {

Word W(std::initializer_list<int> l) { return Word::reduce(l, 2); }

}  // namespace

TEST_CASE("metric and geodesics") {
  CHECK(word_metric(W({1}), W({2})) == 2);
  CHECK(word_metric(W({1, 2}), W({1, 2, 2})) == 1);
  CHECK(geodesic(W({1}), W({2})) == W({-1, 2}));
  const auto ball = oracle::all_reduced(2, 2);
  for (const auto& a : ball) {
    for (const auto& b : ball) {
      const Word u = Word::reduce(a, 2);
      const Word v = Word::reduce(b, 2);
      CHECK(word_metric(u, v) == static_cast<long>(oracle::multiply(oracle::inverse(a), b).size()));
      CHECK(u * geodesic(u, v) == v);
    }
  }
}

TEST_CASE("folding") {
  const auto g = fold({W({1, 2}), W({2, 1})}, 2);
  CHECK(g.vertices == 3);
  CHECK(g.edges.size() == 4);
  // <x1^2, x1^3> = <x1> folds to a single loop.
  const auto h = fold({W({1, 1}), W({1, 1, 1})}, 2);
  CHECK(h.vertices == 1);
  CHECK(h.edges.size() == 1);
  // Generators that cancel to the identity leave the trivial graph.
  const auto t = fold({W({}), W({1, -1})}, 2);
  CHECK(t.vertices == 1);
  CHECK(t.edges.empty());
  // Conjugates fold to the same graph up to the base, so membership differs.
  CHECK(member(W({1, 1}), {W({1, 1})}));
  CHECK(!member(W({1}), {W({1, 1})}));
  CHECK(member(W({2, 1, 1, -2}), {W({2, 1, -2})}));
  CHECK(member(W({1, 2, -1, -2}), {W({1, 2}), W({2, 1})}));
  CHECK(!member(W({1, 2, 1}), {W({1, 2}), W({2, 1})}));
  CHECK(member(W({1, 2, 2, 1}), {W({1, 2}), W({2, 1})}));
}

TEST_CASE("free bases") {
  CHECK(is_free_basis({W({1}), W({2})}, 2));
  CHECK(is_free_basis({W({1}), W({1, 2, -1})}, 2));
  CHECK(!is_free_basis({W({1, 1}), W({2})}, 2));
  CHECK(!is_free_basis({W({1, 2}), W({2, 1})}, 2));
  CHECK(!is_free_basis({W({1}), W({1, 1})}, 2));
  CHECK(!is_free_basis({W({1}), W({})}, 2));
}

TEST_CASE("probes") {
  const auto mal = malnormality_probe({W({1, 1})}, 2, 4);
  CHECK(mal.status == ProbeStatus::ViolatedAt);
  REQUIRE(mal.witness);
  CHECK(*mal.witness == W({1}));
  CHECK(malnormality_probe({W({1})}, 2, 3).status == ProbeStatus::Satisfied);
  CHECK(quasiconvexity_probe({W({1, 1}), W({2})}, 2, 1, 4).status == ProbeStatus::Satisfied);
  CHECK(malnormality_probe({W({1}), W({2})}, 2, 4, 10).status == ProbeStatus::Inconclusive);
  const auto ball = subgroup_ball(fold({W({1, 1})}, 2), 4, 100);
  REQUIRE(ball);
  CHECK(ball->size() == 5);
}
