#include <doctest.h>

#include "freering/codec.hpp"
#include "freering/error.hpp"
#include "freering/expr.hpp"
#include "oracles.hpp"

using namespace freering;

namespace {

GroupRingElem E(const char* s, int rank = 2) { return parse_group_ring(s, rank); }

}  // namespace

TEST_CASE("marker families") {
  const auto fam = markers(3);
  CHECK(fam.b == Word::reduce({1, 1, 1, 2, 2, 2, 2}, 2));
  CHECK(fam.c.length() == 9);
  CHECK(fam.a.length() == 11);
  CHECK_NOTHROW(markers(1, 3));
  MarkerFamily bad = fam;
  bad.c = bad.b;
  CHECK_THROWS_AS(validate_markers(bad), Error);
  CHECK(a_block(fam, 0) == (GroupRingElem::scalar(2, 1) - GroupRingElem::monomial(fam.c)) *
                               (GroupRingElem::scalar(2, 1) - GroupRingElem::monomial(fam.a)) *
                               (GroupRingElem::scalar(2, 1) - GroupRingElem::monomial(fam.b)));
}

TEST_CASE("word codes round trip") {
  for (const auto& t : oracle::all_reduced(2, 2)) {
    if (t.empty()) continue;
    const auto code = encode_word(t, 2);
    CHECK(code.m == static_cast<int>(t.size()));
    CHECK(decode_word(code) == t);
  }
  for (const std::vector<int>& t : {std::vector<int>{3}, {1, -3}, {-2, 3}}) {
    CHECK(decode_word(encode_word(t, 3)) == t);
  }
}

TEST_CASE("word code errors") {
  CHECK_THROWS_AS(encode_word({1, -1}, 2), Error);
  CHECK_THROWS_AS(encode_word({0}, 2), Error);
  CHECK_THROWS_AS(encode_word({3}, 2), Error);
  auto code = encode_word({1, 2}, 2);
  code.w = code.w + E("x1");
  CHECK_THROWS_AS(decode_word(code), Error);
  code = encode_word({1, 2}, 2);
  code.m = 1;
  CHECK_THROWS_AS(decode_word(code), Error);
  try {
    decode_word({1, E("1 - x1")});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoCandidate);
  }
}

TEST_CASE("codes match the factor product") {
  const oracle::Fingerprint fp(2, 5);
  const std::vector<int> t = {2, -1};
  CHECK(fp.element(encode_word(t, 2).w) == fp.product(word_code_factors(t, 2)));
}

TEST_CASE("element codes") {
  const auto f = E("2*x1 - 1/2*x2^-1");
  const auto code = pack_fq(f);
  CHECK(code.s == 2);
  CHECK(code.m == 2);
  CHECK(check_fq(code.w, f));
  CHECK(!check_fq(code.w, E("2*x1 - x2^-1")));
  CHECK_THROWS_AS(pack_fq(E("2*x1 - x2^-1 + 1/2*x2")), Error);
  CHECK(!check_fq(code.w + E("x1"), f));
  CHECK_THROWS_AS(pack_fq(E("1 + x1")), Error);
  CHECK_THROWS_AS(pack_fq(GroupRingElem(2)), Error);

  const auto p = pack_element(E("5 + 2*x1"));
  CHECK(p.constant == 5);
  CHECK(p.w == pack_fq(E("2*x1")).w);

  const auto payloads = fq_payloads(f);
  REQUIRE(payloads.size() == 2);
  CHECK(payloads.back() == GroupRingElem::scalar(2, augmentation(f)) - f);
}

TEST_CASE("small decoder") {
  const FqDecoder dec(2, 1, 2);
  for (const char* s : {"2*x1", "x2", "-3*x1^-1", "1/2*x2^-1"}) {
    const auto f = E(s);
    const auto got = dec.decode(pack_fq(f).w);
    REQUIRE(got);
    CHECK(*got == f);
  }
  CHECK(!dec.decode(E("1 - x1")));
  // With an even number of terms f and -f share a code.
  CHECK(pack_fq(E("x1 - x2")).w == pack_fq(E("x2 - x1")).w);
  CHECK_THROWS_AS(dec.decode(pack_fq(E("x1 - x2")).w), Error);
}

TEST_CASE("chains") {
  for (int m : {2, 3}) {
    const auto w = am_chain(m);
    CHECK(am_chain_verify(w, m));
    CHECK(!am_chain_verify(w, m + 1));
    CHECK(!am_chain_verify(w + E("x1"), m));
  }
  CHECK(!am_chain_verify(am_chain(3), 2));
  CHECK_THROWS_AS(am_chain(1), Error);
  CHECK_THROWS_AS(am_chain(6), Error);
}
