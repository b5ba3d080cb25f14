#include <doctest.h>

#include <json.hpp>

#include <random>
#include <sstream>

#include "cli.hpp"
#include "freering/expr.hpp"
#include "freering/json_io.hpp"

using namespace freering;
using Json = nlohmann::json;

namespace {

struct Run {
  int code;
  Json out;
};

Run run(std::vector<std::string> args, const std::string& input = "") {
  std::ostringstream out;
  std::istringstream in(input);
  const int code = cli::run(args, out, in);
  return {code, Json::parse(out.str())};
}

}  // namespace

TEST_CASE("eval") {
  const auto r = run({"eval", "--rank", "2", "(1-x1)*(1+x1+x1^2)"});
  CHECK(r.code == 0);
  CHECK(group_ring_from_json(r.out) == parse_group_ring("1 - x1^3", 2));
  CHECK(r.out["expr"] == "1 - x1^3");
  CHECK(run({"eval", "--rank", "2", "x1^-1*x1"}).out["expr"] == "1");
}

TEST_CASE("errors map to kinds and exit codes") {
  auto r = run({"eval", "--rank", "2", "x3"});
  CHECK(r.code == 1);
  CHECK(r.out["error"]["kind"] == "GeneratorOutOfRange");
  r = run({"eval", "--rank", "2", "(x1"});
  CHECK(r.code == 1);
  CHECK(r.out["error"]["kind"] == "SyntaxError");
  r = run({"eval", "--rank", "2", "0^-1"});
  CHECK(r.out["error"]["kind"] == "ZeroToNegativePower");
  r = run({"eval", "--rank", "2", "(1+x1)^-1"});
  CHECK(r.out["error"]["kind"] == "NotInvertible");
  r = run({"eval", "x1"});
  CHECK(r.code == 2);
  CHECK(r.out["error"]["kind"] == "UsageError");
  r = run({"frobnicate"});
  CHECK(r.code == 2);
  r = run({"decode-word"}, "{not json");
  CHECK(r.code == 1);
  CHECK(r.out["error"]["kind"] == "InvalidJson");
  r = run({"divl", "--rank", "2", "x1", "0"});
  CHECK(r.out["error"]["kind"] == "ZeroDivisor");
  r = run({"centralizer", "--rank", "2", "1"});
  CHECK(r.out["error"]["kind"] == "IdentityInput");
  r = run({"metric", "--rank", "2", "x1 + x2", "x1"});
  CHECK(r.out["error"]["kind"] == "NotAWord");
}

TEST_CASE("irred and division") {
  CHECK(run({"irred", "--rank", "2", "1 - x1^2*x2^3"}).out == Json{{"verdict", "Irreducible"}});
  const auto r = run({"divl", "--rank", "2", "1 - x1^3", "1 - x1"});
  CHECK(r.out["status"] == "Exact");
  CHECK(r.out["quotient"]["expr"] == "1 + x1 + x1^2");
  CHECK(run({"divl", "--rank", "2", "--budget", "1", "1 - x1^3", "1 - x1"}).out["status"] == "BudgetExhausted");
  CHECK(run({"divr", "--rank", "2", "1 - x2", "1 - x1"}).out["status"] == "NotDivisible");
  CHECK(run({"order-cmp", "--rank", "2", "x1", "x2"}).out["order"] == "Greater");
  CHECK(run({"unit", "--rank", "2", "2*x1"}).out["unit"] == true);
  CHECK(run({"centralizer", "--rank", "2", "x1*x2*x1*x2"}).out["exponent"] == 2);
  CHECK(run({"rigid", "--rank", "2", "x1*x2^2", "x1^2*x2^3"}).out["rigid"] == true);
}

TEST_CASE("word codec round trip through the CLI") {
  const auto enc = run({"encode-word", "--rank", "2", "[2,-1]"});
  REQUIRE(enc.code == 0);
  const auto dec = run({"decode-word", "--rank", "2"}, enc.out.dump());
  CHECK(dec.out == Json{{"tuple", {2, -1}}});
}

TEST_CASE("element codes through the CLI") {
  const auto enc = run({"pack-fq", "--rank", "2", "3 + 2*x1 - x2"});
  REQUIRE(enc.code == 0);
  CHECK(enc.out["const"]["num"] == 3);
  CHECK(run({"check-fq", "--rank", "2", "3 + 2*x1 - x2"}, enc.out.dump()).out["valid"] == true);
  CHECK(run({"check-fq", "--rank", "2", "2*x1 - x2"}, enc.out.dump()).out["valid"] == false);
  const auto chain = run({"am-chain", "--rank", "2", "2"});
  CHECK(run({"am-chain", "--rank", "2", "--in", "-", "2"}, chain.out["w"].dump()).out["valid"] == true);
  CHECK(run({"am-chain", "--rank", "2", "--in", "-", "3"}, chain.out["w"].dump()).out["valid"] == false);
}

TEST_CASE("Laurent commands") {
  const auto enc = run({"tuple-encode", "--rank", "1", "x1^2 + x1 + 1", "[1, \"2/3\", -2]"});
  REQUIRE(enc.code == 0);
  const auto moved = run({"nu", "--rank", "1", "x1^3 - x1 + 2"}, enc.out.dump());
  const auto dec = run({"tuple-decode", "--rank", "1"}, moved.out.dump());
  CHECK(dec.out["tuple"][1] == Json{{"num", 2}, {"den", 3}});
  CHECK(run({"in-kp", "--rank", "1", "x1^4 + 2*x1^3 + 3*x1^2 + 2*x1 + 1", "x1^2 + x1 + 1"}).out["coefficients"].size() == 3);
  CHECK(run({"in-kp", "--rank", "1", "x1", "x1^2 + x1 + 1"}).out["member"] == false);
  CHECK(run({"psi-check", "--rank", "1", "x1", "x1^2 + x1 + 1"}).out["pass"] == false);
  CHECK(run({"psi-check", "--rank", "1", "--seed", "4", "--samples", "5", "x1^4 + 2*x1^3 + 3*x1^2 + 2*x1 + 1",
             "x1^2 + x1 + 1"})
            .out["pass"] == true);
}

TEST_CASE("geometry commands") {
  CHECK(run({"metric", "--rank", "2", "x1", "x2"}).out["distance"] == 2);
  CHECK(run({"geodesic", "--rank", "2", "x1", "x2"}).out["geodesic"] == Json{-1, 2});
  CHECK(run({"fold", "--rank", "2", "x1*x2", "x2*x1"}).out["vertices"] == 3);
  CHECK(run({"member", "--rank", "2", "x1^4", "x1^2", "x2"}).out["member"] == true);
  CHECK(run({"is-basis", "--rank", "2", "x1", "x1*x2*x1^-1"}).out["free_basis"] == true);
  CHECK(run({"mal-probe", "--rank", "2", "--radius", "4", "x1^2"}).out == Json{{"status", "ViolatedAt"}, {"witness", {1}}});
  CHECK(run({"qc-probe", "--rank", "2", "--k", "1", "--radius", "3", "x1^2", "x2"}).out["status"] == "Satisfied");
}

TEST_CASE("printing then parsing is the identity") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> len(0, 4);
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 5);
  for (int n = 0; n < 1000; ++n) {
    std::vector<GroupRingElem::Term> terms;
    const int count = 1 + static_cast<int>(rng() % 5);
    for (int i = 0; i < count; ++i) {
      std::vector<int> letters;
      const int l = len(rng);
      for (int j = 0; j < l; ++j) letters.push_back(static_cast<int>(rng() % 3 + 1) * (rng() % 2 ? 1 : -1));
      Rational c(num(rng), den(rng));
      c.canonicalize();
      terms.emplace_back(Word::reduce(letters, 3), c);
    }
    const auto f = GroupRingElem::from_terms(3, terms);
    CHECK(parse_group_ring(to_string(f), 3) == f);
    CHECK(group_ring_from_json(Json::parse(to_json(f).dump())) == f);
  }
}

TEST_CASE("big rationals travel as strings") {
  const Rational big(Integer("123456789012345678901234567891"), Integer(7));
  const Json j = to_json(big);
  CHECK(j["num"].is_string());
  CHECK(rational_from_json(j) == big);
  CHECK(rational_from_json(Json("3/6")) == Rational(1, 2));
  CHECK_THROWS(rational_from_json(Json{{"num", 1}, {"den", 0}}));
}
