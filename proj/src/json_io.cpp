#include "freering/json_io.hpp"

#include <limits>
#include <string>

#include "freering/error.hpp"

namespace freering {

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorKind::InvalidJson, what); }

Json integer_to_json(const Integer& z) {
  if (z.fits_slong_p()) return static_cast<long>(z.get_si());
  return z.get_str();
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Integer(std::to_string(j.get<unsigned long>()));
    return Integer(std::to_string(j.get<long>()));
  }
  if (j.is_string()) {
    try {
      return Integer(j.get<std::string>());
    } catch (const std::invalid_argument&) {
      invalid("not an integer: " + j.get<std::string>());
    }
  }
  invalid("expected an integer, got " + j.dump());
}

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) invalid(std::string("missing field \"") + name + "\"");
  return j.at(name);
}

int int_field(const Json& j, const char* name) {
  const Json& v = field(j, name);
  if (!v.is_number_integer()) invalid(std::string("field \"") + name + "\" must be an integer");
  const long x = v.get<long>();
  if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) {
    invalid(std::string("field \"") + name + "\" out of range");
  }
  return static_cast<int>(x);
}

const Json& array_field(const Json& j, const char* name) {
  const Json& v = field(j, name);
  if (!v.is_array()) invalid(std::string("field \"") + name + "\" must be an array");
  return v;
}

}  // namespace

Json to_json(const Rational& q) {
  return {{"num", integer_to_json(q.get_num())}, {"den", integer_to_json(q.get_den())}};
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(integer_from_json(j));
  if (j.is_string()) {
    Rational q;
    if (q.set_str(j.get<std::string>(), 10) != 0) invalid("not a rational: " + j.get<std::string>());
    if (q.get_den() == 0) invalid("zero denominator");
    q.canonicalize();
    return q;
  }
  const Integer num = integer_from_json(field(j, "num"));
  const Integer den = integer_from_json(field(j, "den"));
  if (den == 0) invalid("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Json to_json(const Word& w) { return Json(w.letters()); }

Word word_from_json(const Json& j, int rank) {
  if (!j.is_array()) invalid("a word is an array of nonzero integers");
  std::vector<Letter> letters;
  for (const auto& x : j) {
    if (!x.is_number_integer()) invalid("a word is an array of nonzero integers");
    letters.push_back(x.get<int>());
  }
  return Word::reduce(letters, rank);
}

Json to_json(const GroupRingElem& f) {
  Json terms = Json::array();
  for (const auto& [w, c] : f.terms()) {
    Json t = to_json(c);
    t["word"] = to_json(w);
    terms.push_back(std::move(t));
  }
  return {{"rank", f.rank()}, {"terms", std::move(terms)}};
}

GroupRingElem group_ring_from_json(const Json& j) {
  const int rank = int_field(j, "rank");
  if (rank < 1) invalid("rank must be positive");
  std::vector<GroupRingElem::Term> terms;
  for (const auto& t : array_field(j, "terms")) {
    terms.emplace_back(word_from_json(field(t, "word"), rank), rational_from_json(t));
  }
  return GroupRingElem::from_terms(rank, terms);
}

Json to_json(const LaurentPoly& p) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) {
    Json t = to_json(c);
    t["exps"] = e;
    terms.push_back(std::move(t));
  }
  return {{"nvars", p.nvars()}, {"terms", std::move(terms)}};
}

LaurentPoly laurent_from_json(const Json& j) {
  const int nvars = int_field(j, "nvars");
  if (nvars < 1) invalid("nvars must be positive");
  LaurentPoly p(nvars);
  for (const auto& t : array_field(j, "terms")) {
    const Json& e = array_field(t, "exps");
    Exponents exps;
    for (const auto& x : e) {
      if (!x.is_number_integer()) invalid("exponents must be integers");
      exps.push_back(x.get<long>());
    }
    if (static_cast<int>(exps.size()) != nvars) invalid("exponent vector length differs from nvars");
    p.add_term(exps, rational_from_json(t));
  }
  return p;
}

Json to_json(const WordCode& code) { return {{"m", code.m}, {"w", to_json(code.w)}}; }

WordCode word_code_from_json(const Json& j) {
  return {int_field(j, "m"), group_ring_from_json(field(j, "w"))};
}

Json to_json(const ElementCode& code) {
  return {{"s", code.s}, {"m", code.m}, {"const", to_json(code.constant)}, {"w", to_json(code.w)}};
}

ElementCode element_code_from_json(const Json& j) {
  ElementCode code;
  code.s = int_field(j, "s");
  code.m = int_field(j, "m");
  code.constant = j.contains("const") ? rational_from_json(j.at("const")) : Rational(0);
  code.w = group_ring_from_json(field(j, "w"));
  return code;
}

Json to_json(const TupleCode& code) {
  return {{"value", to_json(code.value)}, {"marker", to_json(code.marker)}, {"base", to_json(code.base)}};
}

TupleCode tuple_code_from_json(const Json& j) {
  return {laurent_from_json(field(j, "value")), laurent_from_json(field(j, "marker")),
          laurent_from_json(field(j, "base"))};
}

Json to_json(const CoreGraph& g) {
  Json edges = Json::array();
  for (const auto& e : g.edges) edges.push_back({e[0], e[1], e[2]});
  return {{"vertices", g.vertices}, {"base", 0}, {"edges", std::move(edges)}};
}

}  // namespace freering
