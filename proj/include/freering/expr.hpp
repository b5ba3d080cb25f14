#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "freering/group_ring.hpp"
#include "freering/laurent.hpp"
#include "freering/rational.hpp"

namespace freering {

/// Syntax tree of the calculator grammar
///
///   expr   := term { ("+" | "-") term }
///   term   := factor { "*" factor }
///   factor := atom [ "^" integer ]
///   atom   := rational | generator | "(" expr ")"
///
/// with generator := "x" digits and rational := ["-"] digits ["/" digits].
struct Expr {
  enum class Kind { Number, Generator, Add, Sub, Mul, Pow };

  Kind kind = Kind::Number;
  Rational value;        // Number
  int generator = 0;     // Generator, 1-based
  long exponent = 0;     // Pow
  std::size_t position = 0;
  std::vector<Expr> children;
};

/// Throws SyntaxError (detail names the offset) or GeneratorOutOfRange.
Expr parse_expr(std::string_view text, int rank);

/// Throws ZeroToNegativePower or NotInvertible for bad negative powers.
GroupRingElem eval_group_ring(const Expr& e, int rank);
LaurentPoly eval_laurent(const Expr& e, int nvars);

inline GroupRingElem parse_group_ring(std::string_view text, int rank) {
  return eval_group_ring(parse_expr(text, rank), rank);
}
inline LaurentPoly parse_laurent(std::string_view text, int nvars) {
  return eval_laurent(parse_expr(text, nvars), nvars);
}

}  // namespace freering
