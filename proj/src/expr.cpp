#include "freering/expr.hpp"

#include <cctype>
#include <limits>
#include <string>

#include "freering/error.hpp"

namespace freering {

namespace {

class Parser {
 public:
  Parser(std::string_view text, int rank) : text_(text), rank_(rank) {}

  Expr parse() {
    Expr e = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::SyntaxError, "at position " + std::to_string(pos_) + ": " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool peek_digit() {
    skip_space();
    return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
  }

  std::string digits() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(text_.substr(start, pos_ - start));
  }

  Expr binary(Expr::Kind kind, std::size_t at, Expr lhs, Expr rhs) {
    Expr e;
    e.kind = kind;
    e.position = at;
    e.children.push_back(std::move(lhs));
    e.children.push_back(std::move(rhs));
    return e;
  }

  Expr expr() {
    Expr lhs = term();
    while (peek('+') || peek('-')) {
      const std::size_t at = pos_;
      const auto kind = text_[pos_++] == '+' ? Expr::Kind::Add : Expr::Kind::Sub;
      lhs = binary(kind, at, std::move(lhs), term());
    }
    return lhs;
  }

  Expr term() {
    Expr lhs = factor();
    while (peek('*')) {
      const std::size_t at = pos_++;
      lhs = binary(Expr::Kind::Mul, at, std::move(lhs), factor());
    }
    return lhs;
  }

  Expr factor() {
    Expr base = atom();
    if (!peek('^')) return base;
    const std::size_t at = pos_++;
    skip_space();
    bool negative = false;
    if (pos_ < text_.size() && text_[pos_] == '-') {
      negative = true;
      ++pos_;
    }
    const std::string d = digits();
    long k = 0;
    try {
      k = std::stol(d);
    } catch (const std::out_of_range&) {
      fail("exponent too large");
    }
    Expr e;
    e.kind = Expr::Kind::Pow;
    e.position = at;
    e.exponent = negative ? -k : k;
    e.children.push_back(std::move(base));
    return e;
  }

  Expr atom() {
    skip_space();
    if (pos_ == text_.size()) fail("unexpected end of input");
    const std::size_t at = pos_;
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr inner = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (c == 'x') {
      ++pos_;
      const std::string d = digits();
      long index = 0;
      try {
        index = std::stol(d);
      } catch (const std::out_of_range&) {
        index = std::numeric_limits<long>::max();
      }
      if (index < 1 || index > rank_) {
        throw Error(ErrorKind::GeneratorOutOfRange,
                    "x" + d + " at position " + std::to_string(at) + " exceeds rank " +
                        std::to_string(rank_));
      }
      Expr e;
      e.kind = Expr::Kind::Generator;
      e.generator = static_cast<int>(index);
      e.position = at;
      return e;
    }
    if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
      std::string num;
      if (c == '-') {
        num = "-";
        ++pos_;
      }
      num += digits();
      Integer den = 1;
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        den = Integer(digits());
        if (den == 0) fail("zero denominator");
      }
      Expr e;
      e.kind = Expr::Kind::Number;
      e.value = Rational(Integer(num), den);
      e.value.canonicalize();
      e.position = at;
      return e;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  int rank_;
  std::size_t pos_ = 0;
};

[[noreturn]] void bad_power(const Expr& e, bool zero) {
  if (zero) {
    throw Error(ErrorKind::ZeroToNegativePower,
                "zero raised to a negative power at position " + std::to_string(e.position));
  }
  throw Error(ErrorKind::NotInvertible,
              "negative power of a non-unit at position " + std::to_string(e.position));
}

}  // namespace

Expr parse_expr(std::string_view text, int rank) {
  if (rank < 1) throw Error(ErrorKind::Precondition, "rank must be positive");
  return Parser(text, rank).parse();
}

GroupRingElem eval_group_ring(const Expr& e, int rank) {
  switch (e.kind) {
    case Expr::Kind::Number:
      return GroupRingElem::scalar(rank, e.value);
    case Expr::Kind::Generator:
      return GroupRingElem::monomial(Word::generator(e.generator, rank));
    case Expr::Kind::Add:
      return eval_group_ring(e.children[0], rank) + eval_group_ring(e.children[1], rank);
    case Expr::Kind::Sub:
      return eval_group_ring(e.children[0], rank) - eval_group_ring(e.children[1], rank);
    case Expr::Kind::Mul:
      return eval_group_ring(e.children[0], rank) * eval_group_ring(e.children[1], rank);
    case Expr::Kind::Pow: {
      GroupRingElem base = eval_group_ring(e.children[0], rank);
      long k = e.exponent;
      if (k < 0) {
        const auto unit = is_trivial_unit(base);
        if (!unit) bad_power(e, base.is_zero());
        base = GroupRingElem::monomial(unit->g.inverse(), 1 / unit->alpha);
        k = -k;
      }
      GroupRingElem out = GroupRingElem::scalar(rank, 1);
      while (k > 0) {
        if (k & 1) out = out * base;
        k >>= 1;
        if (k > 0) base = base * base;
      }
      return out;
    }
  }
  throw Error(ErrorKind::Internal, "unknown expression node");
}

LaurentPoly eval_laurent(const Expr& e, int nvars) {
  switch (e.kind) {
    case Expr::Kind::Number:
      return LaurentPoly::constant(nvars, e.value);
    case Expr::Kind::Generator:
      return LaurentPoly::variable(e.generator, nvars);
    case Expr::Kind::Add:
      return eval_laurent(e.children[0], nvars) + eval_laurent(e.children[1], nvars);
    case Expr::Kind::Sub:
      return eval_laurent(e.children[0], nvars) - eval_laurent(e.children[1], nvars);
    case Expr::Kind::Mul:
      return eval_laurent(e.children[0], nvars) * eval_laurent(e.children[1], nvars);
    case Expr::Kind::Pow: {
      const LaurentPoly base = eval_laurent(e.children[0], nvars);
      if (e.exponent < 0 && !base.is_monomial()) bad_power(e, base.is_zero());
      return base.pow(e.exponent);
    }
  }
  throw Error(ErrorKind::Internal, "unknown expression node");
}

}  // namespace freering
