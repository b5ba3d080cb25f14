#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace freering {

/// Every failure the library reports carries one of these kinds. The CLI
/// prints `kind_name(kind)` verbatim, so each value maps to a distinct string.
enum class ErrorKind {
  RankMismatch,
  LetterOutOfRange,
  ZeroLetter,
  IdentityInput,
  ZeroInput,
  ZeroDivisor,
  NotInvertible,
  DegreeMismatch,
  Precondition,
  NotInKP,
  MarkerNotPower,
  MarkerInvariant,
  UnreducedTuple,
  NoCandidate,
  AmbiguousCandidate,
  AmbiguousPreimage,
  IdentityInSupport,
  ExpansionTooLarge,
  SyntaxError,
  GeneratorOutOfRange,
  ZeroToNegativePower,
  NotAWord,
  InvalidJson,
  UsageError,
  Internal,
};

std::string_view kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace freering
