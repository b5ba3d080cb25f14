#include "freering/error.hpp"

namespace freering {

std::string_view kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::RankMismatch: return "RankMismatch";
    case ErrorKind::LetterOutOfRange: return "LetterOutOfRange";
    case ErrorKind::ZeroLetter: return "ZeroLetter";
    case ErrorKind::IdentityInput: return "IdentityInput";
    case ErrorKind::ZeroInput: return "ZeroInput";
    case ErrorKind::ZeroDivisor: return "ZeroDivisor";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::Precondition: return "Precondition";
    case ErrorKind::NotInKP: return "NotInKP";
    case ErrorKind::MarkerNotPower: return "MarkerNotPower";
    case ErrorKind::MarkerInvariant: return "MarkerInvariant";
    case ErrorKind::UnreducedTuple: return "UnreducedTuple";
    case ErrorKind::NoCandidate: return "NoCandidate";
    case ErrorKind::AmbiguousCandidate: return "AmbiguousCandidate";
    case ErrorKind::AmbiguousPreimage: return "AmbiguousPreimage";
    case ErrorKind::IdentityInSupport: return "IdentityInSupport";
    case ErrorKind::ExpansionTooLarge: return "ExpansionTooLarge";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::GeneratorOutOfRange: return "GeneratorOutOfRange";
    case ErrorKind::ZeroToNegativePower: return "ZeroToNegativePower";
    case ErrorKind::NotAWord: return "NotAWord";
    case ErrorKind::InvalidJson: return "InvalidJson";
    case ErrorKind::UsageError: return "UsageError";
    case ErrorKind::Internal: return "Internal";
  }
  return "Internal";
}

}  // namespace freering
