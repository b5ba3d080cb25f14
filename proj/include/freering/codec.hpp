#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "freering/group_ring.hpp"
#include "freering/laurent.hpp"
#include "freering/word.hpp"

namespace freering {

/// Largest expanded product the codecs will build before giving up with
/// ExpansionTooLarge. The encodings grow roughly like 2^m * prod 4(i+2).
inline constexpr std::size_t kDefaultExpansionLimit = 1'000'000;

/// Marker words for payload length m, written in x1 and x2 of F_rank:
/// b = x1^m x2^{m+1}, c = x1^{m+1} x2^{m+2}, a = x1^{m+2} x2^{m+3}.
struct MarkerFamily {
  int m = 1;
  Word a;
  Word b;
  Word c;
};

/// Builds and validates the family: each 1 - marker certified Irreducible,
/// the markers pairwise non-commuting, and each marker above every word of
/// length < m/2 in the Bergman order. Throws MarkerInvariant otherwise.
MarkerFamily markers(int m, int rank = 2);

/// Checks the MarkerFamily invariants for an arbitrary family.
void validate_markers(const MarkerFamily& fam);

/// (1 - c)(1 - a)^{1+i}(1 - b), expanded.
GroupRingElem a_block(const MarkerFamily& fam, int i);

struct WordCode {
  int m = 0;
  GroupRingElem w{2};
};

/// The factors A_{m,0}, 1 - M_1, A_{m,1}, ..., 1 - M_m, A_{m,m} of w_t,
/// M_i the length-i prefix of t. Throws UnreducedTuple, LetterOutOfRange.
std::vector<GroupRingElem> word_code_factors(const std::vector<Letter>& t, int rank);

WordCode encode_word(const std::vector<Letter>& t, int rank,
                     std::size_t max_terms = kDefaultExpansionLimit);

/// Recovers the tuple letter by letter: strip A_{m,0}, then at step i try
/// every letter that does not cancel against the known prefix and keep the
/// one for which (1 - M_{i-1} x) A_{m,i} divides on the left.
/// Throws NoCandidate or AmbiguousCandidate.
std::vector<Letter> decode_word(const WordCode& code);

struct ElementCode {
  GroupRingElem w{2};
  int s = 0;
  int m = 0;
  /// Identity coefficient of the encoded element; carried beside w.
  Rational constant = 0;
};

/// Payloads h_1, ..., h_s with h_1 = a_1 (1 - M_1) and
/// h_{i+1} = h_i + a_{i+1} (1 - M_{i+1}), monomials in shortlex order.
std::vector<GroupRingElem> fq_payloads(const GroupRingElem& f);

/// A_{m,1}, h_1, A_{m,2}, ..., h_s, A_{m,s+1} with m = 2 max |M_i|.
std::vector<GroupRingElem> fq_factors(const GroupRingElem& f);

/// Packs f, which must be nonzero with no identity term, into
/// A_{m,1} h_1 A_{m,2} h_2 ... A_{m,s} h_s A_{m,s+1}.
ElementCode pack_fq(const GroupRingElem& f, std::size_t max_terms = kDefaultExpansionLimit);

/// Splits off the identity coefficient into `constant` and packs the rest.
ElementCode pack_element(const GroupRingElem& f, std::size_t max_terms = kDefaultExpansionLimit);

/// Recomputes pack_fq(f) and compares, then re-derives the framing: w is
/// left divisible by A_{m,1} h_1 A_{m,2} (h_2 A_{m,3} when s >= 2), right
/// divisible by A_{m,s+1}, and consecutive payloads differ by a(1 - M) with
/// M a non-identity word.
bool check_fq(const GroupRingElem& w, const GroupRingElem& f);

/// Brute-force inverse of pack_fq over supports of at most `max_terms`
/// non-identity words of length <= max_len. The tables depend only on the
/// bounds, so one decoder serves many codes.
class FqDecoder {
 public:
  FqDecoder(int rank, int max_len, int max_terms);

  /// The unique f with pack_fq(f).w == w, or nothing. Throws
  /// AmbiguousPreimage when several f pack to w.
  std::optional<GroupRingElem> decode(const GroupRingElem& w) const;

  std::size_t support_count() const noexcept { return supports_.size(); }

 private:
  // Index sequence of the coefficients, e.g. {0, 0, 1} for a1^2 a2.
  using AlphaMonomial = std::vector<int>;

  struct Support {
    std::vector<Word> words;
    int m = 0;
    std::vector<AlphaMonomial> monomials;
    std::vector<LaurentPoly> images;  // abelian image of each monomial's coefficient
  };

  // Coefficient of each alpha-monomial in the expanded code of a support,
  // built on first use.
  const std::vector<GroupRingElem>& word_system(std::size_t index) const;

  int rank_;
  std::vector<Support> supports_;
  mutable std::map<std::size_t, std::vector<GroupRingElem>> word_systems_;
};

std::optional<GroupRingElem> decode_fq_small(const GroupRingElem& w, int max_len, int max_terms);

/// The fixed base markers of the (a_m, m) chain.
struct ChainBase {
  Word a;
  Word b;
  Word c;
};

ChainBase chain_base(int rank = 2);

/// C_1, 1 - a_2, C_2, ..., 1 - a_m, C_m with C_i = (1-c)(1-a)^{1+i}(1-b)
/// over the base markers and a_i = markers(i).a. Throws Precondition for m < 2.
std::vector<GroupRingElem> am_chain_factors(int m, int rank = 2);

GroupRingElem am_chain(int m, int rank = 2, std::size_t max_terms = kDefaultExpansionLimit);

/// Head and tail stripping, then the recursion: after C_{i-1} the payload
/// must be beta (1 - u_i) with beta - payload a non-scalar unit and
/// u_{i+1} = x1 u_i x2, starting from u_2 = markers(2).a; the walk must end
/// exactly after C_m with u_m = markers(m).a. Throws Precondition for m < 2.
bool am_chain_verify(const GroupRingElem& w, int m);

}  // namespace freering
