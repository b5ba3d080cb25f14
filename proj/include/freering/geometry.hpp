#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "freering/word.hpp"

namespace freering {

/// d(g, h) = |g^-1 h|.
long word_metric(const Word& g, const Word& h);

/// The unique geodesic from g to h, i.e. the reduced word g^-1 h.
Word geodesic(const Word& g, const Word& h);

/// Folded core graph of a finitely generated subgroup. Vertex 0 is the base;
/// vertices are numbered by BFS from the base, visiting out-edges by label
/// and then in-edges by label. Edges are (source, target, label >= 1).
struct CoreGraph {
  int rank = 1;
  int vertices = 1;
  std::vector<std::array<int, 3>> edges;

  /// Endpoint of the edge leaving v along `letter` (an in-edge when the
  /// letter is negative), or -1.
  int follow(int v, Letter letter) const;

  friend bool operator==(const CoreGraph&, const CoreGraph&) = default;
};

/// Wedge of loops labelled by the (reduced) generators, folded to a fixpoint
/// and pruned of hanging trees.
CoreGraph fold(const std::vector<Word>& Y, int rank);

/// h traces a closed path at the base.
bool member(const Word& h, const CoreGraph& graph);
bool member(const Word& h, const std::vector<Word>& Y);

/// |Y| == rank and the core graph is a single vertex with one loop per label.
bool is_free_basis(const std::vector<Word>& Y, int rank);

enum class ProbeStatus { Satisfied, ViolatedAt, Inconclusive };

struct ProbeResult {
  ProbeStatus status = ProbeStatus::Satisfied;
  std::optional<Word> witness;  // shortlex-smallest violation
};

/// Elements of <Y> of length <= radius, read off as reduced closed paths.
/// Returns nothing when there are more than `cap` of them.
std::optional<std::vector<Word>> subgroup_ball(const CoreGraph& graph, int radius, std::size_t cap);

inline constexpr std::size_t kDefaultProbeCap = 200'000;

/// For every h in <Y> with |h| <= radius, every prefix of the geodesic from
/// 1 to h lies within distance k of <Y>. A bounded probe, not a proof.
ProbeResult quasiconvexity_probe(const std::vector<Word>& Y, int rank, int k, int radius,
                                 std::size_t cap = kDefaultProbeCap);

/// No g outside <Y> with |g| <= radius conjugates a nontrivial h in <Y>
/// with |h| <= radius back into <Y>. Bounded probe.
ProbeResult malnormality_probe(const std::vector<Word>& Y, int rank, int radius,
                               std::size_t cap = kDefaultProbeCap);

}  // namespace freering
