#include "freering/geometry.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

#include "freering/error.hpp"

namespace freering {

long word_metric(const Word& g, const Word& h) {
  return static_cast<long>((g.inverse() * h).length());
}

Word geodesic(const Word& g, const Word& h) { return g.inverse() * h; }

int CoreGraph::follow(int v, Letter letter) const {
  const int label = letter > 0 ? letter : -letter;
  for (const auto& e : edges) {
    if (e[2] != label) continue;
    if (letter > 0 && e[0] == v) return e[1];
    if (letter < 0 && e[1] == v) return e[0];
  }
  return -1;
}

namespace {

struct UnionFind {
  std::vector<int> parent;

  int add() {
    parent.push_back(static_cast<int>(parent.size()));
    return parent.back();
  }
  int find(int v) {
    while (parent[static_cast<std::size_t>(v)] != v) {
      parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
      v = parent[static_cast<std::size_t>(v)];
    }
    return v;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    // Keep the smaller id as the root so the base stays 0.
    if (b < a) std::swap(a, b);
    parent[static_cast<std::size_t>(b)] = a;
    return true;
  }
};

using Edge = std::array<int, 3>;

}  // namespace

CoreGraph fold(const std::vector<Word>& Y, int rank) {
  if (rank < 1) throw Error(ErrorKind::Precondition, "rank must be positive");
  UnionFind uf;
  uf.add();
  std::vector<Edge> edges;
  for (const auto& y : Y) {
    check_same_rank(rank, y.rank());
    const auto& l = y.letters();
    int cur = 0;
    for (std::size_t j = 0; j < l.size(); ++j) {
      const int next = j + 1 == l.size() ? 0 : uf.add();
      if (l[j] > 0) {
        edges.push_back({cur, next, l[j]});
      } else {
        edges.push_back({next, cur, -l[j]});
      }
      cur = next;
    }
  }

  // Identify edges sharing a start (or an end) and a label until none remain.
  bool changed = true;
  while (changed) {
    changed = false;
    std::set<Edge> canon;
    for (auto& e : edges) canon.insert({uf.find(e[0]), uf.find(e[1]), e[2]});
    edges.assign(canon.begin(), canon.end());
    std::map<std::pair<int, int>, int> out;
    std::map<std::pair<int, int>, int> in;
    for (const auto& e : edges) {
      auto [o, fresh_o] = out.try_emplace({uf.find(e[0]), e[2]}, e[1]);
      if (!fresh_o) changed |= uf.unite(o->second, e[1]);
      auto [i, fresh_i] = in.try_emplace({uf.find(e[1]), e[2]}, e[0]);
      if (!fresh_i) changed |= uf.unite(i->second, e[0]);
    }
  }
  for (auto& e : edges) e = {uf.find(e[0]), uf.find(e[1]), e[2]};

  // Prune hanging trees.
  std::map<int, int> degree;
  for (const auto& e : edges) {
    ++degree[e[0]];
    ++degree[e[1]];
  }
  std::vector<bool> alive(edges.size(), true);
  bool pruned = true;
  while (pruned) {
    pruned = false;
    for (std::size_t k = 0; k < edges.size(); ++k) {
      if (!alive[k]) continue;
      const auto& e = edges[k];
      for (int v : {e[0], e[1]}) {
        if (v != 0 && degree[v] == 1) {
          alive[k] = false;
          --degree[e[0]];
          --degree[e[1]];
          pruned = true;
          break;
        }
      }
    }
  }
  std::vector<Edge> kept;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    if (alive[k]) kept.push_back(edges[k]);
  }

  // Canonical BFS numbering.
  std::map<int, std::map<int, int>> out_adj;
  std::map<int, std::map<int, int>> in_adj;
  for (const auto& e : kept) {
    out_adj[e[0]][e[2]] = e[1];
    in_adj[e[1]][e[2]] = e[0];
  }
  std::map<int, int> number{{0, 0}};
  std::deque<int> queue{0};
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (const auto* adj : {&out_adj, &in_adj}) {
      auto it = adj->find(v);
      if (it == adj->end()) continue;
      for (const auto& [label, w] : it->second) {
        if (number.try_emplace(w, static_cast<int>(number.size())).second) queue.push_back(w);
      }
    }
  }
  CoreGraph g;
  g.rank = rank;
  g.vertices = static_cast<int>(number.size());
  for (const auto& e : kept) g.edges.push_back({number.at(e[0]), number.at(e[1]), e[2]});
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

bool member(const Word& h, const CoreGraph& graph) {
  check_same_rank(h.rank(), graph.rank);
  int v = 0;
  for (Letter l : h.letters()) {
    v = graph.follow(v, l);
    if (v < 0) return false;
  }
  return v == 0;
}

bool member(const Word& h, const std::vector<Word>& Y) { return member(h, fold(Y, h.rank())); }

bool is_free_basis(const std::vector<Word>& Y, int rank) {
  if (static_cast<int>(Y.size()) != rank) return false;
  const CoreGraph g = fold(Y, rank);
  if (g.vertices != 1 || static_cast<int>(g.edges.size()) != rank) return false;
  for (int label = 1; label <= rank; ++label) {
    if (g.follow(0, label) != 0) return false;
  }
  return true;
}

std::optional<std::vector<Word>> subgroup_ball(const CoreGraph& graph, int radius, std::size_t cap) {
  std::vector<Word> out;
  std::vector<Letter> path;
  bool overflow = false;
  // Reduced paths are exactly the paths that never step back along the letter just read.
  auto walk = [&](auto&& self, int v) -> void {
    if (overflow) return;
    if (v == 0) {
      out.push_back(Word::reduce(path, graph.rank));
      if (out.size() > cap) {
        overflow = true;
        return;
      }
    }
    if (static_cast<int>(path.size()) == radius) return;
    for (const auto& e : graph.edges) {
      for (const auto& [from, to, letter] :
           {std::tuple{e[0], e[1], e[2]}, std::tuple{e[1], e[0], -e[2]}}) {
        if (from != v || (!path.empty() && path.back() == -letter)) continue;
        path.push_back(letter);
        self(self, to);
        path.pop_back();
      }
    }
  };
  walk(walk, 0);
  if (overflow) return std::nullopt;
  std::sort(out.begin(), out.end(), ShortLex{});
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ProbeResult quasiconvexity_probe(const std::vector<Word>& Y, int rank, int k, int radius,
                                 std::size_t cap) {
  if (k < 0 || radius < 0) throw Error(ErrorKind::Precondition, "k and radius must be nonnegative");
  const CoreGraph graph = fold(Y, rank);
  const auto elements = subgroup_ball(graph, radius, cap);
  if (!elements) return {ProbeStatus::Inconclusive, std::nullopt};
  const std::vector<Word> nearby = ball(rank, k);
  for (const auto& h : *elements) {
    const auto& l = h.letters();
    for (std::size_t j = 1; j < l.size(); ++j) {
      const Word p = Word::reduce(std::span<const Letter>(l.data(), j), rank);
      const bool close = std::any_of(nearby.begin(), nearby.end(),
                                     [&](const Word& s) { return member(p * s, graph); });
      if (!close) return {ProbeStatus::ViolatedAt, h};
    }
  }
  return {ProbeStatus::Satisfied, std::nullopt};
}

ProbeResult malnormality_probe(const std::vector<Word>& Y, int rank, int radius, std::size_t cap) {
  if (radius < 0) throw Error(ErrorKind::Precondition, "radius must be nonnegative");
  const CoreGraph graph = fold(Y, rank);
  auto elements = subgroup_ball(graph, radius, cap);
  if (!elements) return {ProbeStatus::Inconclusive, std::nullopt};
  elements->erase(elements->begin());  // the identity
  double count = 1;
  double sphere_size = 2.0 * rank;
  for (int j = 1; j <= radius; ++j, sphere_size *= 2.0 * rank - 1) count += sphere_size;
  if (count > static_cast<double>(cap)) return {ProbeStatus::Inconclusive, std::nullopt};
  const std::vector<Word> candidates = ball(rank, radius);
  for (const auto& g : candidates) {
    if (member(g, graph)) continue;
    const Word ginv = g.inverse();
    for (const auto& h : *elements) {
      if (member(g * h * ginv, graph)) return {ProbeStatus::ViolatedAt, g};
    }
  }
  return {ProbeStatus::Satisfied, std::nullopt};
}

}  // namespace freering
