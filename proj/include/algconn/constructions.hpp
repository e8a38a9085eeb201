#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "algconn/graph.hpp"
#include "algconn/graph6.hpp"

namespace algconn {

/// Star on n vertices; vertex 0 is the center.
inline Graph star(int n) {
  if (n < 2) throw std::invalid_argument("star needs n >= 2");
  Graph::Builder b(n);
  for (int v = 1; v < n; ++v) b.add(0, v);
  return b.build();
}

inline Graph path(int n) {
  if (n < 2) throw std::invalid_argument("path needs n >= 2");
  Graph::Builder b(n);
  for (int v = 0; v + 1 < n; ++v) b.add(v, v + 1);
  return b.build();
}

inline Graph cycle(int n) {
  if (n < 3) throw std::invalid_argument("cycle needs n >= 3");
  Graph::Builder b(n);
  for (int v = 0; v < n; ++v) b.add(v, (v + 1) % n);
  return b.build();
}

inline Graph complete(int n) {
  if (n < 1) throw std::invalid_argument("complete graph needs n >= 1");
  Graph::Builder b(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) b.add(i, j);
  return b.build();
}

/// K_{a,b} with parts {0..a-1} and {a..a+b-1}.
inline Graph complete_bipartite(int a, int b) {
  if (a < 1 || b < 1) throw std::invalid_argument("complete bipartite graph needs parts of size >= 1");
  Graph::Builder g(a + b);
  for (int i = 0; i < a; ++i)
    for (int j = a; j < a + b; ++j) g.add(i, j);
  return g.build();
}

/// Vertex count (d (d-1)^K - 2) / (d - 2) of the Bethe tree with root degree d and depth K.
inline long bethe_tree_order(int d, int K) {
  if (d < 3 || K < 1) throw std::invalid_argument("Bethe tree needs d >= 3 and K >= 1");
  long n = 1, level = d;
  for (int k = 1; k <= K; ++k) {
    n += level;
    level *= d - 1;
    if (n > kMaxVertices) throw std::invalid_argument("Bethe tree exceeds 4096 vertices");
  }
  return n;
}

/// Maximally balanced tree: root degree d, internal degree d, all leaves at depth K.
/// Vertices are numbered breadth-first from the root (vertex 0).
inline Graph bethe_tree(int d, int K) {
  const int n = static_cast<int>(bethe_tree_order(d, K));
  Graph::Builder b(n);
  int next = 1;
  std::vector<int> frontier{0};
  for (int level = 0; level < K; ++level) {
    std::vector<int> children;
    for (int v : frontier)
      for (int c = 0; c < (v == 0 ? d : d - 1); ++c) {
        b.add(v, next);
        children.push_back(next++);
      }
    frontier = std::move(children);
  }
  return b.build();
}

/// Two complete binary trees with K levels each (2^K - 1 vertices) whose roots are joined.
/// Tree A occupies 0..2^K-2 in heap order, tree B the rest; roots are 0 and 2^K - 1.
inline Graph double_binary_tree(int K) {
  if (K < 1 || K > 11) throw std::invalid_argument("double binary tree needs 1 <= K <= 11");
  const int half = (1 << K) - 1;
  Graph::Builder b(2 * half);
  for (int offset : {0, half})
    for (int v = 1; v < half; ++v) b.add(offset + v, offset + (v - 1) / 2);
  b.add(0, half);
  return b.build();
}

struct NamedGraphEntry {
  std::string name;
  std::string graph6;
  int n;
  int m;
  std::optional<int> girth;
  bool is_cubic;
};

namespace detail {

inline const std::vector<NamedGraphEntry>& named_entries() {
  static const std::vector<NamedGraphEntry> entries{
      {"petersen", "IheA@GUAo", 10, 15, 5, true},
      {"heawood", "MhEGHC@AI?_PC@_G_", 14, 21, 6, true},
      {"tutte_coxeter",
       "]hCGGC@GG?_@?@A?_?G@@??E??GG?G?OC??@??GI???_O?@?@?@??A?a???G??@@?O??E?A??G", 30, 45, 8, true},
  };
  return entries;
}

inline void check_entry(const NamedGraphEntry& e, const Graph& g) {
  if (g.n() != e.n || g.m() != e.m || girth(g) != e.girth || is_regular(g, 3) != e.is_cubic)
    throw std::logic_error("named graph '" + e.name + "' fails its metadata check");
}

inline const std::map<std::string, Graph>& named_registry() {
  static const std::map<std::string, Graph> registry = [] {
    std::map<std::string, Graph> out;
    for (const auto& e : named_entries()) {
      Graph g = graph6_decode(e.graph6);
      check_entry(e, g);
      out.emplace(e.name, std::move(g));
    }
    return out;
  }();
  return registry;
}

}  // namespace detail

inline const std::vector<NamedGraphEntry>& named_graph_entries() { return detail::named_entries(); }

/// Embedded graphs: petersen, heawood, tutte_coxeter.
inline Graph named(const std::string& name) {
  const auto& reg = detail::named_registry();
  auto it = reg.find(name);
  if (it == reg.end()) throw std::invalid_argument("unknown named graph '" + name + "'");
  return it->second;
}

/// Random d-regular simple graph from the pairing model.
///
/// Points are matched one pair at a time, drawing the partner uniformly from
/// the points that would not create a loop or a repeated edge; a full restart
/// happens only when no admissible partner is left.
inline Graph random_regular(int n, int d, std::uint64_t seed) {
  if (n < 1 || d < 0 || d >= n) throw std::invalid_argument("random regular graph needs 0 <= d < n");
  if ((static_cast<long>(n) * d) % 2) throw std::invalid_argument("n * d must be even");
  std::mt19937_64 rng(seed);
  while (true) {
    Graph::Builder b(n);
    std::vector<int> points;
    points.reserve(static_cast<std::size_t>(n) * d);
    for (int v = 0; v < n; ++v) points.insert(points.end(), static_cast<std::size_t>(d), v);
    bool stuck = false;
    std::vector<std::size_t> admissible;
    while (!points.empty()) {
      std::size_t a = std::uniform_int_distribution<std::size_t>(0, points.size() - 1)(rng);
      int u = points[a];
      admissible.clear();
      for (std::size_t i = 0; i < points.size(); ++i)
        if (points[i] != u && !b.view().has_edge(u, points[i])) admissible.push_back(i);
      if (admissible.empty()) {
        stuck = true;
        break;
      }
      std::size_t c = admissible[std::uniform_int_distribution<std::size_t>(0, admissible.size() - 1)(rng)];
      b.add(u, points[c]);
      for (std::size_t idx : {std::max(a, c), std::min(a, c)}) {
        points[idx] = points.back();
        points.pop_back();
      }
    }
    if (!stuck) return b.build();
  }
}

/// Random tree with maximum degree <= d_max, grown by attaching each new vertex
/// to a uniformly chosen vertex that still has spare degree. Not uniform over trees.
template <class Rng>
Graph random_tree(int n, int d_max, Rng& rng) {
  if (n < 1) throw std::invalid_argument("random tree needs n >= 1");
  if (d_max < 2 && n > 2) throw std::invalid_argument("random tree needs d_max >= 2");
  Graph::Builder b(n);
  std::vector<int> open{0};
  std::vector<int> deg(static_cast<std::size_t>(n), 0);
  for (int v = 1; v < n; ++v) {
    std::size_t k = std::uniform_int_distribution<std::size_t>(0, open.size() - 1)(rng);
    int u = open[k];
    b.add(u, v);
    if (++deg[u] == d_max) {
      open[k] = open.back();
      open.pop_back();
    }
    if (++deg[v] < d_max) open.push_back(v);
  }
  return b.build();
}

}  // namespace algconn
