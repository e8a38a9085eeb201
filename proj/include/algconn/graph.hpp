#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace algconn {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

inline constexpr int kMaxVertices = 4096;

/// Immutable simple undirected graph stored as n adjacency bit rows.
///
/// Rows are `words_per_row()` 64-bit words wide; bit j of row i is set iff
/// {i, j} is an edge. Symmetry and loop-freeness hold for every instance.
class Graph {
public:
  Graph() = default;

  /// Builds a graph from an edge list; duplicate pairs collapse.
  static Graph from_edges(int n, std::span<const Edge> edges) {
    Graph g(n);
    for (auto [i, j] : edges) {
      if (i < 0 || j < 0 || i >= n || j >= n)
        throw std::out_of_range("edge (" + std::to_string(i) + "," + std::to_string(j) +
                                ") out of range for n=" + std::to_string(n));
      if (i == j) throw std::invalid_argument("self-loop at vertex " + std::to_string(i));
      g.set_edge(i, j);
    }
    return g;
  }
  static Graph from_edges(int n, std::initializer_list<Edge> edges) {
    return from_edges(n, std::span<const Edge>(edges.begin(), edges.size()));
  }
  static Graph empty(int n) { return Graph(n); }

  int n() const { return n_; }
  int m() const { return m_; }
  int words_per_row() const { return words_; }

  bool has_edge(Vertex i, Vertex j) const {
    return (row(i)[static_cast<std::size_t>(j) >> 6] >> (j & 63)) & 1U;
  }
  std::span<const std::uint64_t> row(Vertex i) const {
    return {bits_.data() + static_cast<std::size_t>(i) * words_, static_cast<std::size_t>(words_)};
  }
  int degree(Vertex i) const {
    int d = 0;
    for (auto w : row(i)) d += std::popcount(w);
    return d;
  }
  std::vector<Vertex> neighbors(Vertex i) const {
    std::vector<Vertex> out;
    auto r = row(i);
    for (int w = 0; w < words_; ++w)
      for (auto bits = r[w]; bits; bits &= bits - 1)
        out.push_back(w * 64 + std::countr_zero(bits));
    return out;
  }
  /// Edges (i, j) with i < j in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(static_cast<std::size_t>(m_));
    for (int i = 0; i < n_; ++i)
      for (int j : neighbors(i))
        if (i < j) out.emplace_back(i, j);
    return out;
  }

  /// Copy with edge {i, j} added (no-op if present).
  Graph with_edge(Vertex i, Vertex j) const {
    if (i == j) throw std::invalid_argument("self-loop at vertex " + std::to_string(i));
    Graph g = *this;
    g.set_edge(i, j);
    return g;
  }
  Graph without_edge(Vertex i, Vertex j) const {
    Graph g = *this;
    g.clear_edge(i, j);
    return g;
  }

  /// Relabels vertex v as perm[v].
  Graph permuted(std::span<const int> perm) const {
    if (static_cast<int>(perm.size()) != n_) throw std::invalid_argument("permutation size mismatch");
    Graph g(n_);
    for (auto [i, j] : edges()) g.set_edge(perm[i], perm[j]);
    return g;
  }

  /// Subgraph induced by `keep`; vertex keep[k] becomes k.
  Graph induced(std::span<const Vertex> keep) const {
    Graph g(static_cast<int>(keep.size()));
    for (std::size_t a = 0; a < keep.size(); ++a)
      for (std::size_t b = a + 1; b < keep.size(); ++b)
        if (has_edge(keep[a], keep[b])) g.set_edge(static_cast<int>(a), static_cast<int>(b));
    return g;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.bits_ == b.bits_;
  }

  // Mutation is reserved for builders in this library; public instances stay immutable
  // because every exposed operation returns a new Graph.
  class Builder;

private:
  explicit Graph(int n) : n_(n), words_((n + 63) / 64) {
    if (n < 0 || n > kMaxVertices)
      throw std::out_of_range("vertex count " + std::to_string(n) + " outside [0, 4096]");
    bits_.assign(static_cast<std::size_t>(n) * words_, 0);
  }
  std::uint64_t& word(Vertex i, Vertex j) {
    return bits_[static_cast<std::size_t>(i) * words_ + (static_cast<std::size_t>(j) >> 6)];
  }
  void set_edge(Vertex i, Vertex j) {
    if (has_edge(i, j)) return;
    word(i, j) |= std::uint64_t{1} << (j & 63);
    word(j, i) |= std::uint64_t{1} << (i & 63);
    ++m_;
  }
  void clear_edge(Vertex i, Vertex j) {
    if (!has_edge(i, j)) return;
    word(i, j) &= ~(std::uint64_t{1} << (j & 63));
    word(j, i) &= ~(std::uint64_t{1} << (i & 63));
    --m_;
  }

  int n_ = 0;
  int words_ = 0;
  int m_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// In-place edge accumulation for generators that add and remove edges in a loop.
class Graph::Builder {
public:
  explicit Builder(int n) : g_(n) {}
  explicit Builder(Graph g) : g_(std::move(g)) {}
  void add(Vertex i, Vertex j) {
    if (i == j) throw std::invalid_argument("self-loop at vertex " + std::to_string(i));
    g_.set_edge(i, j);
  }
  void remove(Vertex i, Vertex j) { g_.clear_edge(i, j); }
  const Graph& view() const { return g_; }
  Graph build() const { return g_; }

private:
  Graph g_;
};

/// Breadth-first distances from `source`; -1 marks unreachable vertices.
inline std::vector<int> bfs_distances(const Graph& g, Vertex source) {
  std::vector<int> dist(static_cast<std::size_t>(g.n()), -1);
  std::vector<Vertex> queue{source};
  dist[source] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Vertex v = queue[head];
    for (Vertex w : g.neighbors(v))
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
  }
  return dist;
}

/// Connected components as sorted vertex lists, ordered by smallest member.
inline std::vector<std::vector<Vertex>> components(const Graph& g) {
  std::vector<int> comp(static_cast<std::size_t>(g.n()), -1);
  std::vector<std::vector<Vertex>> out;
  for (Vertex s = 0; s < g.n(); ++s) {
    if (comp[s] >= 0) continue;
    std::vector<Vertex> members{s};
    comp[s] = static_cast<int>(out.size());
    for (std::size_t head = 0; head < members.size(); ++head)
      for (Vertex w : g.neighbors(members[head]))
        if (comp[w] < 0) {
          comp[w] = comp[s];
          members.push_back(w);
        }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

inline bool is_connected(const Graph& g) { return g.n() <= 1 || components(g).size() == 1; }

inline bool is_tree(const Graph& g) { return g.n() >= 1 && g.m() == g.n() - 1 && is_connected(g); }

inline std::vector<int> degree_sequence(const Graph& g) {
  std::vector<int> d(static_cast<std::size_t>(g.n()));
  for (Vertex v = 0; v < g.n(); ++v) d[v] = g.degree(v);
  std::sort(d.begin(), d.end());
  return d;
}

inline int max_degree(const Graph& g) {
  int d = 0;
  for (Vertex v = 0; v < g.n(); ++v) d = std::max(d, g.degree(v));
  return d;
}

inline int min_degree(const Graph& g) {
  if (g.n() == 0) return 0;
  int d = g.n();
  for (Vertex v = 0; v < g.n(); ++v) d = std::min(d, g.degree(v));
  return d;
}

inline bool is_regular(const Graph& g, int d) {
  for (Vertex v = 0; v < g.n(); ++v)
    if (g.degree(v) != d) return false;
  return true;
}

/// Length of the shortest cycle, or nullopt for forests.
///
/// One BFS per vertex; a non-tree edge (v, w) seen from root s closes a
/// closed walk of length dist[v] + dist[w] + 1 through s, and the minimum
/// over all roots is the girth.
inline std::optional<int> girth(const Graph& g) {
  int best = 0;
  std::vector<int> dist(static_cast<std::size_t>(g.n()));
  std::vector<int> parent(static_cast<std::size_t>(g.n()));
  std::vector<Vertex> queue;
  for (Vertex s = 0; s < g.n(); ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    queue.assign(1, s);
    dist[s] = 0;
    parent[s] = -1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      Vertex v = queue[head];
      if (best && 2 * dist[v] + 1 >= best) break;
      for (Vertex w : g.neighbors(v)) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          parent[w] = v;
          queue.push_back(w);
        } else if (w != parent[v]) {
          int len = dist[v] + dist[w] + 1;
          if (!best || len < best) best = len;
        }
      }
    }
  }
  if (!best) return std::nullopt;
  return best;
}

/// Largest shortest-path distance; throws for disconnected input.
inline int diameter(const Graph& g) {
  int d = 0;
  for (Vertex s = 0; s < g.n(); ++s) {
    auto dist = bfs_distances(g, s);
    for (int x : dist) {
      if (x < 0) throw std::domain_error("diameter of a disconnected graph");
      d = std::max(d, x);
    }
  }
  return d;
}

/// Sizes of the components of g - v, descending.
inline std::vector<int> component_sizes_without(const Graph& g, Vertex v) {
  std::vector<Vertex> keep;
  keep.reserve(static_cast<std::size_t>(g.n()) - 1);
  for (Vertex u = 0; u < g.n(); ++u)
    if (u != v) keep.push_back(u);
  std::vector<int> sizes;
  for (const auto& c : components(g.induced(keep))) sizes.push_back(static_cast<int>(c.size()));
  std::sort(sizes.rbegin(), sizes.rend());
  return sizes;
}

}  // namespace algconn
