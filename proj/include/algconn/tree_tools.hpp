#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "algconn/bounds.hpp"
#include "algconn/graph.hpp"
#include "algconn/spectral.hpp"

namespace algconn {

struct SplitResult {
  Vertex vertex = -1;
  std::vector<int> component_sizes;  ///< sizes of the subtrees of t - vertex, descending
  int steps = 0;                     ///< walk length until the 2-cycle appeared
};

namespace detail {

// For each neighbor u of c, the size of the component of t - c containing u.
inline std::vector<std::pair<Vertex, int>> branch_sizes(const Graph& t, Vertex c) {
  const int n = t.n();
  std::vector<int> parent(static_cast<std::size_t>(n), -1), order{c}, size(static_cast<std::size_t>(n), 1);
  parent[c] = c;
  for (std::size_t head = 0; head < order.size(); ++head)
    for (Vertex w : t.neighbors(order[head]))
      if (parent[w] < 0) {
        parent[w] = order[head];
        order.push_back(w);
      }
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    if (*it != c) size[parent[*it]] += size[*it];
  std::vector<std::pair<Vertex, int>> out;
  for (Vertex u : t.neighbors(c)) out.emplace_back(u, size[u]);
  return out;
}

inline void require_tree(const Graph& t) {
  if (!is_tree(t)) throw std::invalid_argument("input is not a tree");
}

}  // namespace detail

/// Walks from vertex 0 toward the largest branch (smallest index on ties)
/// until the walk alternates between two vertices v, w, then returns the one
/// whose side of edge (v, w) holds at least n/2 vertices.
inline SplitResult find_splitting_vertex(const Graph& t) {
  detail::require_tree(t);
  const int n = t.n();
  if (n < 3) throw std::invalid_argument("splitting vertex needs n >= 3");

  Vertex prev = -1, cur = 0;
  int steps = 0;
  while (true) {
    auto branches = detail::branch_sizes(t, cur);
    Vertex next = -1;
    int best = -1;
    for (auto [u, s] : branches)
      if (s > best || (s == best && u < next)) {
        best = s;
        next = u;
      }
    ++steps;
    if (next == prev) break;
    if (steps > 2 * n) throw std::logic_error("splitting walk did not settle");
    prev = cur;
    cur = next;
  }
  // Walk alternates cur <-> prev. Side of cur across edge (cur, prev):
  int prev_side = 0;
  for (auto [u, s] : detail::branch_sizes(t, cur))
    if (u == prev) prev_side = s;
  const int cur_side = n - prev_side;
  Vertex v = cur;
  if (2 * cur_side < n || (2 * cur_side == n && prev < cur)) v = prev;

  SplitResult r;
  r.vertex = v;
  r.steps = steps;
  for (auto [u, s] : detail::branch_sizes(t, v)) r.component_sizes.push_back(s);
  std::sort(r.component_sizes.rbegin(), r.component_sizes.rend());
  return r;
}

namespace detail {

struct Piece {
  Graph graph;
  Vertex root;  ///< index of the attachment vertex inside `graph`
};

// Component of g - v containing u, as an induced subgraph with u's new index.
inline Piece piece_without(const Graph& g, Vertex v, Vertex u) {
  std::vector<Vertex> keep;
  for (Vertex x = 0; x < g.n(); ++x)
    if (x != v) keep.push_back(x);
  Graph rest = g.induced(keep);
  Vertex u_rest = u < v ? u : u - 1;
  for (auto& comp : components(rest))
    if (std::binary_search(comp.begin(), comp.end(), u_rest)) {
      std::vector<Vertex> original;
      for (Vertex x : comp) original.push_back(keep[x]);
      Vertex root = static_cast<Vertex>(std::lower_bound(original.begin(), original.end(), u) - original.begin());
      return {g.induced(original), root};
    }
  throw std::logic_error("vertex not found in any component");
}

}  // namespace detail

/// max(lamtilde(G1, u), lamtilde(G2, w)) where G1, G2 are the components of
/// g - v containing the neighbors u and w of v. Upper-bounds lambda_2(g).
inline double split_spectral_bound(const Graph& g, Vertex v, Vertex u, Vertex w) {
  for (Vertex x : {v, u, w})
    if (x < 0 || x >= g.n()) throw std::out_of_range("vertex out of range");
  if (!g.has_edge(v, u) || !g.has_edge(v, w)) throw std::invalid_argument("u and w must be neighbors of v");
  std::vector<Vertex> keep;
  for (Vertex x = 0; x < g.n(); ++x)
    if (x != v) keep.push_back(x);
  auto reach = bfs_distances(g.induced(keep), u < v ? u : u - 1);
  if (reach[w < v ? w : w - 1] >= 0) throw std::invalid_argument("u and w lie in the same component of g - v");
  auto g1 = detail::piece_without(g, v, u);
  auto g2 = detail::piece_without(g, v, w);
  return std::max(modified_lambda(g1.graph, g1.root).value, modified_lambda(g2.graph, g2.root).value);
}

/// The composed tree bound: split vertex, then the test-vector quotient on the
/// two largest branches, each rooted at its neighbor of the split vertex.
struct CompositeTreeBound {
  Vertex split = -1;
  Vertex u = -1, w = -1;
  double quotient_u = 0, quotient_w = 0;
  double bound = 0;  ///< max of the two quotients
};

inline CompositeTreeBound composite_tree_bound(const Graph& t) {
  auto split = find_splitting_vertex(t);
  const int d = std::max(3, max_degree(t));
  auto branches = detail::branch_sizes(t, split.vertex);
  std::stable_sort(branches.begin(), branches.end(), [](auto a, auto b) { return a.second > b.second; });
  CompositeTreeBound out;
  out.split = split.vertex;
  out.u = branches[0].first;
  out.w = branches[1].first;
  auto quotient = [&](Vertex root) {
    auto piece = detail::piece_without(t, split.vertex, root);
    auto x = lamtilde_test_vector(piece.graph, piece.root, d);
    return modified_rayleigh_quotient(piece.graph, piece.root, x);
  };
  out.quotient_u = quotient(out.u);
  out.quotient_w = quotient(out.w);
  out.bound = std::max(out.quotient_u, out.quotient_w);
  return out;
}

struct BalanceCheck {
  bool balanced = false;
  std::optional<Vertex> witness;
};

/// True iff deleting some vertex leaves at least two subtrees with >= (n-1)/d
/// vertices, d = max degree; the witness is the first such vertex.
inline BalanceCheck is_well_balanced(const Graph& t) {
  detail::require_tree(t);
  const long d = max_degree(t);
  if (d < 3) throw std::invalid_argument("well-balanced check needs max degree >= 3");
  const long need = t.n() - 1;
  for (Vertex v = 0; v < t.n(); ++v) {
    int big = 0;
    for (auto [u, s] : detail::branch_sizes(t, v))
      if (s * d >= need) ++big;
    if (big >= 2) return {true, v};
  }
  return {};
}

}  // namespace algconn
