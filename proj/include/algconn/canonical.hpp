#pragma once

// Canonical labeling by partition refinement and individualization.
//
// The search tree follows the usual scheme: refine the ordered vertex
// partition to an equitable one, individualize each vertex of the first
// non-singleton cell in turn, and recurse until the partition is discrete.
// Each leaf is a labeling; the canonical one maximizes the pair
// (node invariants along the path, relabeled adjacency rows). Subtrees are
// skipped when their invariant already loses to the best leaf, when an
// automorphism found so far maps them onto an explored sibling, or when a
// leaf matching the first leaf shows the whole subtree is an image of the
// first path.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "algconn/graph.hpp"
#include "algconn/graph6.hpp"

namespace algconn {

inline constexpr int kMaxCanonicalVertices = 64;

struct CanonicalForm {
  std::string bytes;    ///< graph6 of the canonically relabeled graph (plus colors, if any)
  int orbit_count = 0;  ///< number of vertex orbits under the automorphism group

  friend bool operator==(const CanonicalForm& a, const CanonicalForm& b) { return a.bytes == b.bytes; }
  friend auto operator<=>(const CanonicalForm& a, const CanonicalForm& b) { return a.bytes <=> b.bytes; }
};

struct CanonicalLabeling {
  std::vector<int> label;                    ///< vertex -> canonical position
  std::vector<std::vector<int>> generators;  ///< automorphisms found during the search
  std::vector<int> orbit;                    ///< smallest vertex of each vertex's orbit
  int orbit_count = 0;
};

namespace detail {

class CanonSearch {
public:
  CanonSearch(const Graph& g, std::span<const int> colors) : n_(g.n()) {
    if (n_ > kMaxCanonicalVertices)
      throw std::length_error("canonical form supports at most 64 vertices, got " + std::to_string(n_));
    for (int v = 0; v < n_; ++v) adj_[v] = n_ ? g.row(v)[0] : 0;
    initial_.assign(static_cast<std::size_t>(n_), 0);
    if (!colors.empty()) {
      if (static_cast<int>(colors.size()) != n_) throw std::invalid_argument("color vector size mismatch");
      std::vector<int> values(colors.begin(), colors.end());
      std::sort(values.begin(), values.end());
      values.erase(std::unique(values.begin(), values.end()), values.end());
      for (int v = 0; v < n_; ++v)
        initial_[v] = static_cast<int>(std::lower_bound(values.begin(), values.end(), colors[v]) - values.begin());
    }
  }

  CanonicalLabeling run() {
    CanonicalLabeling out;
    if (n_ == 0) return out;
    std::vector<int> colors = initial_;
    int k = 0;
    for (int c : colors) k = std::max(k, c + 1);
    search(colors, k, 0, Cmp::Greater, true);

    out.label = best_.label;
    out.generators = generators_;
    std::vector<int> parent(static_cast<std::size_t>(n_));
    std::iota(parent.begin(), parent.end(), 0);
    for (const auto& gen : generators_)
      for (int v = 0; v < n_; ++v) unite(parent, v, gen[v]);
    out.orbit.resize(static_cast<std::size_t>(n_));
    for (int v = 0; v < n_; ++v) {
      out.orbit[v] = find(parent, v);
      if (out.orbit[v] == v) ++out.orbit_count;
    }
    return out;
  }

private:
  struct Inv {
    int cells = 0;
    std::uint64_t hash = 0;
    friend auto operator<=>(const Inv&, const Inv&) = default;
  };
  enum class Cmp { Less, Equal, Greater };
  struct Leaf {
    bool set = false;
    std::vector<Inv> invs;
    std::array<std::uint64_t, kMaxCanonicalVertices> cert{};
    std::vector<int> label;
    std::vector<int> path;
  };

  static int find(std::vector<int>& p, int v) {
    while (p[v] != v) v = p[v] = p[p[v]];
    return v;
  }
  static void unite(std::vector<int>& p, int a, int b) {
    a = find(p, a);
    b = find(p, b);
    if (a != b) p[std::max(a, b)] = std::min(a, b);
  }

  static std::uint64_t mix(std::uint64_t h, std::uint64_t x) {
    h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h * 0xff51afd7ed558ccdULL;
  }

  // Refines `colors` (ranks 0..k-1) to the coarsest equitable refinement,
  // splitting cells in an order that depends only on neighbor counts.
  Inv refine(std::vector<int>& colors, int& k) const {
    std::vector<int> order(static_cast<std::size_t>(n_));
    std::vector<std::uint8_t> keys;
    std::array<std::uint64_t, kMaxCanonicalVertices> mask{};
    int stride = 0;
    while (true) {
      std::fill(mask.begin(), mask.begin() + k, 0);
      for (int v = 0; v < n_; ++v) mask[colors[v]] |= std::uint64_t{1} << v;
      stride = k + 1;
      keys.assign(static_cast<std::size_t>(n_) * stride, 0);
      for (int v = 0; v < n_; ++v) {
        std::uint8_t* key = &keys[static_cast<std::size_t>(v) * stride];
        key[0] = static_cast<std::uint8_t>(colors[v]);
        for (int c = 0; c < k; ++c) key[c + 1] = static_cast<std::uint8_t>(std::popcount(adj_[v] & mask[c]));
      }
      std::iota(order.begin(), order.end(), 0);
      auto less = [&](int a, int b) {
        return std::lexicographical_compare(&keys[static_cast<std::size_t>(a) * stride],
                                            &keys[static_cast<std::size_t>(a) * stride] + stride,
                                            &keys[static_cast<std::size_t>(b) * stride],
                                            &keys[static_cast<std::size_t>(b) * stride] + stride);
      };
      std::sort(order.begin(), order.end(), less);
      int next = 0;
      for (int i = 0; i < n_; ++i) {
        if (i > 0 && less(order[i - 1], order[i])) ++next;
        colors[order[i]] = next;
      }
      int new_k = next + 1;
      if (new_k == k) break;
      k = new_k;
    }
    Inv inv{k, static_cast<std::uint64_t>(k)};
    for (int i = 0; i < n_; ++i) {
      if (i > 0 && colors[order[i]] == colors[order[i - 1]]) {
        inv.hash = mix(inv.hash, 1);
        continue;
      }
      const std::uint8_t* key = &keys[static_cast<std::size_t>(order[i]) * stride];
      for (int c = 0; c < stride; ++c) inv.hash = mix(inv.hash, key[c]);
    }
    return inv;
  }

  void make_leaf(const std::vector<int>& colors, Leaf& leaf) const {
    leaf.label = colors;
    leaf.cert.fill(0);
    for (int v = 0; v < n_; ++v) {
      std::uint64_t row = 0;
      for (auto bits = adj_[v]; bits; bits &= bits - 1) row |= std::uint64_t{1} << colors[std::countr_zero(bits)];
      leaf.cert[colors[v]] = row;
    }
  }

  void add_automorphism(const std::vector<int>& from, const std::vector<int>& to) {
    // from[v] and to[v] are positions; both labelings give the same graph.
    std::vector<int> inv_from(static_cast<std::size_t>(n_));
    for (int v = 0; v < n_; ++v) inv_from[from[v]] = v;
    std::vector<int> gamma(static_cast<std::size_t>(n_));
    bool identity = true;
    for (int v = 0; v < n_; ++v) {
      gamma[v] = inv_from[to[v]];
      identity &= gamma[v] == v;
    }
    if (!identity) generators_.push_back(std::move(gamma));
  }

  // Orbits of the group generated by the known automorphisms that fix the
  // current path pointwise.
  std::vector<int> orbits_fixing_prefix() const {
    std::vector<int> parent(static_cast<std::size_t>(n_));
    std::iota(parent.begin(), parent.end(), 0);
    for (const auto& gen : generators_) {
      bool fixes = true;
      for (int p : path_)
        if (gen[p] != p) {
          fixes = false;
          break;
        }
      if (!fixes) continue;
      for (int v = 0; v < n_; ++v) unite(parent, v, gen[v]);
    }
    for (int v = 0; v < n_; ++v) find(parent, v);
    return parent;
  }

  static Cmp compare_at(const Leaf& leaf, std::size_t depth, const Inv& inv, Cmp prior) {
    if (prior != Cmp::Equal) return prior;
    if (depth >= leaf.invs.size()) return Cmp::Greater;
    if (inv < leaf.invs[depth]) return Cmp::Less;
    if (leaf.invs[depth] < inv) return Cmp::Greater;
    return Cmp::Equal;
  }

  void search(std::vector<int> colors, int k, std::size_t depth, Cmp vs_best, bool eq_first) {
    Inv inv = refine(colors, k);
    invs_.resize(depth);
    invs_.push_back(inv);
    if (best_.set) vs_best = compare_at(best_, depth, inv, vs_best);
    if (first_.set && eq_first) eq_first = compare_at(first_, depth, inv, Cmp::Equal) == Cmp::Equal;
    if (best_.set && vs_best == Cmp::Less && !eq_first) return;

    if (k == n_) {
      Leaf leaf;
      make_leaf(colors, leaf);
      if (!first_.set) {
        leaf.set = true;
        leaf.invs = invs_;
        leaf.path = path_;
        first_ = leaf;
        best_ = leaf;
        ++best_version_;
        return;
      }
      if (eq_first && leaf.cert == first_.cert) {
        add_automorphism(first_.label, leaf.label);
        std::size_t diverge = 0;
        while (diverge < path_.size() && path_[diverge] == first_.path[diverge]) ++diverge;
        jump_to_ = diverge;
        return;
      }
      if (vs_best == Cmp::Greater || (vs_best == Cmp::Equal && leaf.cert > best_.cert)) {
        leaf.set = true;
        leaf.invs = invs_;
        leaf.path = path_;
        best_ = std::move(leaf);
        ++best_version_;
      } else if (vs_best == Cmp::Equal && leaf.cert == best_.cert) {
        add_automorphism(best_.label, leaf.label);
      }
      return;
    }

    int target = 0;
    std::vector<int> cell_size(static_cast<std::size_t>(k), 0);
    for (int v = 0; v < n_; ++v) ++cell_size[colors[v]];
    while (cell_size[target] == 1) ++target;
    std::vector<int> explored;
    for (int w = 0; w < n_; ++w) {
      if (colors[w] != target) continue;
      if (!explored.empty() && !generators_.empty()) {
        auto orbit = orbits_fixing_prefix();
        if (std::any_of(explored.begin(), explored.end(), [&](int u) { return orbit[u] == orbit[w]; })) continue;
      }
      explored.push_back(w);

      std::vector<int> child = colors;
      for (int v = 0; v < n_; ++v)
        if (child[v] > target || (child[v] == target && v != w)) ++child[v];
      const auto version = best_version_;
      path_.push_back(w);
      search(std::move(child), k + 1, depth + 1, vs_best, eq_first);
      path_.pop_back();
      if (best_version_ != version) vs_best = Cmp::Equal;
      if (jump_to_ != kNoJump) {
        if (jump_to_ < depth) return;
        jump_to_ = kNoJump;
      }
    }
  }

  static constexpr std::size_t kNoJump = static_cast<std::size_t>(-1);

  int n_;
  std::array<std::uint64_t, kMaxCanonicalVertices> adj_{};
  std::vector<int> initial_;
  std::vector<Inv> invs_;
  std::vector<int> path_;
  Leaf first_;
  Leaf best_;
  std::uint64_t best_version_ = 0;
  std::size_t jump_to_ = kNoJump;
  std::vector<std::vector<int>> generators_;
};

}  // namespace detail

/// Canonical labeling of g, optionally respecting an initial vertex coloring
/// (color values only matter through their order).
inline CanonicalLabeling canonical_labeling(const Graph& g, std::span<const int> colors = {}) {
  return detail::CanonSearch(g, colors).run();
}

inline Graph canonical_graph(const Graph& g) {
  if (g.n() == 0) return g;
  return g.permuted(canonical_labeling(g).label);
}

inline CanonicalForm canonical_form(const Graph& g, std::span<const int> colors = {}) {
  if (g.n() == 0) throw std::invalid_argument("canonical form of a graph with no vertices");
  auto lab = canonical_labeling(g, colors);
  CanonicalForm out{graph6_encode(g.permuted(lab.label)), lab.orbit_count};
  if (!colors.empty()) {
    std::vector<int> ranks(colors.begin(), colors.end());
    std::sort(ranks.begin(), ranks.end());
    ranks.erase(std::unique(ranks.begin(), ranks.end()), ranks.end());
    std::vector<int> by_position(colors.size());
    for (std::size_t v = 0; v < colors.size(); ++v)
      by_position[lab.label[v]] =
          static_cast<int>(std::lower_bound(ranks.begin(), ranks.end(), colors[v]) - ranks.begin());
    out.bytes.push_back('|');
    for (int c : by_position) out.bytes += std::to_string(c) + ",";
  }
  return out;
}

inline bool are_isomorphic(const Graph& a, const Graph& b) {
  if (a.n() != b.n() || a.m() != b.m()) return false;
  if (degree_sequence(a) != degree_sequence(b)) return false;
  return canonical_form(a) == canonical_form(b);
}

}  // namespace algconn
