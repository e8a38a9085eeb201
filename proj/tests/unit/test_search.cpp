#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "algconn/bounds.hpp"
#include "algconn/canonical.hpp"
#include "algconn/constructions.hpp"
#include "algconn/search.hpp"
#include "algconn/tree_tools.hpp"
#include "oracles.hpp"

using namespace algconn;

namespace {

std::vector<Graph> collect(const Family& f) {
  std::vector<Graph> out;
  f([&](const Graph& g) {
    out.push_back(g);
    return true;
  });
  return out;
}

std::set<std::string> forms(const std::vector<Graph>& gs) {
  std::set<std::string> s;
  for (const auto& g : gs) s.insert(canonical_form(g).bytes);
  return s;
}

// Isomorphism classes of trees with max degree <= d, from every Prüfer sequence.
std::set<std::string> prufer_classes(int n, int d, bool brute) {
  std::set<std::string> out;
  std::vector<int> seq(n - 2, 0);
  while (true) {
    std::vector<int> deg(n, 1);
    for (int x : seq) ++deg[x];
    if (*std::max_element(deg.begin(), deg.end()) <= d) {
      Graph t = oracle::prufer_decode(seq, n);
      out.insert(brute ? oracle::brute_canonical(t) : canonical_form(t).bytes);
    }
    int i = 0;
    while (i < n - 2 && ++seq[i] == n) seq[i++] = 0;
    if (i == n - 2) break;
  }
  return out;
}

// Trees of order n built by hanging a leaf on every vertex of every tree of order n - 1.
std::set<std::string> leaf_extension_classes(int n_max, int d, std::vector<std::size_t>& counts) {
  std::map<std::string, Graph> level{{canonical_form(Graph::empty(1)).bytes, Graph::empty(1)}};
  counts = {0, 1};
  for (int n = 2; n <= n_max; ++n) {
    std::map<std::string, Graph> next;
    for (auto& [k, t] : level)
      for (Vertex v = 0; v < t.n(); ++v) {
        if (t.degree(v) >= d) continue;
        auto edges = t.edges();
        edges.emplace_back(v, t.n());
        Graph bigger = Graph::from_edges(t.n() + 1, edges);
        next.emplace(canonical_form(bigger).bytes, bigger);
      }
    level = std::move(next);
    counts.push_back(level.size());
  }
  std::set<std::string> out;
  for (auto& [k, t] : level) out.insert(k);
  return out;
}

// All labeled cubic graphs on n vertices: repeatedly join the smallest unfinished vertex to a later one.
// Each labeled graph is produced once: the lowest unsaturated vertex takes neighbors in increasing order.
void labeled_cubic(Graph::Builder& b, std::vector<int>& deg, int n, int prev_v, int prev_u,
                   const std::function<void(const Graph&)>& emit) {
  int v = 0;
  while (v < n && deg[v] == 3) ++v;
  if (v == n) {
    emit(b.view());
    return;
  }
  for (int u = (v == prev_v ? prev_u : v) + 1; u < n; ++u) {
    if (deg[u] == 3 || b.view().has_edge(u, v)) continue;
    b.add(v, u);
    ++deg[v];
    ++deg[u];
    labeled_cubic(b, deg, n, v, u, emit);
    b.remove(v, u);
    --deg[v];
    --deg[u];
  }
}

}  // namespace

TEST(TreeEnumeration, SmallCounts) {
  EXPECT_EQ(collect(trees_family(4, 3)).size(), 2u);
  EXPECT_EQ(collect(trees_family(1, 3)).size(), 1u);
  EXPECT_EQ(collect(trees_family(2, 3)).size(), 1u);
  EXPECT_THROW(TreeEnumerator(25, 3), std::invalid_argument);
  EXPECT_THROW(TreeEnumerator(0, 3), std::invalid_argument);
}

TEST(TreeEnumeration, MatchesPruferOracle) {
  for (int n = 3; n <= 7; ++n)
    for (int d : {2, 3, 4, n - 1}) {
      auto ours = collect(trees_family(n, d));
      std::set<std::string> brute;
      for (const auto& t : ours) brute.insert(oracle::brute_canonical(t));
      EXPECT_EQ(brute.size(), ours.size());
      EXPECT_EQ(brute, prufer_classes(n, d, true)) << n << " " << d;
    }
  auto eight = collect(trees_family(8, 3));
  EXPECT_EQ(forms(eight), prufer_classes(8, 3, false));
}

TEST(TreeEnumeration, MatchesLeafExtensionOracle) {
  std::vector<std::size_t> counts;
  auto classes = leaf_extension_classes(12, 3, counts);
  for (int n = 1; n <= 12; ++n) {
    auto ours = collect(trees_family(n, 3));
    EXPECT_EQ(ours.size(), counts[n]) << n;
    EXPECT_EQ(forms(ours).size(), ours.size());
  }
  EXPECT_EQ(counts[10], 37u);
  EXPECT_EQ(forms(collect(trees_family(12, 3))), classes);
}

TEST(TreeEnumeration, EveryOutputIsATreeWithinTheDegreeCap) {
  for (const auto& t : collect(trees_family(14, 3))) {
    EXPECT_TRUE(is_tree(t));
    EXPECT_LE(max_degree(t), 3);
  }
}

TEST(CubicEnumeration, SmallCases) {
  auto four = enumerate_cubic(4);
  ASSERT_EQ(four.size(), 1u);
  EXPECT_TRUE(are_isomorphic(four[0], complete(4)));
  EXPECT_THROW(enumerate_cubic(7), std::invalid_argument);
  EXPECT_THROW(enumerate_cubic(16), std::invalid_argument);
}

TEST(CubicEnumeration, SixVerticesMatchBitmaskOracle) {
  std::set<std::string> brute;
  for (std::uint32_t mask = 0; mask < (1u << 15); ++mask) {
    if (std::popcount(mask) != 9) continue;
    Graph g = oracle::from_mask(6, mask);
    if (is_regular(g, 3) && is_connected(g)) brute.insert(oracle::brute_canonical(g));
  }
  std::set<std::string> ours;
  for (const auto& g : enumerate_cubic(6)) ours.insert(oracle::brute_canonical(g));
  EXPECT_EQ(ours, brute);
  EXPECT_EQ(ours.size(), 2u);
}

TEST(CubicEnumeration, EightVerticesMatchLabeledOracle) {
  Graph::Builder b(8);
  std::vector<int> deg(8, 0);
  std::set<std::string> brute;
  long labeled = 0;
  labeled_cubic(b, deg, 8, -1, -1, [&](const Graph& g) {
    ++labeled;
    if (is_connected(g)) brute.insert(canonical_form(g).bytes);
  });
  EXPECT_EQ(labeled, 19355);
  auto ours = enumerate_cubic(8);
  EXPECT_EQ(forms(ours), brute);
  EXPECT_EQ(ours.size(), 5u);
}

TEST(CubicEnumeration, CountsAndOrder) {
  const std::size_t want[] = {1, 2, 5, 19, 85};
  for (int n = 4, i = 0; n <= 12; n += 2, ++i) {
    auto gs = enumerate_cubic(n);
    EXPECT_EQ(gs.size(), want[i]);
    EXPECT_EQ(forms(gs).size(), gs.size());
    for (std::size_t k = 1; k < gs.size(); ++k) EXPECT_LT(graph6_encode(gs[k - 1]), graph6_encode(gs[k]));
    for (const auto& g : gs) {
      EXPECT_TRUE(is_regular(g, 3));
      EXPECT_TRUE(is_connected(g));
    }
  }
}

TEST(GraphEnumeration, Examples) {
  auto five = collect(graphs_family(5, 6, 2));
  EXPECT_TRUE(std::any_of(five.begin(), five.end(), [](const Graph& g) { return are_isomorphic(g, complete_bipartite(2, 3)); }));
  auto k4 = collect(graphs_family(4, 6, 2));
  ASSERT_EQ(k4.size(), 1u);
  EXPECT_TRUE(are_isomorphic(k4[0], complete(4)));
  EXPECT_THROW(enumerate_graphs(11, 10, 0, [](const Graph&) { return true; }), std::invalid_argument);
  EXPECT_THROW(enumerate_graphs(5, 11, 0, [](const Graph&) { return true; }), std::invalid_argument);
}

TEST(GraphEnumeration, MatchesBitmaskOracleUpToSixVertices) {
  for (int n = 1; n <= 6; ++n) {
    const int pairs = n * (n - 1) / 2;
    std::map<std::pair<int, int>, std::set<std::string>> brute;  // (m, min degree) -> classes
    for (std::uint32_t mask = 0; mask < (1u << pairs); ++mask) {
      Graph g = oracle::from_mask(n, mask);
      if (!is_connected(g)) continue;
      brute[{g.m(), min_degree(g)}].insert(oracle::brute_canonical(g));
    }
    for (int m = 0; m <= pairs; ++m)
      for (int delta = 0; delta <= 3; ++delta) {
        std::set<std::string> want;
        for (auto& [key, cls] : brute)
          if (key.first == m && key.second >= delta) want.insert(cls.begin(), cls.end());
        auto ours = collect(graphs_family(n, m, delta));
        std::set<std::string> got;
        for (const auto& g : ours) got.insert(oracle::brute_canonical(g));
        EXPECT_EQ(got.size(), ours.size()) << n << " " << m << " " << delta;
        EXPECT_EQ(got, want) << n << " " << m << " " << delta;
      }
  }
}

TEST(GraphEnumeration, SevenVerticesTenEdgesMinDegreeTwo) {
  std::set<std::string> brute;
  for (std::uint32_t mask = 0; mask < (1u << 21); ++mask) {
    if (std::popcount(mask) != 10) continue;
    Graph g = oracle::from_mask(7, mask);
    if (min_degree(g) >= 2 && is_connected(g)) brute.insert(canonical_form(g).bytes);
  }
  auto ours = collect(graphs_family(7, 10, 2));
  EXPECT_EQ(forms(ours), brute);
  EXPECT_EQ(ours.size(), brute.size());
}

TEST(GraphEnumeration, ConnectedGraphTotals) {
  const long want[] = {1, 1, 2, 6, 21, 112, 853};
  for (int n = 1; n <= 7; ++n) {
    long total = 0;
    for (int m = 0; m <= n * (n - 1) / 2; ++m) enumerate_graphs(n, m, 0, [&](const Graph&) { return ++total, true; });
    EXPECT_EQ(total, want[n - 1]) << n;
  }
}

TEST(Maximize, TreesOfOrderTenPickTheBetheTree) {
  auto out = maximize_lambda2(trees_family(10, 3), "trees", 1);
  EXPECT_EQ(out.enumerated, 37);
  ASSERT_EQ(out.maximizers.size(), 1u);
  EXPECT_EQ(out.maximizers[0], canonical_graph6(bethe_tree(3, 2)));
  EXPECT_TRUE(is_well_balanced(graph6_decode(out.maximizers[0])).balanced);
}

TEST(Maximize, CubicSixVertices) {
  auto out = maximize_lambda2(cubic_family(6), "cubic", 1);
  EXPECT_NEAR(out.best_lambda2, 3, 1e-9);
  ASSERT_EQ(out.maximizers.size(), 1u);
  EXPECT_EQ(girth(graph6_decode(out.maximizers[0])), 4);
}

TEST(Maximize, IndependentOfThreadsAndChunks) {
  auto family = graphs_family(8, 12, 2);
  auto base = maximize_lambda2(family, "g", 1, 1024);
  for (int threads : {1, 2, 8})
    for (std::size_t chunk : {1u, 7u, 64u}) {
      auto r = maximize_lambda2(family, "g", threads, chunk);
      EXPECT_EQ(r.maximizers, base.maximizers);
      EXPECT_EQ(r.best_lambda2, base.best_lambda2);
      EXPECT_EQ(r.enumerated, base.enumerated);
    }
}

TEST(Maximize, EmptyFamilyThrows) {
  EXPECT_THROW(maximize_lambda2(list_family({}), "none", 2), std::invalid_argument);
}

TEST(Verify, K2SmallOrders) {
  for (int n = 4; n <= 8; ++n) {
    auto r = verify_conjecture_k2(n, 2);
    EXPECT_EQ(r.verdict, Verdict::Pass) << n;
    EXPECT_NEAR(r.max_lambda2, 2, 1e-9);
  }
  EXPECT_THROW(verify_conjecture_k2(11), std::invalid_argument);
}

TEST(Verify, Tree2OrderTen) {
  auto r = verify_conjecture_tree2(3, 2);
  EXPECT_EQ(r.verdict, Verdict::Pass);
  EXPECT_TRUE(r.exhaustive);
  EXPECT_EQ(r.checked, 37);
}

TEST(Verify, Tree2SampledBeyondExhaustiveRange) {
  auto r = verify_conjecture_tree2(4, 3, 1, 200, 5);
  EXPECT_EQ(r.verdict, Verdict::Sampled);
  EXPECT_FALSE(r.exhaustive);
  EXPECT_EQ(r.checked, 200);
  EXPECT_EQ(r.detail, "sampled, not exhaustive");
}

TEST(Verify, CubicOrderSix) {
  auto r = verify_conjecture_cubic(2);
  EXPECT_EQ(r.verdict, Verdict::Pass);
  EXPECT_NEAR(r.reference, 3, 1e-12);
  EXPECT_THROW(verify_conjecture_cubic(4), std::invalid_argument);
}
