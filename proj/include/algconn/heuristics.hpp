#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "algconn/constructions.hpp"
#include "algconn/graph.hpp"
#include "algconn/spectral.hpp"

namespace algconn {

struct AugmentationStep {
  Edge edge;
  double lambda2 = 0;  ///< after adding `edge`
};

struct AugmentationTrace {
  std::vector<AugmentationStep> steps;
  Graph final_graph = Graph::empty(1);
};

/// Greedy edge addition: starting from the empty graph, repeatedly join the
/// non-adjacent pair with the largest Fiedler-coordinate gap |v_i - v_j|.
/// Ties go to the lexicographically smallest pair.
inline AugmentationTrace edge_augmentation(int n, int m) {
  if (n < 2) throw std::invalid_argument("edge augmentation needs n >= 2");
  if (m < 0 || static_cast<long>(m) > static_cast<long>(n) * (n - 1) / 2)
    throw std::invalid_argument("m exceeds the edge count of the complete graph");
  AugmentationTrace trace;
  Graph::Builder b(n);
  auto fiedler = fiedler_vector(b.view());
  for (int step = 0; step < m; ++step) {
    const auto& v = fiedler.vector;
    Edge best{-1, -1};
    double gap = -1;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        if (b.view().has_edge(i, j)) continue;
        double d = std::abs(v[i] - v[j]);
        if (d > gap + 1e-12) {
          gap = d;
          best = {i, j};
        }
      }
    b.add(best.first, best.second);
    fiedler = fiedler_vector(b.view());
    trace.steps.push_back({best, fiedler.value});
  }
  trace.final_graph = b.build();
  return trace;
}

struct FamilyRow {
  int m = 0;
  double augmentation = 0;
  int b = 0;
  double bipartite = 0;  ///< lambda_2(K_{b,n-b})
  std::optional<int> d;  ///< 2m/n when it is an admissible degree
  double regular_mean = 0, regular_min = 0, regular_max = 0;
  bool regular_skipped = true;
};

/// Per m: augmented graph, K_{b,n-b} with the largest b such that b(n-b) <= m,
/// and 10 random d-regular graphs (seeds 0..9) with d = 2m/n.
/// Rows with non-integral d or odd n*d are flagged as skipped.
inline std::vector<FamilyRow> compare_families(int n, const std::vector<int>& m_values) {
  if (m_values.empty()) return {};
  for (int m : m_values)
    if (m < n - 1) throw std::invalid_argument("each m must be at least n - 1");
  const int m_max = *std::max_element(m_values.begin(), m_values.end());
  // The greedy trace for m_max passes through every smaller m.
  auto trace = edge_augmentation(n, m_max);
  std::vector<FamilyRow> rows;
  for (int m : m_values) {
    FamilyRow row;
    row.m = m;
    row.augmentation = trace.steps[static_cast<std::size_t>(m - 1)].lambda2;
    for (int b = 1; b <= n / 2; ++b)
      if (static_cast<long>(b) * (n - b) <= m) row.b = b;
    row.bipartite = algebraic_connectivity(complete_bipartite(row.b, n - row.b));
    if ((2L * m) % n == 0) {
      const int d = static_cast<int>(2L * m / n);
      if (d < n && (static_cast<long>(n) * d) % 2 == 0) {
        row.d = d;
        row.regular_skipped = false;
        double sum = 0;
        row.regular_min = INFINITY;
        row.regular_max = -INFINITY;
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
          double l = algebraic_connectivity(random_regular(n, d, seed));
          sum += l;
          row.regular_min = std::min(row.regular_min, l);
          row.regular_max = std::max(row.regular_max, l);
        }
        row.regular_mean = sum / 10;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace algconn
