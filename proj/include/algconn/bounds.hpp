#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "algconn/graph.hpp"
#include "algconn/spectral.hpp"

namespace algconn {

/// n = 1 + (d-1) + ... + (d-1)^(K-1) + m with 0 <= m < (d-1)^K.
struct LayerDecomposition {
  int d = 0;
  long n = 0;
  int K = 0;
  long m = 0;
};

inline LayerDecomposition layer_decomposition(long n, int d) {
  if (d < 3) throw std::invalid_argument("layer decomposition needs d >= 3");
  if (n < 1) throw std::invalid_argument("layer decomposition needs n >= 1");
  // full = 1 + (d-1) + ... + (d-1)^(K-1); the next layer has (d-1)^K vertices.
  long full = 1, layer = d - 1;
  int K = 1;
  while (n - full >= layer) {
    full += layer;
    layer *= d - 1;
    ++K;
  }
  return {d, n, K, n - full};
}

/// Layered test vector for the modified eigenvalue of a tree rooted at r.
///
/// Vertices sorted by (distance from r, index) fill buckets of sizes
/// 1, d-1, (d-1)^2, ..., (d-1)^(K-1), m; bucket k gets weight 1 - (d-1)^-k.
inline std::vector<double> lamtilde_test_vector(const Graph& t, Vertex r, int d) {
  if (!is_tree(t)) throw std::invalid_argument("test vector needs a tree");
  if (r < 0 || r >= t.n()) throw std::out_of_range("root vertex out of range");
  if (d < 3) throw std::invalid_argument("test vector needs d >= 3");
  if (max_degree(t) > d) throw std::invalid_argument("tree has a vertex of degree > d");
  if (t.degree(r) > d - 1) throw std::invalid_argument("root degree must be at most d - 1");

  auto dist = bfs_distances(t, r);
  std::vector<Vertex> order(static_cast<std::size_t>(t.n()));
  for (int v = 0; v < t.n(); ++v) order[v] = v;
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return dist[a] < dist[b]; });

  std::vector<double> x(static_cast<std::size_t>(t.n()));
  long filled = 0, capacity = 1;
  int bucket = 1;
  for (Vertex v : order) {
    if (filled == capacity) {
      filled = 0;
      capacity *= d - 1;
      ++bucket;
    }
    x[v] = 1.0 - std::pow(1.0 / (d - 1), bucket);
    ++filled;
  }
  return x;
}

namespace detail {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational rational_pow(long base, int exp) {
  BigInt p = boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exp));
  return Rational(p);
}

}  // namespace detail

/// Closed-form upper bound on the modified eigenvalue of a tree with K full layers:
///   (d-2)^2/(d-1)^(K+1) * (1 - (d-1)^-(K-1))
///     / (1 - 2(K-1)(d-2)/(d-1)^K - (d-1 - (d-1)^-2)/(d-1)^K - (d-1)^-(2K+1)).
/// Evaluated in exact rational arithmetic.
inline double precise_lamtilde_bound(int d, int K) {
  using detail::Rational;
  if (d < 3) throw std::domain_error("precise bound needs d >= 3");
  if (K < 2) throw std::domain_error("precise bound needs K >= 2");
  const long q = d - 1;
  const Rational qK = detail::rational_pow(q, K);
  const Rational lead = Rational((d - 2) * (d - 2)) / detail::rational_pow(q, K + 1);
  const Rational top = 1 - 1 / detail::rational_pow(q, K - 1);
  const Rational denom = 1 - Rational(2 * (K - 1) * (d - 2)) / qK - (q - 1 / detail::rational_pow(q, 2)) / qK -
                         1 / detail::rational_pow(q, 2 * K + 1);
  if (denom <= 0) throw std::domain_error("precise bound denominator is not positive for d=" + std::to_string(d) +
                                          ", K=" + std::to_string(K));
  return static_cast<double>(lead * top / denom);
}

/// K = floor(log_{d-1}(1 + (d-2)(n-2)/(2(d-1)))), computed in integers; -1 if the argument is < 1.
inline int tree_bound_layers(long n, int d) {
  if (d < 3) throw std::invalid_argument("tree bound needs d >= 3");
  // (d-1)^K <= 1 + (d-2)(n-2)/(2(d-1))  <=>  2(d-1)^(K+1) <= 2(d-1) + (d-2)(n-2)
  const long rhs = 2L * (d - 1) + static_cast<long>(d - 2) * (n - 2);
  long lhs = 2L * (d - 1);
  int K = -1;
  while (lhs <= rhs) {
    ++K;
    lhs *= d - 1;
  }
  return K;
}

/// Precise tree bound at K = tree_bound_layers(n, d); nullopt when K < 2.
inline std::optional<double> tree_bound_precise(long n, int d) {
  int K = tree_bound_layers(n, d);
  if (K < 2) return std::nullopt;
  return precise_lamtilde_bound(d, K);
}

/// Leading term 2(d-2)/n of the proven tree bound.
inline double tree_bound_asymptotic(long n, int d) {
  if (d < 3 || n < 2) throw std::invalid_argument("tree bound needs d >= 3, n >= 2");
  return 2.0 * (d - 2) / static_cast<double>(n);
}

/// Leading term d(d-2)/((d-1) n) of the conjectured optimal tree bound.
inline double conjectured_tree_bound(long n, int d) {
  if (d < 3 || n < 2) throw std::invalid_argument("tree bound needs d >= 3, n >= 2");
  return static_cast<double>(d) * (d - 2) / ((d - 1) * static_cast<double>(n));
}

/// 2 - 2cos(pi / (D + 1)) for a tree of diameter D.
inline double basic_diameter_bound(const Graph& t) {
  if (!is_tree(t)) throw std::invalid_argument("basic diameter bound needs a tree");
  if (t.n() < 2) throw std::invalid_argument("basic diameter bound needs n >= 2");
  return 2.0 - 2.0 * std::cos(std::numbers::pi / (diameter(t) + 1));
}

/// 3 - 2^(3/2) cos(pi / K): cubic graphs containing two joined K-level binary trees.
inline double tk_bound(int K) {
  if (K < 1) throw std::domain_error("tk bound needs K >= 1");
  return 3.0 - 2.0 * std::numbers::sqrt2 * std::cos(std::numbers::pi / K);
}

/// Cubic girth bound: tk_bound(floor(g / 2)).
inline double girth_bound(int girth_value) {
  if (girth_value < 3) throw std::domain_error("girth must be >= 3");
  return tk_bound(girth_value / 2);
}

/// 3 - 2^(3/2) cos(2 pi / D). Only meaningful for D >= 2 (at D = 1 it gives
/// 0.17, below lambda_2(K_4) = 4).
inline double nilli_bound(int D) {
  if (D < 2) throw std::domain_error("Nilli bound needs D >= 2");
  return 3.0 - 2.0 * std::numbers::sqrt2 * std::cos(2.0 * std::numbers::pi / D);
}

/// Symmetric form of the K x K tridiagonal matrix with diagonal (4, 3, ..., 3, 5),
/// superdiagonal -2 and subdiagonal -1, after scaling row j by 2^(j/2).
inline Matrix tk_matrix(int K) {
  if (K < 2) throw std::domain_error("tk matrix needs K >= 2");
  Matrix M = Matrix::Zero(K, K);
  for (int j = 0; j < K; ++j) M(j, j) = 3;
  M(0, 0) = 4;
  M(K - 1, K - 1) = 5;
  for (int j = 0; j + 1 < K; ++j) M(j, j + 1) = M(j + 1, j) = -std::numbers::sqrt2;
  return M;
}

inline double min_degree_bound(const Graph& g) {
  if (g.n() < 2) throw std::invalid_argument("min degree bound needs n >= 2");
  return static_cast<double>(g.n()) / (g.n() - 1) * min_degree(g);
}

struct BoundEntry {
  std::optional<double> value;
  bool applicable = false;
  bool certified = true;  ///< false for reference values that are not proven bounds
  bool attained = false;  ///< |value - lambda_2| <= 1e-9
  std::string note;
};

struct BoundReport {
  double lambda2 = 0;
  std::map<std::string, BoundEntry> entries;

  const BoundEntry& at(const std::string& name) const { return entries.at(name); }
};

/// Every bound that applies to g, with applicability flags, next to lambda_2.
inline BoundReport bound_report(const Graph& g) {
  if (g.n() < 2 || !is_connected(g)) throw std::domain_error("bound report needs a connected graph with n >= 2");
  BoundReport rep;
  rep.lambda2 = algebraic_connectivity(g);
  auto put = [&](const std::string& name, std::optional<double> value, bool applicable, bool certified,
                 std::string note) {
    BoundEntry e{value, applicable, certified, false, std::move(note)};
    e.attained = applicable && value && std::abs(*value - rep.lambda2) <= 1e-9;
    rep.entries[name] = e;
  };

  const bool tree = is_tree(g);
  const bool cubic = is_regular(g, 3);
  const int dmax = max_degree(g);
  const auto gir = girth(g);
  const int diam = diameter(g);

  put("min_degree", min_degree_bound(g), true, true, "");

  if (tree) {
    put("basic_diameter", basic_diameter_bound(g), true, true, "");
  } else {
    put("basic_diameter", std::nullopt, false, true, "requires a tree");
  }

  if (tree && dmax >= 3) {
    auto precise = tree_bound_precise(g.n(), dmax);
    if (precise) {
      put("tree_precise", precise, true, true, "");
    } else {
      put("tree_precise", basic_diameter_bound(g), true, true,
          "layer count K < 2; basic_diameter substituted");
    }
    put("tree_asymptotic", tree_bound_asymptotic(g.n(), dmax), true, false, "leading term only");
    put("tree_conjectured", conjectured_tree_bound(g.n(), dmax), true, false, "leading term only, conjectured");
  } else {
    const char* why = tree ? "requires max degree >= 3" : "requires a tree";
    put("tree_precise", std::nullopt, false, true, why);
    put("tree_asymptotic", std::nullopt, false, false, why);
    put("tree_conjectured", std::nullopt, false, false, why);
  }

  if (cubic && gir) {
    put("girth", girth_bound(*gir), true, true, "");
  } else {
    put("girth", std::nullopt, false, true, cubic ? "acyclic" : "requires a cubic graph");
  }
  if (cubic && diam >= 2) {
    put("nilli_diameter", nilli_bound(diam), true, true, "");
  } else {
    put("nilli_diameter", std::nullopt, false, true, cubic ? "requires diameter >= 2" : "requires a cubic graph");
  }
  if (cubic && gir && *gir / 2 >= 2) {
    put("nilli_girth", nilli_bound(*gir / 2), true, true, "Nilli bound at D = floor(g/2)");
  } else {
    put("nilli_girth", std::nullopt, false, true, cubic ? "requires floor(g/2) >= 2" : "requires a cubic graph");
  }
  return rep;
}

}  // namespace algconn
