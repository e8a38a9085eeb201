#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "algconn/graph.hpp"

namespace algconn {

using Matrix = Eigen::MatrixXd;

struct EigenResult {
  double value = 0;
  std::vector<double> vector;  ///< unit norm, largest-magnitude entry positive
  double residual = 0;         ///< ||M x - value x||_2
};

struct DecayFit {
  double rate = 0;     ///< fitted exponential decay rate, 1/time
  double rel_err = 0;  ///< RMS residual of the log-linear fit
};

inline Matrix laplacian(const Graph& g) {
  Matrix L = Matrix::Zero(g.n(), g.n());
  for (auto [i, j] : g.edges()) {
    L(i, j) = L(j, i) = -1;
    L(i, i) += 1;
    L(j, j) += 1;
  }
  return L;
}

namespace detail {

// Flips x so that its largest-magnitude entry (lowest index on ties) is positive.
inline void fix_sign(std::vector<double>& x) {
  std::size_t arg = 0;
  for (std::size_t i = 1; i < x.size(); ++i)
    if (std::abs(x[i]) > std::abs(x[arg])) arg = i;
  if (!x.empty() && x[arg] < 0)
    for (double& v : x) v = -v;
}

inline void require_symmetric(const Matrix& M) {
  if (M.rows() != M.cols()) throw std::invalid_argument("matrix is not square");
  if (M.rows() > kMaxVertices) throw std::invalid_argument("matrix larger than 4096");
  for (Eigen::Index i = 0; i < M.rows(); ++i)
    for (Eigen::Index j = i + 1; j < M.cols(); ++j)
      if (std::abs(M(i, j) - M(j, i)) > 1e-12) throw std::invalid_argument("matrix is not symmetric");
}

inline EigenResult make_result(const Matrix& M, double value, Eigen::VectorXd x) {
  x.normalize();
  EigenResult r;
  r.value = value;
  r.vector.assign(x.data(), x.data() + x.size());
  fix_sign(r.vector);
  Eigen::Map<const Eigen::VectorXd> v(r.vector.data(), static_cast<Eigen::Index>(r.vector.size()));
  r.residual = (M * v - value * v).norm();
  return r;
}

}  // namespace detail

/// The k smallest eigenpairs of a symmetric matrix, ascending.
///
/// Backed by Householder tridiagonalization plus implicit symmetric QR
/// (Eigen::SelfAdjointEigenSolver); results are deterministic for a given input.
inline std::vector<EigenResult> eigen_smallest(const Matrix& M, int k) {
  detail::require_symmetric(M);
  if (k < 0 || k > M.rows()) throw std::invalid_argument("requested " + std::to_string(k) + " eigenpairs of a " +
                                                        std::to_string(M.rows()) + "x" + std::to_string(M.rows()) + " matrix");
  std::vector<EigenResult> out;
  if (k == 0) return out;
  Eigen::SelfAdjointEigenSolver<Matrix> es(M);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver did not converge");
  for (int i = 0; i < k; ++i) out.push_back(detail::make_result(M, es.eigenvalues()(i), es.eigenvectors().col(i)));
  return out;
}

/// All eigenvalues of a symmetric matrix, ascending.
inline std::vector<double> eigenvalues(const Matrix& M) {
  detail::require_symmetric(M);
  Eigen::SelfAdjointEigenSolver<Matrix> es(M, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver did not converge");
  const auto& v = es.eigenvalues();
  return {v.data(), v.data() + v.size()};
}

inline std::vector<double> laplacian_spectrum(const Graph& g) { return eigenvalues(laplacian(g)); }

/// Second-smallest Laplacian eigenvalue; 0 exactly iff g is disconnected up to rounding.
inline double algebraic_connectivity(const Graph& g) {
  if (g.n() < 2) throw std::invalid_argument("algebraic connectivity needs at least 2 vertices");
  if (!is_connected(g)) return 0.0;
  return laplacian_spectrum(g)[1];
}

/// Fiedler pair: lambda_2 and an eigenvector orthogonal to the all-ones vector.
inline EigenResult fiedler_vector(const Graph& g) {
  if (g.n() < 2) throw std::invalid_argument("Fiedler vector needs at least 2 vertices");
  const Matrix L = laplacian(g);
  Eigen::SelfAdjointEigenSolver<Matrix> es(L);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver did not converge");
  Eigen::VectorXd x = es.eigenvectors().col(1);
  x.array() -= x.mean();
  double value = es.eigenvalues()(1);
  if (x.norm() < 1e-8) {
    // lambda_1 = lambda_2 = 0 and column 1 came out parallel to the ones vector;
    // column 0 then spans the rest of the null space direction we want.
    x = es.eigenvectors().col(0);
    x.array() -= x.mean();
  }
  if (!is_connected(g)) value = 0.0;
  return detail::make_result(L, value, x);
}

/// Smallest eigenpair of L + e_r e_r^T.
inline EigenResult modified_lambda(const Graph& g, Vertex r) {
  if (r < 0 || r >= g.n()) throw std::out_of_range("root vertex out of range");
  Matrix M = laplacian(g);
  M(r, r) += 1;
  return eigen_smallest(M, 1).front();
}

namespace detail {

inline double check_vector(const Graph& g, std::span<const double> x) {
  if (static_cast<int>(x.size()) != g.n()) throw std::invalid_argument("vector length differs from vertex count");
  double norm2 = 0;
  for (double v : x) norm2 += v * v;
  if (norm2 == 0) throw std::invalid_argument("Rayleigh quotient of the zero vector");
  return norm2;
}

inline double edge_energy(const Graph& g, std::span<const double> x) {
  double num = 0;
  for (auto [i, j] : g.edges()) num += (x[i] - x[j]) * (x[i] - x[j]);
  return num;
}

}  // namespace detail

/// sum over edges of (x_i - x_j)^2, divided by |x|^2.
inline double rayleigh_quotient(const Graph& g, std::span<const double> x) {
  double norm2 = detail::check_vector(g, x);
  return detail::edge_energy(g, x) / norm2;
}

/// (x_r^2 + sum over edges of (x_i - x_j)^2) / |x|^2.
inline double modified_rayleigh_quotient(const Graph& g, Vertex r, std::span<const double> x) {
  if (r < 0 || r >= g.n()) throw std::out_of_range("root vertex out of range");
  double norm2 = detail::check_vector(g, x);
  return (x[r] * x[r] + detail::edge_energy(g, x)) / norm2;
}

/// Integrates du/dt = -L u with classical RK4 and fits the decay rate of
/// |u - mean(u)| over the second half of the run.
///
/// The deviation from the consensus value is integrated directly so the
/// fitted tail never reaches the rounding floor of the mean.
inline DecayFit consensus_decay_rate(const Graph& g, std::span<const double> u0, double t_end, double dt) {
  const int n = g.n();
  if (static_cast<int>(u0.size()) != n) throw std::invalid_argument("initial loads length differs from vertex count");
  if (n < 2 || !is_connected(g)) throw std::domain_error("consensus decay needs a connected graph");
  if (!(t_end > 0) || !(dt > 0)) throw std::invalid_argument("t_end and dt must be positive");
  const double lambda_max_estimate = 2.0 * max_degree(g);
  if (dt > 0.1 / lambda_max_estimate + 1e-15)
    throw std::invalid_argument("dt exceeds 0.1 / lambda_max estimate (" + std::to_string(0.1 / lambda_max_estimate) + ")");

  Eigen::VectorXd w(n);
  const double mean = std::accumulate(u0.begin(), u0.end(), 0.0) / n;
  double scale = 0;
  for (int i = 0; i < n; ++i) {
    w(i) = u0[i] - mean;
    scale = std::max(scale, std::abs(u0[i]));
  }
  if (w.norm() <= 1e-12 * std::max(1.0, scale)) throw std::invalid_argument("initial loads are constant");

  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) adj[v] = g.neighbors(v);
  auto apply = [&](const Eigen::VectorXd& x) {
    Eigen::VectorXd y(n);
    for (int v = 0; v < n; ++v) {
      double s = 0;
      for (int u : adj[v]) s += x(v) - x(u);
      y(v) = -s;
    }
    return y;
  };

  const long steps = std::lround(t_end / dt);
  std::vector<double> ts, logs;
  for (long s = 1; s <= steps; ++s) {
    Eigen::VectorXd k1 = apply(w);
    Eigen::VectorXd k2 = apply(w + 0.5 * dt * k1);
    Eigen::VectorXd k3 = apply(w + 0.5 * dt * k2);
    Eigen::VectorXd k4 = apply(w + dt * k3);
    w += dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
    w.array() -= w.mean();
    if (2 * s >= steps) {
      double norm = w.norm();
      if (norm <= 0 || !std::isfinite(norm)) break;
      ts.push_back(static_cast<double>(s) * dt);
      logs.push_back(std::log(norm));
    }
  }
  if (ts.size() < 2) throw std::invalid_argument("too few samples in the fit window; increase t_end");

  const double tm = std::accumulate(ts.begin(), ts.end(), 0.0) / static_cast<double>(ts.size());
  const double lm = std::accumulate(logs.begin(), logs.end(), 0.0) / static_cast<double>(logs.size());
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    sxy += (ts[i] - tm) * (logs[i] - lm);
    sxx += (ts[i] - tm) * (ts[i] - tm);
  }
  const double slope = sxy / sxx;
  double rss = 0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    double r = logs[i] - (lm + slope * (ts[i] - tm));
    rss += r * r;
  }
  return {std::max(0.0, -slope), std::sqrt(rss / static_cast<double>(ts.size()))};
}

}  // namespace algconn
