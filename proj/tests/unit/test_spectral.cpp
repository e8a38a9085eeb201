#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "algconn/constructions.hpp"
#include "algconn/spectral.hpp"
#include "oracles.hpp"

using namespace algconn;

namespace {

Graph random_connected(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  while (true) {
    Graph::Builder b(n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (coin(rng)) b.add(i, j);
    if (is_connected(b.view())) return b.build();
  }
}

}  // namespace

TEST(Laplacian, Examples) {
  Matrix want(2, 2);
  want << 1, -1, -1, 1;
  EXPECT_EQ(laplacian(path(2)), want);
  EXPECT_EQ(laplacian(Graph::empty(3)), Matrix::Zero(3, 3));
  Matrix s = laplacian(star(4));
  EXPECT_EQ(s(0, 0), 3);
  EXPECT_EQ(s(1, 1), 1);
  EXPECT_EQ(s(0, 2), -1);
  EXPECT_EQ(s(1, 2), 0);
}

TEST(EigenSmallest, Examples) {
  auto p2 = eigen_smallest(laplacian(path(2)), 2);
  EXPECT_NEAR(p2[0].value, 0, 1e-12);
  EXPECT_NEAR(p2[1].value, 2, 1e-12);
  EXPECT_NEAR(eigen_smallest(Matrix::Zero(3, 3), 1)[0].value, 0, 1e-15);
  auto k5 = eigen_smallest(laplacian(complete(5)), 2);
  EXPECT_NEAR(k5[0].value, 0, 1e-12);
  EXPECT_NEAR(k5[1].value, 5, 1e-12);
}

TEST(EigenSmallest, CompleteGraphSpectrumMatchesDeterminantOracle) {
  // det(L(K5) - mu I) vanishes exactly at mu = 0 and mu = 5, with multiplicity 4 at 5.
  Graph k5 = complete(5);
  EXPECT_NEAR(static_cast<double>(oracle::determinant(oracle::shifted_laplacian(k5, 0))), 0, 1e-9);
  EXPECT_NEAR(static_cast<double>(oracle::determinant(oracle::shifted_laplacian(k5, 5))), 0, 1e-9);
  EXPECT_GT(std::abs(static_cast<double>(oracle::determinant(oracle::shifted_laplacian(k5, 4)))), 1);
  // det(L - 4I) = (0 - 4)(5 - 4)^4
  EXPECT_NEAR(static_cast<double>(oracle::determinant(oracle::shifted_laplacian(k5, 4))), -4, 1e-9);
  auto values = laplacian_spectrum(k5);
  for (int i = 1; i < 5; ++i) EXPECT_NEAR(values[i], 5, 1e-12);
}

TEST(EigenSmallest, Errors) {
  Matrix a(2, 2);
  a << 1, 2, 3, 1;
  EXPECT_THROW(eigen_smallest(a, 1), std::invalid_argument);
  EXPECT_THROW(eigen_smallest(Matrix::Zero(2, 2), 3), std::invalid_argument);
}

TEST(EigenSmallest, ResidualsAndOrthonormality) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 20; ++t) {
    Graph g = random_connected(12, 0.3, rng);
    auto pairs = eigen_smallest(laplacian(g), 4);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      EXPECT_LT(pairs[i].residual, 1e-9);
      for (std::size_t j = 0; j <= i; ++j) {
        double dot = 0;
        for (int k = 0; k < 12; ++k) dot += pairs[i].vector[k] * pairs[j].vector[k];
        EXPECT_NEAR(dot, i == j ? 1.0 : 0.0, 1e-9);
      }
    }
  }
}

TEST(EigenSmallest, SignConvention) {
  auto r = eigen_smallest(laplacian(path(5)), 2)[1];
  std::size_t arg = 0;
  for (std::size_t i = 1; i < r.vector.size(); ++i)
    if (std::abs(r.vector[i]) > std::abs(r.vector[arg])) arg = i;
  EXPECT_GT(r.vector[arg], 0);
}

TEST(AlgebraicConnectivity, ClosedForms) {
  for (int n = 3; n <= 30; ++n) EXPECT_NEAR(algebraic_connectivity(star(n)), 1, 1e-9);
  for (int n = 2; n <= 30; ++n)
    EXPECT_NEAR(algebraic_connectivity(path(n)), 2 - 2 * std::cos(std::numbers::pi / n), 1e-9);
  EXPECT_NEAR(algebraic_connectivity(complete_bipartite(2, 8)), 2, 1e-9);
  EXPECT_NEAR(algebraic_connectivity(named("petersen")), 2, 1e-9);
  for (int n = 4; n <= 20; ++n)
    for (int b = 2; 2 * b <= n; ++b) EXPECT_NEAR(algebraic_connectivity(complete_bipartite(b, n - b)), b, 1e-9);
  EXPECT_THROW(algebraic_connectivity(Graph::empty(1)), std::invalid_argument);
}

TEST(AlgebraicConnectivity, PathValueIsRootOfCharacteristicPolynomial) {
  for (int n = 3; n <= 9; ++n) {
    const long double mu = algebraic_connectivity(path(n));
    EXPECT_NEAR(static_cast<double>(oracle::determinant(oracle::shifted_laplacian(path(n), mu))), 0, 1e-8);
  }
}

TEST(AlgebraicConnectivity, ZeroExactlyWhenDisconnected) {
  std::mt19937_64 rng(4);
  std::bernoulli_distribution coin(0.25);
  for (int t = 0; t < 300; ++t) {
    const int n = 2 + t % 9;
    Graph::Builder b(n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (coin(rng)) b.add(i, j);
    Graph g = b.build();
    double l = algebraic_connectivity(g);
    if (is_connected(g)) EXPECT_GT(l, 1e-9);
    else EXPECT_EQ(l, 0.0);
  }
}

TEST(FiedlerVector, OrthogonalToOnesAndAttainsQuotient) {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 30; ++t) {
    Graph g = random_connected(10, 0.35, rng);
    auto f = fiedler_vector(g);
    double sum = 0;
    for (double x : f.vector) sum += x;
    EXPECT_NEAR(sum, 0, 1e-9);
    EXPECT_NEAR(rayleigh_quotient(g, f.vector), f.value, 1e-9);
    EXPECT_NEAR(f.value, algebraic_connectivity(g), 1e-9);
  }
  auto empty = fiedler_vector(Graph::empty(3));
  EXPECT_EQ(empty.value, 0.0);
}

TEST(Rayleigh, RandomMeanZeroVectorsStayAboveLambda2) {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> gauss;
  Graph g = named("petersen");
  const double l2 = algebraic_connectivity(g);
  for (int t = 0; t < 1000; ++t) {
    std::vector<double> x(10);
    double mean = 0;
    for (double& v : x) mean += (v = gauss(rng));
    mean /= 10;
    for (double& v : x) v -= mean;
    EXPECT_GE(rayleigh_quotient(g, x), l2 - 1e-9);
  }
}

TEST(Rayleigh, Examples) {
  std::vector<double> x{1, -1};
  EXPECT_DOUBLE_EQ(rayleigh_quotient(path(2), x), 2);
  std::vector<double> zero{0, 0};
  EXPECT_THROW(rayleigh_quotient(path(2), zero), std::invalid_argument);
  std::vector<double> wrong{1, 2, 3};
  EXPECT_THROW(rayleigh_quotient(path(2), wrong), std::invalid_argument);
}

TEST(ModifiedLambda, Examples) {
  EXPECT_NEAR(modified_lambda(Graph::empty(1), 0).value, 1, 1e-12);
  EXPECT_NEAR(modified_lambda(path(2), 0).value, (3 - std::sqrt(5.0)) / 2, 1e-12);
  EXPECT_THROW(modified_lambda(path(2), 2), std::out_of_range);
  auto r = modified_lambda(bethe_tree(3, 2), 3);
  EXPECT_NEAR(modified_rayleigh_quotient(bethe_tree(3, 2), 3, r.vector), r.value, 1e-9);
  EXPECT_GT(r.value, 0);
}

TEST(ModifiedLambda, QuotientOfRandomVectorsIsAnUpperBound) {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> gauss;
  Graph g = path(7);
  const double lt = modified_lambda(g, 0).value;
  for (int t = 0; t < 500; ++t) {
    std::vector<double> x(7);
    for (double& v : x) v = gauss(rng);
    EXPECT_GE(modified_rayleigh_quotient(g, 0, x), lt - 1e-9);
  }
}

TEST(Consensus, RatesMatchLambda2) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit;
  auto loads = [&](int n) {
    std::vector<double> u(n);
    for (double& x : u) x = unit(rng);
    return u;
  };
  Graph pet = named("petersen");
  EXPECT_NEAR(consensus_decay_rate(pet, loads(10), 20, 0.1 / 6).rate, 2, 0.04);
  std::vector<double> pure{1, -1};
  EXPECT_NEAR(consensus_decay_rate(path(2), pure, 5, 0.01).rate, 2, 0.04);
  Graph s = star(10);
  EXPECT_NEAR(consensus_decay_rate(s, loads(10), 20, 0.1 / 18).rate, 1, 0.02);
}

TEST(Consensus, Errors) {
  std::vector<double> u{1, 2, 3};
  EXPECT_THROW(consensus_decay_rate(Graph::from_edges(3, {{0, 1}}), u, 10, 0.01), std::domain_error);
  std::vector<double> flat{2, 2, 2};
  EXPECT_THROW(consensus_decay_rate(path(3), flat, 10, 0.01), std::invalid_argument);
  EXPECT_THROW(consensus_decay_rate(path(3), u, 10, 0.5), std::invalid_argument);
}
