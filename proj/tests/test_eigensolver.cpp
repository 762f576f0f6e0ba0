// Copyright 2026 The lossy-qsci Authors
// SPDX-License-Identifier: Apache-2.0

#include <random>

#include <gtest/gtest.h>

#include "lqsci/eigensolver.hpp"
#include "lqsci/error.hpp"
#include "test_support.hpp"

namespace lqsci {
namespace {

Eigen::MatrixXd random_symmetric(int n, std::uint64_t seed, double diag_spread) {
  std::mt19937_64 eng(seed);
  std::normal_distribution<double> g;
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) a(i, j) = a(j, i) = 0.1 * g(eng);
  for (int i = 0; i < n; ++i) a(i, i) += diag_spread * i;
  return a;
}

TEST(Dense, MatchesJacobiOracle) {
  for (int n : {1, 2, 5, 17, 40}) {
    const Eigen::MatrixXd a = random_symmetric(n, 100 + n, 0.3);
    const EigenResult r = lowest_eigenpair_dense(a);
    EXPECT_NEAR(r.energy, testing::jacobi_eigenvalues(a).front(), 1e-10);
    EXPECT_NEAR(r.vector.norm(), 1.0, 1e-12);
    EXPECT_LE((a * r.vector - r.energy * r.vector).norm(), 1e-9);
  }
}

TEST(Davidson, MatchesJacobiOracle) {
  for (int n : {30, 80, 150}) {
    const Eigen::MatrixXd a = random_symmetric(n, n, 0.5);
    const MatVec mv = [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) { y = a * x; };
    const EigenResult r = lowest_eigenpair_davidson(mv, a.diagonal());
    EXPECT_NEAR(r.energy, testing::jacobi_eigenvalues(a).front(), 1e-9);
    EXPECT_LE(r.residual, 1e-9);
    EXPECT_GT(r.iterations, 0);
  }
}

TEST(Davidson, HandlesDegenerateDiagonal) {
  const int n = 60;
  Eigen::MatrixXd a = random_symmetric(n, 7, 0.0);
  const MatVec mv = [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) { y = a * x; };
  const EigenResult r = lowest_eigenpair_davidson(mv, a.diagonal());
  EXPECT_NEAR(r.energy, testing::jacobi_eigenvalues(a).front(), 1e-8);
}

TEST(Davidson, IterationCapRaisesSolverError) {
  const Eigen::MatrixXd a = random_symmetric(120, 3, 0.01);
  const MatVec mv = [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) { y = a * x; };
  DavidsonOptions opts;
  opts.max_iterations = 1;
  opts.tol = 1e-14;
  try {
    (void)lowest_eigenpair_davidson(mv, a.diagonal(), opts);
    FAIL() << "expected SolverError";
  } catch (const SolverError& e) {
    EXPECT_GT(e.best_residual(), 0.0);
  }
}

TEST(Davidson, AcceptsGuess) {
  const Eigen::MatrixXd a = random_symmetric(50, 11, 0.4);
  const MatVec mv = [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) { y = a * x; };
  const EigenResult exact = lowest_eigenpair_dense(a);
  const EigenResult r = lowest_eigenpair_davidson(mv, a.diagonal(), {}, &exact.vector);
  EXPECT_NEAR(r.energy, exact.energy, 1e-10);
  EXPECT_LE(r.iterations, 2);
}

}  // namespace
}  // namespace lqsci
