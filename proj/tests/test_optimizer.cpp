// Copyright 2026 The lossy-qsci Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "lqsci/error.hpp"
#include "lqsci/optimizer.hpp"

namespace lqsci {
namespace {

double rosenbrock(const std::vector<double>& x) {
  double f = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i)
    f += 100 * std::pow(x[i + 1] - x[i] * x[i], 2) + std::pow(1 - x[i], 2);
  return f;
}

TEST(Lbfgs, SolvesRosenbrock) {
  LbfgsOptions opt;
  opt.max_iterations = 500;
  const auto r = lbfgs_minimize(rosenbrock, {-1.2, 1.0, -0.5, 0.8}, opt);
  EXPECT_LT(r.f, 1e-8);
  for (double v : r.x) EXPECT_NEAR(v, 1.0, 1e-3);
  EXPECT_GT(r.evaluations, 0);
  for (std::size_t i = 1; i < r.trace.size(); ++i) EXPECT_LE(r.trace[i], r.trace[i - 1]);
}

TEST(Lbfgs, QuadraticConvergesQuickly) {
  const auto f = [](const std::vector<double>& x) { return 3 * (x[0] - 2) * (x[0] - 2) + (x[1] + 1) * (x[1] + 1); };
  const auto r = lbfgs_minimize(f, {0.0, 0.0});
  EXPECT_NEAR(r.x[0], 2.0, 1e-5);
  EXPECT_NEAR(r.x[1], -1.0, 1e-5);
  EXPECT_LT(r.iterations, 20);
  EXPECT_TRUE(r.converged);
}

TEST(NelderMead, RespectsBounds) {
  NelderMeadOptions opt;
  opt.lower = -1.0;
  opt.upper = 1.0;
  opt.max_evaluations = 4000;
  // Unconstrained minimum at (3, -0.5); the box pins the first coordinate at 1.
  const auto f = [](const std::vector<double>& x) { return (x[0] - 3) * (x[0] - 3) + (x[1] + 0.5) * (x[1] + 0.5); };
  const auto r = nelder_mead_minimize(f, {0.0, 0.0}, opt);
  EXPECT_NEAR(r.x[0], 1.0, 1e-4);
  EXPECT_NEAR(r.x[1], -0.5, 1e-3);
  EXPECT_LE(r.evaluations, 4000 + 3);
  for (std::size_t i = 1; i < r.trace.size(); ++i) EXPECT_LE(r.trace[i], r.trace[i - 1]);
}

TEST(NelderMead, FindsInteriorMinimum) {
  const auto f = [](const std::vector<double>& x) {
    return std::pow(x[0] - 0.3, 2) + 2 * std::pow(x[1] + 0.7, 2) + 0.5 * std::pow(x[2] - 1.1, 2);
  };
  const auto r = nelder_mead_minimize(f, {0.0, 0.0, 0.0});
  EXPECT_NEAR(r.x[0], 0.3, 1e-3);
  EXPECT_NEAR(r.x[1], -0.7, 1e-3);
  EXPECT_NEAR(r.x[2], 1.1, 1e-3);
}

TEST(Optimizers, NonFiniteObjectiveThrows) {
  const auto bad = [](const std::vector<double>&) { return std::numeric_limits<double>::quiet_NaN(); };
  EXPECT_THROW(lbfgs_minimize(bad, {0.0}), NumericalError);
  EXPECT_THROW(nelder_mead_minimize(bad, {0.0}), NumericalError);
}

}  // namespace
}  // namespace lqsci
