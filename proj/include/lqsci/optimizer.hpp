// Copyright 2026 The lossy-qsci Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file optimizer.hpp
 * @brief Derivative-free-gradient L-BFGS and bounded Nelder-Mead.
 */

#pragma once

#include <functional>
#include <vector>

namespace lqsci {

using Objective = std::function<double(const std::vector<double>&)>;

struct OptimResult {
  std::vector<double> x;
  double f = 0.0;
  std::vector<double> trace;  ///< best objective after each iteration
  long evaluations = 0;
  int iterations = 0;
  bool converged = false;
};

struct LbfgsOptions {
  int max_iterations = 200;
  int memory = 10;
  double fd_step = 1e-5;   ///< central-difference step
  double gtol = 1e-7;      ///< stop when the gradient infinity-norm falls below this
  double ftol = 1e-13;     ///< stop when an accepted step improves f by less than this
};

/// Quasi-Newton minimization with central finite-difference gradients and a
/// monotone backtracking (Armijo) line search, so the trace never increases.
OptimResult lbfgs_minimize(const Objective& f, std::vector<double> x0, const LbfgsOptions& opt = {});

struct NelderMeadOptions {
  int max_evaluations = 2000;
  double initial_step = 0.5;
  double xtol = 1e-6;
  double ftol = 1e-10;
  double lower = -6.283185307179586;
  double upper = 6.283185307179586;
};

/// Nelder-Mead simplex search with every vertex clamped to [lower, upper]. On
/// convergence the simplex is rebuilt around the best point until that stops helping.
OptimResult nelder_mead_minimize(const Objective& f, std::vector<double> x0,
                                 const NelderMeadOptions& opt = {});

}  // namespace lqsci
