// Copyright 2026 The lossy-qsci Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file eigensolver.hpp
 * @brief Lowest eigenpair of real symmetric operators.
 */

#pragma once

#include <functional>

#include <Eigen/Dense>

namespace lqsci {

struct EigenResult {
  double energy = 0.0;      ///< lowest eigenvalue (Hartree)
  Eigen::VectorXd vector;   ///< normalized eigenvector
  int iterations = 0;       ///< solver steps (0 for the direct solver)
  double residual = 0.0;    ///< ||H v - E v||_2
};

/// y = A x for a symmetric operator of dimension `dim`.
using MatVec = std::function<void(const Eigen::VectorXd& x, Eigen::VectorXd& y)>;

struct DavidsonOptions {
  double tol = 1e-9;       ///< residual norm target
  int max_iterations = 1000;
  int max_subspace = 40;   ///< restart size
};

/// Direct dense solver (self-adjoint eigendecomposition).
EigenResult lowest_eigenpair_dense(const Eigen::MatrixXd& a);

/**
 * Restarted Davidson iteration with diagonal preconditioning and two-pass
 * Gram-Schmidt re-orthogonalization. Throws SolverError with the best residual
 * when max_iterations is reached.
 */
EigenResult lowest_eigenpair_davidson(const MatVec& apply, const Eigen::VectorXd& diagonal,
                                      const DavidsonOptions& opts = {},
                                      const Eigen::VectorXd* guess = nullptr);

}  // namespace lqsci
