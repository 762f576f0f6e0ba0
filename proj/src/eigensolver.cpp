// Copyright 2026 The lossy-qsci Authors
// SPDX-License-Identifier: Apache-2.0

#include "lqsci/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "lqsci/error.hpp"

namespace lqsci {

EigenResult lowest_eigenpair_dense(const Eigen::MatrixXd& a) {
  if (a.rows() == 0 || a.rows() != a.cols()) throw DomainError("need a nonempty square matrix");
  EigenResult r;
  if (a.rows() == 1) {
    r.energy = a(0, 0);
    r.vector = Eigen::VectorXd::Ones(1);
    return r;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  if (es.info() != Eigen::Success) throw SolverError("dense eigensolver failed", 0.0);
  r.energy = es.eigenvalues()(0);
  r.vector = es.eigenvectors().col(0);
  r.vector.normalize();
  r.residual = (a * r.vector - r.energy * r.vector).norm();
  return r;
}

namespace {

// Orthogonalizes v against the first k columns of basis (twice) and normalizes.
// Returns false if v is numerically dependent.
bool orthonormalize(const Eigen::MatrixXd& basis, int k, Eigen::VectorXd& v) {
  const double start = v.norm();
  if (start == 0.0) return false;
  for (int pass = 0; pass < 2; ++pass) {
    if (k > 0) v -= basis.leftCols(k) * (basis.leftCols(k).transpose() * v);
  }
  const double nrm = v.norm();
  if (nrm < 1e-10 * start || nrm < 1e-14) return false;
  v /= nrm;
  return true;
}

}  // namespace

EigenResult lowest_eigenpair_davidson(const MatVec& apply, const Eigen::VectorXd& diagonal,
                                      const DavidsonOptions& opts, const Eigen::VectorXd* guess) {
  const Eigen::Index n = diagonal.size();
  if (n == 0) throw DomainError("empty operator");
  const int max_sub = static_cast<int>(std::min<Eigen::Index>(opts.max_subspace, n));

  Eigen::MatrixXd v(n, max_sub);
  Eigen::MatrixXd av(n, max_sub);
  int k = 0;

  Eigen::VectorXd x;
  if (guess && guess->size() == n && guess->norm() > 0) {
    x = *guess;
  } else {
    x = Eigen::VectorXd::Zero(n);
    Eigen::Index imin;
    diagonal.minCoeff(&imin);
    x(imin) = 1.0;
  }
  x.normalize();
  v.col(0) = x;
  {
    Eigen::VectorXd y(n);
    apply(v.col(0), y);
    av.col(0) = y;
  }
  k = 1;

  double best_res = std::numeric_limits<double>::infinity();
  EigenResult best;
  for (int it = 1; it <= opts.max_iterations; ++it) {
    const Eigen::MatrixXd h = v.leftCols(k).transpose() * av.leftCols(k);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (h + h.transpose()));
    const double theta = es.eigenvalues()(0);
    const Eigen::VectorXd s = es.eigenvectors().col(0);
    Eigen::VectorXd u = v.leftCols(k) * s;
    Eigen::VectorXd au = av.leftCols(k) * s;
    const double un = u.norm();
    u /= un;
    au /= un;
    Eigen::VectorXd r = au - theta * u;
    const double res = r.norm();
    if (res < best_res) {
      best_res = res;
      best.energy = theta;
      best.vector = u;
      best.residual = res;
      best.iterations = it;
    }
    if (res <= opts.tol || k == n) {
      best.energy = theta;
      best.vector = u;
      best.residual = res;
      best.iterations = it;
      return best;
    }
    // Diagonal (Jacobi) preconditioner.
    Eigen::VectorXd t(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      double d = diagonal(i) - theta;
      if (std::abs(d) < 1e-8) d = d < 0 ? -1e-8 : 1e-8;
      t(i) = -r(i) / d;
    }
    if (k == max_sub) {
      // Thick restart keeping the current Ritz vector.
      v.col(0) = u;
      av.col(0) = au;
      k = 1;
    }
    if (!orthonormalize(v, k, t)) {
      t = r;
      if (!orthonormalize(v, k, t)) {
        best.vector = u;
        best.energy = theta;
        best.residual = res;
        best.iterations = it;
        if (res <= 100 * opts.tol) return best;
        throw SolverError("Davidson subspace collapsed", best_res);
      }
    }
    v.col(k) = t;
    Eigen::VectorXd y(n);
    apply(v.col(k), y);
    av.col(k) = y;
    ++k;
  }
  throw SolverError("Davidson did not converge; best residual " + std::to_string(best_res),
                    best_res);
}

}  // namespace lqsci
