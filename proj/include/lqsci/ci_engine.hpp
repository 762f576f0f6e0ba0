// Copyright 2026 The lossy-qsci Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file ci_engine.hpp
 * @brief Determinant spaces, Slater-Condon matrix elements and subspace diagonalization.
 *
 * Determinants live in the canonical interleaved basis of an IntegralTable:
 * bit 2p is spatial orbital p spin up, bit 2p+1 spin down. A determinant is
 * a+_{i1} a+_{i2} ... a+_{iN} |0> with i1 < i2 < ... < iN, so annihilating or
 * creating at position k picks up (-1)^(number of occupied positions below k).
 */

#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "lqsci/bits.hpp"
#include "lqsci/chem_io.hpp"
#include "lqsci/eigensolver.hpp"

namespace lqsci {

struct SzConstraint {
  int n_alpha = 0;
  int n_beta = 0;
};

/// Number of spin-up electrons (even positions).
int count_alpha(const Determinant& d);

/// Dimension below which subspace Hamiltonians are stored dense and solved directly.
inline constexpr int kDenseThreshold = 512;
/// Default Davidson residual tolerance (Hartree).
inline constexpr double kKrylovTol = 1e-9;
/// Largest determinant space full_ci will build.
inline constexpr double kFullCiGuard = 1e5;

/**
 * All weight-n strings over m_spin positions (optionally restricted to a spin
 * sector) in lexicographic order. Throws CapacityError beyond `guard` strings.
 */
std::vector<Determinant> enumerate_determinants(int m_spin, int n,
                                                std::optional<SzConstraint> sz = std::nullopt,
                                                double guard = 1e7);

/// <d|H|d> including the core energy.
double diagonal_energy(const Determinant& d, const IntegralTable& t);

/// <bra|H|ket> by the Slater-Condon rules; core energy on the diagonal only.
double hamiltonian_element(const Determinant& bra, const Determinant& ket,
                           const IntegralTable& t);

/// Real symmetric Hamiltonian projected onto an ordered determinant list.
class SubspaceHamiltonian {
 public:
  SubspaceHamiltonian() = default;

  const std::vector<Determinant>& dets() const noexcept { return dets_; }
  int size() const noexcept { return static_cast<int>(dets_.size()); }
  bool is_dense() const noexcept { return dense_mode_; }
  double at(int i, int j) const;
  Eigen::VectorXd diagonal() const;
  void apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const;
  /// Dense copy (for tests and small spaces).
  Eigen::MatrixXd to_dense() const;

 private:
  friend SubspaceHamiltonian build_subspace_hamiltonian(const std::vector<Determinant>&,
                                                        const IntegralTable&, int);
  std::vector<Determinant> dets_;
  bool dense_mode_ = true;
  Eigen::MatrixXd dense_;
  Eigen::SparseMatrix<double> sparse_;
};

/**
 * matrix(i, j) = hamiltonian_element(dets[i], dets[j], t). Dense below
 * `dense_threshold`, sparse (only pairs within a double excitation) above.
 * Throws DomainError on duplicates or mixed weights.
 */
SubspaceHamiltonian build_subspace_hamiltonian(const std::vector<Determinant>& dets,
                                               const IntegralTable& t,
                                               int dense_threshold = kDenseThreshold);

/// Lowest eigenpair: direct below the dense threshold, restarted Davidson above.
EigenResult ground_state(const SubspaceHamiltonian& h, double tol = kKrylovTol);

/// enumerate -> build -> ground_state, refusing spaces beyond kFullCiGuard.
EigenResult full_ci(const IntegralTable& t, int n, std::optional<SzConstraint> sz = std::nullopt,
                    double tol = kKrylovTol);

/// Convenience: lowest eigenvalue of the Hamiltonian restricted to `dets`.
double subspace_energy(const std::vector<Determinant>& dets, const IntegralTable& t,
                       double tol = kKrylovTol);

}  // namespace lqsci
