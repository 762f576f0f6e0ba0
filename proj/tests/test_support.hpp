// Copyright 2026 The lossy-qsci Authors
// SPDX-License-Identifier: Apache-2.0

// Independent oracles shared by the test binaries. Nothing here calls into the
// library code it is used to check.

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lqsci/bits.hpp"
#include "lqsci/chem_io.hpp"

namespace lqsci::testing {

inline std::filesystem::path fixture_path(const std::string& name) {
  return std::filesystem::path(LQSCI_FIXTURE_DIR) / name;
}

inline std::filesystem::path config_path(const std::string& name) {
  return std::filesystem::path(LQSCI_CONFIG_DIR) / name;
}

/// Fixtures small enough for the Fock-space oracle (at most 12 spin orbitals).
inline std::vector<std::string> small_fixtures() {
  return {"h2_sto3g_0.500.fcidump", "h2_sto3g_0.735.fcidump", "h2_sto3g_1.000.fcidump",
          "h2_sto3g_1.500.fcidump", "h2_sto3g_2.000.fcidump", "h2_631g_4.000.fcidump",
          "lih_sto3g_2.500_6_2.fcidump", "lih_sto3g_2.500_10_2.fcidump"};
}

// ----------------------------------------------------------- Fock-space operators

/// Second-quantized operators acting on occupation integers (bit i = spin orbital i).
/// Returns false when the operator annihilates the state.
inline bool annihilate(std::uint64_t& state, int i, int& sign) {
  const std::uint64_t bit = std::uint64_t{1} << i;
  if (!(state & bit)) return false;
  if (std::popcount(state & (bit - 1)) & 1) sign = -sign;
  state ^= bit;
  return true;
}

inline bool create(std::uint64_t& state, int i, int& sign) {
  const std::uint64_t bit = std::uint64_t{1} << i;
  if (state & bit) return false;
  if (std::popcount(state & (bit - 1)) & 1) sign = -sign;
  state ^= bit;
  return true;
}

/**
 * H|ket> from the operator expansion
 *   E_core + sum h_pq a+_p a_q + 1/2 sum (pq|rs) a+_ps a+_rt a_st a_qs
 * over spin orbitals 2p + sigma, accumulated into a map of basis states.
 */
inline std::map<std::uint64_t, double> apply_operator_hamiltonian(const IntegralTable& t, std::uint64_t ket) {
  std::map<std::uint64_t, double> out;
  const int n = t.n_spatial();
  out[ket] += t.core_energy();
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      const double h = t.one_body(p, q);
      if (h == 0.0) continue;
      for (int s = 0; s < 2; ++s) {
        std::uint64_t st = ket;
        int sign = 1;
        if (!annihilate(st, 2 * q + s, sign)) continue;
        if (!create(st, 2 * p + s, sign)) continue;
        out[st] += sign * h;
      }
    }
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          const double v = t.two_body(p, q, r, s);
          if (v == 0.0) continue;
          for (int sig = 0; sig < 2; ++sig)
            for (int tau = 0; tau < 2; ++tau) {
              std::uint64_t st = ket;
              int sign = 1;
              if (!annihilate(st, 2 * q + sig, sign)) continue;
              if (!annihilate(st, 2 * s + tau, sign)) continue;
              if (!create(st, 2 * r + tau, sign)) continue;
              if (!create(st, 2 * p + sig, sign)) continue;
              out[st] += 0.5 * sign * v;
            }
        }
  return out;
}

/// <dets[i]|H|dets[j]> built from the operator expansion.
inline Eigen::MatrixXd operator_matrix(const IntegralTable& t, const std::vector<Determinant>& dets) {
  const auto n = static_cast<Eigen::Index>(dets.size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  std::map<std::uint64_t, Eigen::Index> where;
  for (Eigen::Index i = 0; i < n; ++i) where[dets[static_cast<std::size_t>(i)].to_index()] = i;
  for (Eigen::Index j = 0; j < n; ++j)
    for (const auto& [state, v] : apply_operator_hamiltonian(t, dets[static_cast<std::size_t>(j)].to_index()))
      if (auto it = where.find(state); it != where.end()) h(it->second, j) += v;
  return h;
}

/// All weight-n strings of length m by brute force over integers.
inline std::vector<Determinant> all_strings(int m, int n) {
  std::vector<Determinant> out;
  for (std::uint64_t k = 0; k < (std::uint64_t{1} << m); ++k)
    if (std::popcount(k) == n) out.push_back(Determinant::from_index(k, m));
  return out;
}

// ------------------------------------------------------------------- linear algebra

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
inline std::vector<double> jacobi_eigenvalues(Eigen::MatrixXd a) {
  const Eigen::Index n = a.rows();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (off < 1e-26) break;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) < 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> ev(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) ev[static_cast<std::size_t>(i)] = a(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

/// Null-space basis of a GF(2) matrix given row-major as bool rows, by elimination.
inline std::vector<std::vector<bool>> gf2_kernel(std::vector<std::vector<bool>> rows, int cols) {
  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < cols && r < static_cast<int>(rows.size()); ++c) {
    int piv = -1;
    for (int i = r; i < static_cast<int>(rows.size()); ++i)
      if (rows[i][c]) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[r], rows[piv]);
    for (int i = 0; i < static_cast<int>(rows.size()); ++i)
      if (i != r && rows[i][c])
        for (int k = 0; k < cols; ++k) rows[i][k] = rows[i][k] != rows[r][k];
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<bool>> basis;
  for (int f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<bool> v(cols, false);
    v[f] = true;
    for (std::size_t i = 0; i < pivot_col.size(); ++i)
      if (rows[i][f]) v[pivot_col[i]] = true;
    basis.push_back(v);
  }
  return basis;
}

}  // namespace lqsci::testing
