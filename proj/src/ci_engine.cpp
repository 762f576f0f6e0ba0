// Copyright 2026 The lossy-qsci Authors
// SPDX-License-Identifier: Apache-2.0

#include "lqsci/ci_engine.hpp"

#include <cmath>
#include <unordered_set>

#include "lqsci/error.hpp"

namespace lqsci {

namespace {

constexpr std::uint64_t kEvenMask = 0x5555555555555555ULL;

// Occupied positions strictly below `pos`.
int occupied_below(const Determinant& d, int pos) {
  int count = 0;
  if (pos >= 64) {
    count += std::popcount(d.word(0));
    const int r = pos - 64;
    if (r) count += std::popcount(d.word(1) & ((std::uint64_t{1} << r) - 1));
  } else if (pos > 0) {
    count += std::popcount(d.word(0) & ((std::uint64_t{1} << pos) - 1));
  }
  return count;
}

// Applies a_pos (create = false) or a+_pos (create = true) in place; returns the sign.
int apply_op(Determinant& d, int pos, bool create) {
  const int sign = (occupied_below(d, pos) & 1) ? -1 : 1;
  d.set(pos, create);
  return sign;
}

inline int spatial(int k) { return k >> 1; }
inline int spin(int k) { return k & 1; }

void check_pair(const Determinant& a, const Determinant& b, const IntegralTable& t) {
  if (a.size() != t.n_spin_orbitals() || b.size() != t.n_spin_orbitals()) {
    throw DomainError("determinant length does not match the integral table");
  }
}

}  // namespace

int count_alpha(const Determinant& d) {
  return std::popcount(d.word(0) & kEvenMask) + std::popcount(d.word(1) & kEvenMask);
}

std::vector<Determinant> enumerate_determinants(int m_spin, int n, std::optional<SzConstraint> sz,
                                                double guard) {
  if (n < 0 || m_spin < 0 || n > m_spin || m_spin > kMaxBits) {
    throw DomainError("enumerate_determinants requires 0 <= n <= m_spin <= 128");
  }
  if (sz) {
    if (sz->n_alpha < 0 || sz->n_beta < 0 || sz->n_alpha + sz->n_beta != n ||
        sz->n_alpha > (m_spin + 1) / 2 || sz->n_beta > m_spin / 2) {
      throw DomainError("spin constraint inconsistent with n");
    }
  }
  if (binomial(m_spin, n) > guard) throw CapacityError("determinant space exceeds guard");
  std::vector<Determinant> out;
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  while (true) {
    Determinant d(m_spin);
    for (int i : idx) d.set(i);
    if (!sz || count_alpha(d) == sz->n_alpha) out.push_back(d);
    int i = n - 1;
    while (i >= 0 && idx[i] == m_spin - n + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < n; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

double diagonal_energy(const Determinant& d, const IntegralTable& t) {
  check_pair(d, d, t);
  const auto occ = d.ones();
  double e = t.core_energy();
  for (std::size_t a = 0; a < occ.size(); ++a) {
    const int p = spatial(occ[a]);
    e += t.one_body(p, p);
    for (std::size_t b = a + 1; b < occ.size(); ++b) {
      const int q = spatial(occ[b]);
      e += t.two_body(p, p, q, q);
      if (spin(occ[a]) == spin(occ[b])) e -= t.two_body(p, q, q, p);
    }
  }
  return e;
}

double hamiltonian_element(const Determinant& bra, const Determinant& ket,
                           const IntegralTable& t) {
  check_pair(bra, ket, t);
  if (bra.weight() != ket.weight()) throw DomainError("determinants differ in electron count");
  Determinant diff = bra ^ ket;
  const int nd = diff.weight();
  if (nd == 0) return diagonal_energy(ket, t);
  if (nd > 4) return 0.0;

  int holes[2], parts[2];
  int nh = 0, np = 0;
  for (int k : diff.ones()) {
    if (ket.test(k)) {
      holes[nh++] = k;
    } else {
      parts[np++] = k;
    }
  }

  if (nd == 2) {
    const int hp = holes[0], pr = parts[0];
    if (spin(hp) != spin(pr)) return 0.0;
    Determinant work = ket;
    int sign = apply_op(work, hp, false);
    sign *= apply_op(work, pr, true);
    const int p = spatial(hp), r = spatial(pr);
    double v = t.one_body(r, p);
    for (int k : ket.ones()) {
      if (k == hp) continue;
      const int q = spatial(k);
      v += t.two_body(r, p, q, q);
      if (spin(k) == spin(hp)) v -= t.two_body(r, q, q, p);
    }
    return sign * v;
  }

  // Double excitation: <bra| a+_R1 a+_R2 a_P2 a_P1 |ket> <R1 R2 || P1 P2>.
  const int p1 = holes[0], p2 = holes[1], r1 = parts[0], r2 = parts[1];
  double v = 0.0;
  if (spin(r1) == spin(p1) && spin(r2) == spin(p2)) {
    v += t.two_body(spatial(r1), spatial(p1), spatial(r2), spatial(p2));
  }
  if (spin(r1) == spin(p2) && spin(r2) == spin(p1)) {
    v -= t.two_body(spatial(r1), spatial(p2), spatial(r2), spatial(p1));
  }
  if (v == 0.0) return 0.0;
  Determinant work = ket;
  int sign = apply_op(work, p1, false);
  sign *= apply_op(work, p2, false);
  sign *= apply_op(work, r2, true);
  sign *= apply_op(work, r1, true);
  return sign * v;
}

double SubspaceHamiltonian::at(int i, int j) const {
  return dense_mode_ ? dense_(i, j) : sparse_.coeff(i, j);
}

Eigen::VectorXd SubspaceHamiltonian::diagonal() const {
  return dense_mode_ ? Eigen::VectorXd(dense_.diagonal()) : Eigen::VectorXd(sparse_.diagonal());
}

void SubspaceHamiltonian::apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const {
  if (dense_mode_) {
    y.noalias() = dense_ * x;
  } else {
    y.noalias() = sparse_ * x;
  }
}

Eigen::MatrixXd SubspaceHamiltonian::to_dense() const {
  return dense_mode_ ? dense_ : Eigen::MatrixXd(sparse_);
}

SubspaceHamiltonian build_subspace_hamiltonian(const std::vector<Determinant>& dets,
                                               const IntegralTable& t, int dense_threshold) {
  SubspaceHamiltonian h;
  h.dets_ = dets;
  const int n = static_cast<int>(dets.size());
  if (n == 0) return h;
  const int w = dets.front().weight();
  std::unordered_set<Determinant, BitsHash> seen;
  seen.reserve(2 * n);
  for (const auto& d : dets) {
    if (d.size() != t.n_spin_orbitals()) throw DomainError("determinant length mismatch");
    if (d.weight() != w) throw DomainError("determinants must share one electron count");
    if (!seen.insert(d).second) throw DomainError("duplicate determinant in subspace");
  }
  h.dense_mode_ = n < dense_threshold;
  if (h.dense_mode_) {
    h.dense_.resize(n, n);
    for (int i = 0; i < n; ++i) {
      h.dense_(i, i) = diagonal_energy(dets[i], t);
      for (int j = 0; j < i; ++j) {
        const double v = hamiltonian_element(dets[i], dets[j], t);
        h.dense_(i, j) = v;
        h.dense_(j, i) = v;
      }
    }
    return h;
  }
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(n) * 64);
  for (int i = 0; i < n; ++i) {
    trip.emplace_back(i, i, diagonal_energy(dets[i], t));
    const Determinant& di = dets[i];
    for (int j = 0; j < i; ++j) {
      const Determinant& dj = dets[j];
      const int nd = std::popcount(di.word(0) ^ dj.word(0)) + std::popcount(di.word(1) ^ dj.word(1));
      if (nd > 4) continue;
      const double v = hamiltonian_element(di, dj, t);
      if (v == 0.0) continue;
      trip.emplace_back(i, j, v);
      trip.emplace_back(j, i, v);
    }
  }
  h.sparse_.resize(n, n);
  h.sparse_.setFromTriplets(trip.begin(), trip.end());
  return h;
}

EigenResult ground_state(const SubspaceHamiltonian& h, double tol) {
  if (h.size() == 0) throw DomainError("ground_state of an empty subspace");
  if (h.is_dense()) return lowest_eigenpair_dense(h.to_dense());
  DavidsonOptions opts;
  opts.tol = tol;
  return lowest_eigenpair_davidson(
      [&h](const Eigen::VectorXd& x, Eigen::VectorXd& y) { h.apply(x, y); }, h.diagonal(), opts);
}

EigenResult full_ci(const IntegralTable& t, int n, std::optional<SzConstraint> sz, double tol) {
  const auto dets = enumerate_determinants(t.n_spin_orbitals(), n, sz, kFullCiGuard);
  return ground_state(build_subspace_hamiltonian(dets, t), tol);
}

double subspace_energy(const std::vector<Determinant>& dets, const IntegralTable& t, double tol) {
  return ground_state(build_subspace_hamiltonian(dets, t), tol).energy;
}

}  // namespace lqsci
