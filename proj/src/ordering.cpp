// Copyright 2026 The lossy-qsci Authors
// SPDX-License-Identifier: Apache-2.0

#include "lqsci/ordering.hpp"

#include <numeric>

namespace lqsci {

SpinOrbitalOrdering::SpinOrbitalOrdering(std::vector<int> perm) : perm_(std::move(perm)) {
  std::vector<char> seen(perm_.size(), 0);
  for (int p : perm_) {
    if (p < 0 || p >= size() || seen[p]) throw DomainError("ordering is not a permutation");
    seen[p] = 1;
  }
}

SpinOrbitalOrdering SpinOrbitalOrdering::identity(int m) {
  std::vector<int> p(m);
  std::iota(p.begin(), p.end(), 0);
  return SpinOrbitalOrdering(std::move(p));
}

bool SpinOrbitalOrdering::is_identity() const noexcept {
  for (int i = 0; i < size(); ++i) {
    if (perm_[i] != i) return false;
  }
  return true;
}

SpinOrbitalOrdering SpinOrbitalOrdering::inverse() const {
  std::vector<int> inv(perm_.size());
  for (int i = 0; i < size(); ++i) inv[perm_[i]] = i;
  return SpinOrbitalOrdering(std::move(inv));
}

OccupationString SpinOrbitalOrdering::apply(const OccupationString& b) const {
  if (perm_.empty()) return b;
  if (b.size() != size()) throw DomainError("ordering length does not match bit string");
  OccupationString out(b.size());
  for (int i : b.ones()) out.set(perm_[i]);
  return out;
}

}  // namespace lqsci
