// Copyright 2026 The lossy-qsci Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "lqsci/bits.hpp"

namespace lqsci {

/// Bijection from spin-orbital index (2p + spin, spin 0 = up) to bit position.
class SpinOrbitalOrdering {
 public:
  SpinOrbitalOrdering() = default;
  /// Throws DomainError unless `perm` is a permutation of 0..size-1.
  explicit SpinOrbitalOrdering(std::vector<int> perm);

  static SpinOrbitalOrdering identity(int m);

  int size() const noexcept { return static_cast<int>(perm_.size()); }
  int position(int spin_orbital) const { return perm_.at(spin_orbital); }
  const std::vector<int>& perm() const noexcept { return perm_; }
  bool is_identity() const noexcept;
  SpinOrbitalOrdering inverse() const;

  /// Moves bit i of `b` to bit position(i).
  OccupationString apply(const OccupationString& b) const;

  bool operator==(const SpinOrbitalOrdering&) const = default;

 private:
  std::vector<int> perm_;
};

}  // namespace lqsci
