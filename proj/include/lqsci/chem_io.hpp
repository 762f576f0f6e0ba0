// Copyright 2026 The lossy-qsci Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file chem_io.hpp
 * @brief FCIDUMP ingestion and the energy-sorted spin-orbital ordering.
 *
 * Integrals are spatial and stored in chemists' notation (pq|rs). All energies
 * are in Hartree.
 */

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lqsci/ordering.hpp"

namespace lqsci {

class IntegralTable {
 public:
  IntegralTable() = default;
  IntegralTable(int n_spatial, int n_electrons);

  int n_spatial() const noexcept { return n_; }
  int n_spin_orbitals() const noexcept { return 2 * n_; }
  int n_electrons() const noexcept { return n_electrons_; }
  int ms2() const noexcept { return ms2_; }
  void set_ms2(int ms2) noexcept { ms2_ = ms2; }
  void set_n_electrons(int n) noexcept { n_electrons_ = n; }

  double core_energy() const noexcept { return core_; }
  void set_core_energy(double e) noexcept { core_ = e; }

  double one_body(int p, int q) const { return h1_[static_cast<std::size_t>(p) * n_ + q]; }
  /// Sets h_pq and h_qp.
  void set_one_body(int p, int q, double v);

  double two_body(int p, int q, int r, int s) const { return h2_[index(p, q, r, s)]; }
  /// Sets (pq|rs) and its seven symmetry images.
  void set_two_body(int p, int q, int r, int s, double v);

  const std::optional<std::vector<double>>& orbital_energies() const noexcept { return eps_; }
  void set_orbital_energies(std::vector<double> e);

  /// Table with spatial orbital i of the result equal to orbital order[i] of this one.
  IntegralTable permuted(const std::vector<int>& order) const;

 private:
  std::size_t index(int p, int q, int r, int s) const noexcept {
    return ((static_cast<std::size_t>(p) * n_ + q) * n_ + r) * n_ + s;
  }
  int n_ = 0;
  int n_electrons_ = 0;
  int ms2_ = 0;
  double core_ = 0.0;
  std::vector<double> h1_;
  std::vector<double> h2_;
  std::optional<std::vector<double>> eps_;
};

/**
 * Parses FCIDUMP text: a `&FCI NORB=..,NELEC=..` namelist closed by `&END` or
 * `/`, then `value i j k l` records with 1-based indices (`i j 0 0` one-body,
 * `0 0 0 0` core energy). Without a namelist, NORB is the largest index seen
 * and NELEC is 0. Throws ParseError carrying the offending line number.
 */
IntegralTable parse_fcidump(std::string_view text);

/// Writes every symmetry-unique nonzero value with 17 significant digits.
std::string serialize_fcidump(const IntegralTable& t);

/// Key/value sidecar (`key = value` per line) shipped next to fixtures.
using FixtureMeta = std::map<std::string, std::string>;
FixtureMeta parse_meta(std::string_view text);

struct Fixture {
  std::string name;
  IntegralTable table;
  FixtureMeta meta;
  /// Convenience lookup of a numeric meta value.
  std::optional<double> meta_number(const std::string& key) const;
};

/// Loads `path` and, when present, the `.meta` sidecar with the same stem
/// (orbital energies are attached to the table). Throws FixtureError.
Fixture load_fixture(const std::filesystem::path& path);

/**
 * Sorts spatial orbitals by orbital energy (diag h_pq when absent), ties by
 * index, and maps spin orbital 2p+s of the input to bit 2 rank(p) + s.
 */
SpinOrbitalOrdering chemical_ordering(const IntegralTable& t);

/// Spatial orbitals in ascending-energy order (the permutation behind chemical_ordering).
std::vector<int> energy_order(const IntegralTable& t);

/// The table re-indexed so that chemical_ordering of the result is the identity.
IntegralTable sort_by_energy(const IntegralTable& t);

}  // namespace lqsci
