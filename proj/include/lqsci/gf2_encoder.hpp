// Copyright 2026 The lossy-qsci Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file gf2_encoder.hpp
 * @brief Random linear encoders G = [I_Q | D] over GF(2).
 *
 * An encoder maps an M-bit occupation string b to the Q-bit codeword G b:
 * the first Q bits of b XOR the D-columns selected by the trailing M - Q bits.
 * Chemical strategies feed determinants to G in energy order (bit 2i / 2i+1 =
 * up / down of the i-th lowest orbital), so configurations whose electrons sit
 * in the first Q positions pass through the identity block unchanged.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lqsci/bits.hpp"
#include "lqsci/ordering.hpp"

namespace lqsci {

enum class EncoderStrategy { Random, Chemical, BiasedChemical };

std::string to_string(EncoderStrategy s);
/// Accepts "random", "chemical", "biased_chemical" (also "biased").
EncoderStrategy parse_strategy(std::string_view text);

struct QubitBounds {
  int info_lower = 0;     ///< ceil(log2 C(m, n))
  double rle_lower = 0;   ///< n log2 m
  double rle_upper = 0;   ///< 2 n log2 m
};

/// Qubit-count bookkeeping; Q below info_lower is legal (lossy regime).
QubitBounds qubit_bounds(int m, int n);

/// Configurations the encoder must keep apart.
struct BiasSet {
  std::vector<OccupationString> configs;
  std::string source;

  /// Throws DomainError on mixed lengths/weights or duplicates.
  void validate() const;
  bool empty() const noexcept { return configs.empty(); }
};

class EncoderMatrix {
 public:
  EncoderMatrix() = default;
  EncoderMatrix(int m, int q, std::vector<Codeword> d_columns, EncoderStrategy strategy,
                SpinOrbitalOrdering ordering, std::uint64_t seed);

  int m() const noexcept { return m_; }
  int q() const noexcept { return q_; }
  EncoderStrategy strategy() const noexcept { return strategy_; }
  std::uint64_t seed() const noexcept { return seed_; }
  const SpinOrbitalOrdering& ordering() const noexcept { return ordering_; }

  /// Column j of D (0 <= j < m - q).
  const Codeword& d_column(int j) const { return d_.at(j); }
  const std::vector<Codeword>& d_columns() const noexcept { return d_; }
  /// Column j of the full matrix G (a unit vector for j < q).
  Codeword column(int j) const;
  bool entry(int row, int col) const;

  /// Hash of the serialized matrix; ties decoders to the encoder they were trained on.
  std::uint64_t fingerprint() const;

  bool operator==(const EncoderMatrix&) const = default;

 private:
  int m_ = 0;
  int q_ = 0;
  std::vector<Codeword> d_;
  EncoderStrategy strategy_ = EncoderStrategy::Chemical;
  SpinOrbitalOrdering ordering_;
  std::uint64_t seed_ = 0;
};

inline constexpr int kDefaultMaxRetries = 1000;

/**
 * Draws G = [I_Q | D] from a seeded std::mt19937_64.
 *
 * RNG-to-matrix procedure (stable across platforms, only raw engine words are
 * used):
 *   1. Random strategy only: Fisher-Yates over spin orbitals,
 *      for i = m-1 .. 1: j = engine() % (i + 1); swap(perm[i], perm[j]).
 *      Other strategies use `ordering` (identity when empty).
 *   2. For each D column j = 0 .. m-q-1: word0 = engine(), word1 = engine() if q > 64;
 *      keep the low q bits (bit r of the word = row r); redraw while zero.
 *   3. BiasedChemical: if the bias set collides, repeat step 2 with the same
 *      engine, at most max_retries more times.
 */
EncoderMatrix generate_encoder(int m, int q, EncoderStrategy strategy,
                               const SpinOrbitalOrdering& ordering = {},
                               const BiasSet* bias_set = nullptr, std::uint64_t seed = 0,
                               int max_retries = kDefaultMaxRetries);

/// G = I_m.
EncoderMatrix identity_encoder(int m);

/// G b over GF(2) on raw input positions. Throws DomainError on length mismatch.
Codeword encode(const EncoderMatrix& g, const OccupationString& b);

/// Codeword of a canonical-basis determinant: encode(g, ordering.apply(det)).
Codeword encode_determinant(const EncoderMatrix& g, const Determinant& det);

struct InjectivityResult {
  bool ok = true;
  std::size_t first = 0;   ///< earlier index of the colliding pair
  std::size_t second = 0;  ///< later index of the colliding pair
  explicit operator bool() const noexcept { return ok; }
};

/**
 * Scans `configs` in input order and reports the first index j whose codeword
 * equals that of some i < j (the smallest such i). Configs are canonical-basis
 * determinants, i.e. passed through the encoder's ordering.
 */
InjectivityResult check_injectivity(const EncoderMatrix& g,
                                    const std::vector<OccupationString>& configs);

/// Default per-tier sampling probabilities: 1.0, 0.5, 0.1, then halving.
std::vector<double> default_tier_probabilities(int tiers);

/**
 * Builds a bias set from excitations out of the first-Q-position reference:
 * tier k holds every weight-n string with exactly k electrons at positions
 * >= q, and each is kept with probability tier_probs[k-1]. Tiers beyond the
 * given list continue halving the last probability. At most `max_configs`.
 */
BiasSet excitation_bias_set(int m, int n, int q, std::vector<double> tier_probs,
                            std::uint64_t seed, std::size_t max_configs = 200);

/// Text form: header "RLE m q strategy seed", then q rows of m characters.
/// A non-identity ordering is appended as a final "order p0 p1 ..." line.
std::string serialize_encoder(const EncoderMatrix& g);
EncoderMatrix parse_encoder(std::string_view text);

}  // namespace lqsci
