// Copyright 2026 The lossy-qsci Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file bits.hpp
 * @brief Fixed-capacity bit strings for occupation strings and codewords.
 *
 * Bit-order convention, used everywhere in the library: bit 0 is the leftmost
 * character in textual I/O. Under chemical ordering bit 2i is the spin-up and
 * bit 2i+1 the spin-down orbital of the i-th lowest-energy spatial orbital.
 * When a bit string is read as an integer (e.g. a statevector index), bit i
 * carries weight 2^i.
 *
 * "Lexicographic" order compares the ascending lists of set positions, so for
 * two strings of equal weight the one whose lowest differing bit is set sorts
 * first: "1100" < "1010" < "0110".
 */

#pragma once

#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "lqsci/error.hpp"

namespace lqsci {

inline constexpr int kMaxBits = 128;

namespace detail {

class BitStorage {
 public:
  BitStorage() = default;
  explicit BitStorage(int size);

  int size() const noexcept { return size_; }
  bool test(int i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(int i, bool v = true) noexcept {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (v) {
      words_[i >> 6] |= mask;
    } else {
      words_[i >> 6] &= ~mask;
    }
  }
  void flip(int i) noexcept { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }
  int weight() const noexcept { return std::popcount(words_[0]) + std::popcount(words_[1]); }
  bool none() const noexcept { return (words_[0] | words_[1]) == 0; }

  std::uint64_t word(int k) const noexcept { return words_[k]; }
  void set_word(int k, std::uint64_t w) noexcept { words_[k] = w; }

  /// Positions of set bits in ascending order.
  std::vector<int> ones() const;
  std::string to_string() const;

  /// Value with bit i weighted 2^i. Requires size() <= 64.
  std::uint64_t to_index() const;

  void xor_with(const BitStorage& o) noexcept {
    words_[0] ^= o.words_[0];
    words_[1] ^= o.words_[1];
  }

  bool operator==(const BitStorage& o) const noexcept = default;

  /// Lexicographic order on set-position lists (see file comment).
  bool lex_less(const BitStorage& o) const noexcept;

  std::size_t hash() const noexcept;

 protected:
  static void check_size(int size);
  std::array<std::uint64_t, 2> words_{};
  int size_ = 0;
};

}  // namespace detail

/// Strongly typed bit string; Tag separates occupation strings from codewords.
template <class Tag>
class Bits : public detail::BitStorage {
 public:
  Bits() = default;
  explicit Bits(int size) : BitStorage(size) {}

  static Bits from_string(std::string_view text) {
    Bits b(static_cast<int>(text.size()));
    for (int i = 0; i < b.size(); ++i) {
      if (text[i] == '1') {
        b.set(i);
      } else if (text[i] != '0') {
        throw DomainError("bit string may only contain '0' and '1'");
      }
    }
    return b;
  }

  static Bits from_positions(int size, const std::vector<int>& positions) {
    Bits b(size);
    for (int p : positions) {
      if (p < 0 || p >= size) throw DomainError("bit position out of range");
      b.set(p);
    }
    return b;
  }

  static Bits from_index(std::uint64_t index, int size) {
    Bits b(size);
    b.words_[0] = index;
    if (size < 64) b.words_[0] &= (std::uint64_t{1} << size) - 1;
    return b;
  }

  Bits& operator^=(const Bits& o) {
    if (o.size_ != size_) throw DomainError("xor of bit strings with different lengths");
    xor_with(o);
    return *this;
  }
  friend Bits operator^(Bits a, const Bits& b) { return a ^= b; }

  bool operator==(const Bits& o) const noexcept = default;
  friend bool operator<(const Bits& a, const Bits& b) noexcept {
    if (a.size_ != b.size_) return a.size_ < b.size_;
    return a.lex_less(b);
  }
};

struct OccupationTag {};
struct CodewordTag {};

/// M-bit fermionic configuration; a valid N-electron configuration has weight N.
using OccupationString = Bits<OccupationTag>;
/// Q-bit encoded image of an occupation string.
using Codeword = Bits<CodewordTag>;
/// Occupation string in the canonical interleaved spin-orbital basis.
using Determinant = OccupationString;

struct BitsHash {
  template <class Tag>
  std::size_t operator()(const Bits<Tag>& b) const noexcept {
    return b.hash();
  }
};

/// Binomial coefficient as double (exact for the sizes used here).
double binomial(int n, int k);

/// Mixes a 64-bit value (splitmix64 finalizer); used to derive independent seeds.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b = 0) noexcept;

/// 64-bit FNV-1a over a byte string.
std::uint64_t fnv1a(std::string_view bytes) noexcept;

}  // namespace lqsci
