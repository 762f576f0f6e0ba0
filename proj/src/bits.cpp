// Copyright 2026 The lossy-qsci Authors
// SPDX-License-Identifier: Apache-2.0

#include "lqsci/bits.hpp"

#include <algorithm>
#include <cmath>

namespace lqsci {
namespace detail {

void BitStorage::check_size(int size) {
  if (size < 0 || size > kMaxBits) {
    throw DomainError("bit string length " + std::to_string(size) + " outside [0, " +
                      std::to_string(kMaxBits) + "]");
  }
}

BitStorage::BitStorage(int size) : size_(size) { check_size(size); }

std::vector<int> BitStorage::ones() const {
  std::vector<int> out;
  out.reserve(weight());
  for (int k = 0; k < 2; ++k) {
    std::uint64_t w = words_[k];
    while (w) {
      out.push_back(64 * k + std::countr_zero(w));
      w &= w - 1;
    }
  }
  return out;
}

std::string BitStorage::to_string() const {
  std::string s(size_, '0');
  for (int i = 0; i < size_; ++i) {
    if (test(i)) s[i] = '1';
  }
  return s;
}

std::uint64_t BitStorage::to_index() const {
  if (size_ > 64) throw DomainError("bit string too long for an integer index");
  return words_[0];
}

bool BitStorage::lex_less(const BitStorage& o) const noexcept {
  for (int k = 0; k < 2; ++k) {
    const std::uint64_t diff = words_[k] ^ o.words_[k];
    if (diff) {
      const std::uint64_t low = diff & (~diff + 1);
      return (words_[k] & low) != 0;
    }
  }
  return false;
}

std::size_t BitStorage::hash() const noexcept {
  return static_cast<std::size_t>(mix_seed(words_[0], mix_seed(words_[1], size_)));
}

}  // namespace detail

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) noexcept {
  std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t fnv1a(std::string_view bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace lqsci
