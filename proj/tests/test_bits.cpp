// Copyright 2026 The lossy-qsci Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <set>

#include <gtest/gtest.h>

#include "lqsci/bits.hpp"

namespace lqsci {
namespace {

TEST(Bits, TextRoundTripKeepsBitZeroLeftmost) {
  const auto b = OccupationString::from_string("1001100");
  EXPECT_EQ(b.size(), 7);
  EXPECT_TRUE(b.test(0));
  EXPECT_FALSE(b.test(1));
  EXPECT_TRUE(b.test(3));
  EXPECT_EQ(b.weight(), 3);
  EXPECT_EQ(b.to_string(), "1001100");
  EXPECT_EQ(b.ones(), (std::vector<int>{0, 3, 4}));
}

TEST(Bits, IndexWeightsBitIByTwoToTheI) {
  const auto b = OccupationString::from_string("1101");
  EXPECT_EQ(b.to_index(), 1u + 2u + 8u);
  EXPECT_EQ(OccupationString::from_index(11, 4), b);
  EXPECT_EQ(OccupationString::from_index(0xFF, 4).to_string(), "1111");
}

TEST(Bits, RejectsBadCharactersAndPositions) {
  EXPECT_THROW(OccupationString::from_string("10a1"), DomainError);
  EXPECT_THROW(OccupationString::from_positions(4, {4}), DomainError);
  EXPECT_THROW(OccupationString(kMaxBits + 1), DomainError);
}

TEST(Bits, LexicographicOrderComparesSetPositions) {
  const auto a = OccupationString::from_string("1100");
  const auto b = OccupationString::from_string("1010");
  const auto c = OccupationString::from_string("0110");
  EXPECT_TRUE(a < b);
  EXPECT_TRUE(b < c);
  EXPECT_FALSE(c < a);
  EXPECT_FALSE(a < a);
}

TEST(Bits, WideStringsUseBothWords) {
  OccupationString b(100);
  b.set(3);
  b.set(70);
  b.set(99);
  EXPECT_EQ(b.weight(), 3);
  EXPECT_EQ(b.ones(), (std::vector<int>{3, 70, 99}));
  auto c = b;
  c.flip(70);
  EXPECT_EQ((b ^ c).ones(), std::vector<int>{70});
  EXPECT_EQ(OccupationString::from_string(b.to_string()), b);
}

TEST(Bits, XorRequiresEqualLengths) {
  auto a = Codeword::from_string("101");
  const auto b = Codeword::from_string("1010");
  EXPECT_THROW(a ^= b, DomainError);
}

TEST(Bits, BinomialMatchesPascal) {
  for (int n = 0; n <= 30; ++n)
    for (int k = 1; k < n; ++k) EXPECT_DOUBLE_EQ(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
  EXPECT_DOUBLE_EQ(binomial(16, 6), 8008.0);
  EXPECT_DOUBLE_EQ(binomial(5, 7), 0.0);
}

TEST(Bits, MixedSeedsAreDistinct) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t a = 0; a < 50; ++a)
    for (std::uint64_t b = 0; b < 50; ++b) seen.insert(mix_seed(a, b));
  EXPECT_EQ(seen.size(), 2500u);
  EXPECT_EQ(mix_seed(7, 3), mix_seed(7, 3));
}

TEST(Bits, HashSeparatesNearbyStrings) {
  std::set<std::size_t> seen;
  for (std::uint64_t k = 0; k < 1024; ++k) seen.insert(OccupationString::from_index(k, 10).hash());
  EXPECT_EQ(seen.size(), 1024u);
}

}  // namespace
}  // namespace lqsci
