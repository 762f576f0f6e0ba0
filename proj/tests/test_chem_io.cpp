// Copyright 2026 The lossy-qsci Authors
// SPDX-License-Identifier: Apache-2.0

#include <fstream>
#include <numeric>
#include <sstream>

#include <gtest/gtest.h>

#include "lqsci/chem_io.hpp"
#include "lqsci/ci_engine.hpp"
#include "test_support.hpp"

namespace lqsci {
namespace {

constexpr const char* kTiny =
    " &FCI NORB=2,NELEC=2,MS2=0,\n"
    "  ORBSYM=1,1,\n"
    "  ISYM=1,\n"
    " &END\n"
    "  0.5   1 1 1 1\n"
    "  0.1   2 1 1 1\n"
    "  0.3   2 2 1 1\n"
    "  0.05  2 1 2 1\n"
    "  0.4   2 2 2 2\n"
    " -1.2   1 1 0 0\n"
    "  0.02  2 1 0 0\n"
    " -0.6   2 2 0 0\n"
    "  0.7   0 0 0 0\n";

TEST(Fcidump, ParsesNamelistAndRecords) {
  const IntegralTable t = parse_fcidump(kTiny);
  EXPECT_EQ(t.n_spatial(), 2);
  EXPECT_EQ(t.n_electrons(), 2);
  EXPECT_EQ(t.ms2(), 0);
  EXPECT_DOUBLE_EQ(t.core_energy(), 0.7);
  EXPECT_DOUBLE_EQ(t.one_body(0, 0), -1.2);
  EXPECT_DOUBLE_EQ(t.one_body(1, 0), 0.02);
  EXPECT_DOUBLE_EQ(t.one_body(0, 1), 0.02);
  EXPECT_DOUBLE_EQ(t.two_body(0, 0, 0, 0), 0.5);
}

TEST(Fcidump, FillsEightfoldSymmetry) {
  const IntegralTable t = parse_fcidump(kTiny);
  // (21|11) given once.
  for (auto [p, q, r, s] : {std::array{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}})
    EXPECT_DOUBLE_EQ(t.two_body(p, q, r, s), 0.1);
  // (21|21) given once.
  for (auto [p, q, r, s] : {std::array{1, 0, 1, 0}, {0, 1, 1, 0}, {1, 0, 0, 1}, {0, 1, 0, 1}})
    EXPECT_DOUBLE_EQ(t.two_body(p, q, r, s), 0.05);
  EXPECT_DOUBLE_EQ(t.two_body(0, 0, 1, 1), 0.3);
}

TEST(Fcidump, HeaderlessTextInfersOrbitals) {
  const IntegralTable t = parse_fcidump("0.25 3 3 3 3\n-1.0 1 1 0 0\n");
  EXPECT_EQ(t.n_spatial(), 3);
  EXPECT_EQ(t.n_electrons(), 0);
  EXPECT_DOUBLE_EQ(t.two_body(2, 2, 2, 2), 0.25);
}

TEST(Fcidump, MalformedRecordReportsLine) {
  const std::string bad = std::string(kTiny) + "  0.3 1 x 0 0\n";
  try {
    (void)parse_fcidump(bad);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 14u);
  }
  EXPECT_THROW(parse_fcidump(" &FCI NORB=2,NELEC=2,\n &END\n 0.1 3 1 0 0\n"), ParseError);
}

TEST(Fcidump, SerializeRoundTripIsExact) {
  const Fixture f = load_fixture(testing::fixture_path("h2_631g_4.000.fcidump"));
  const IntegralTable back = parse_fcidump(serialize_fcidump(f.table));
  ASSERT_EQ(back.n_spatial(), f.table.n_spatial());
  EXPECT_EQ(back.n_electrons(), f.table.n_electrons());
  EXPECT_DOUBLE_EQ(back.core_energy(), f.table.core_energy());
  const int n = back.n_spatial();
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      EXPECT_DOUBLE_EQ(back.one_body(p, q), f.table.one_body(p, q));
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) EXPECT_DOUBLE_EQ(back.two_body(p, q, r, s), f.table.two_body(p, q, r, s));
    }
}

TEST(Fixture, LoadsMetaSidecar) {
  const Fixture f = load_fixture(testing::fixture_path("c2h4_sto3g_16_6.fcidump"));
  EXPECT_EQ(f.table.n_spatial(), 8);
  EXPECT_EQ(f.table.n_electrons(), 6);
  ASSERT_TRUE(f.table.orbital_energies().has_value());
  EXPECT_EQ(f.table.orbital_energies()->size(), 8u);
  ASSERT_TRUE(f.meta_number("fci_energy_ms0").has_value());
  EXPECT_NEAR(*f.meta_number("fci_energy_ms0"), -77.12997308, 1e-8);
}

TEST(Fixture, MissingFileIsFixtureError) {
  EXPECT_THROW(load_fixture(testing::fixture_path("no_such.fcidump")), FixtureError);
}

TEST(Fixture, HartreeFockDiagonalMatchesReference) {
  // The lowest-orbital closed-shell determinant reproduces the SCF energy shipped with each fixture.
  for (const auto& name : testing::small_fixtures()) {
    const Fixture f = load_fixture(testing::fixture_path(name));
    const auto hf_ref = f.meta_number("hf_energy");
    ASSERT_TRUE(hf_ref.has_value()) << name;
    const IntegralTable t = sort_by_energy(f.table);
    std::vector<int> occ(static_cast<std::size_t>(t.n_electrons()));
    std::iota(occ.begin(), occ.end(), 0);
    const auto hf = Determinant::from_positions(t.n_spin_orbitals(), occ);
    EXPECT_NEAR(diagonal_energy(hf, t), *hf_ref, 1e-9) << name;
  }
}

TEST(Ordering, SortsByOrbitalEnergyWithIndexTies) {
  IntegralTable t(3, 2);
  t.set_orbital_energies({0.5, -1.0, 0.5});
  EXPECT_EQ(energy_order(t), (std::vector<int>{1, 0, 2}));
  const auto ord = chemical_ordering(t);
  // spatial 1 -> rank 0, spatial 0 -> rank 1, spatial 2 -> rank 2
  EXPECT_EQ(ord.position(2), 0);
  EXPECT_EQ(ord.position(3), 1);
  EXPECT_EQ(ord.position(0), 2);
  EXPECT_EQ(ord.position(5), 5);
}

TEST(Ordering, FallsBackToOneBodyDiagonal) {
  IntegralTable t(3, 2);
  t.set_one_body(0, 0, 0.0);
  t.set_one_body(1, 1, -2.0);
  t.set_one_body(2, 2, -1.0);
  EXPECT_EQ(energy_order(t), (std::vector<int>{1, 2, 0}));
}

TEST(Ordering, PermutedTableHasSameSpectrum) {
  const Fixture f = load_fixture(testing::fixture_path("lih_sto3g_2.500_6_2.fcidump"));
  const IntegralTable p = f.table.permuted({2, 0, 1});
  EXPECT_NEAR(full_ci(p, 2).energy, full_ci(f.table, 2).energy, 1e-10);
  EXPECT_DOUBLE_EQ(p.two_body(0, 1, 2, 0), f.table.two_body(2, 0, 1, 2));
}

TEST(Ordering, InverseUndoesApply) {
  const SpinOrbitalOrdering o({3, 0, 2, 1, 5, 4});
  const auto b = OccupationString::from_string("110010");
  EXPECT_EQ(o.inverse().apply(o.apply(b)), b);
  EXPECT_EQ(o.apply(b).to_string(), "100101");
  EXPECT_THROW(SpinOrbitalOrdering({0, 0, 1}), DomainError);
}

}  // namespace
}  // namespace lqsci
