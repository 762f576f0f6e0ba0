// Copyright 2026 The lossy-qsci Authors
// SPDX-License-Identifier: Apache-2.0

// Randomized invariant checks shared by the property tests and the acceptance
// runner. Each check returns how many trials it ran and how many failed.

#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lqsci/ci_engine.hpp"
#include "lqsci/decoder.hpp"
#include "lqsci/gf2_encoder.hpp"
#include "lqsci/pipeline.hpp"
#include "lqsci/quantum_sim.hpp"
#include "test_support.hpp"

namespace lqsci::testing {

struct PropertyReport {
  std::string name;
  long trials = 0;
  long violations = 0;

  void check(bool ok) {
    ++trials;
    violations += ok ? 0 : 1;
  }
  bool ok() const { return trials > 0 && violations == 0; }
};

inline OccupationString random_bits(int m, std::mt19937_64& eng) {
  OccupationString b(m);
  for (int j = 0; j < m; ++j) b.set(j, eng() & 1);
  return b;
}

/// G(a xor b) == G a xor G b over random pairs and shapes.
inline PropertyReport linearity(long pairs = 10000) {
  PropertyReport r{"encoding is linear over GF(2)"};
  std::mt19937_64 eng(101);
  const std::vector<std::pair<int, int>> shapes{{12, 7}, {30, 23}, {70, 34}, {128, 66}};
  for (long k = 0; k < pairs; ++k) {
    const auto [m, q] = shapes[static_cast<std::size_t>(k) % shapes.size()];
    const auto g = generate_encoder(m, q, EncoderStrategy::Random, {}, nullptr, static_cast<std::uint64_t>(k / 97));
    const auto a = random_bits(m, eng);
    const auto b = random_bits(m, eng);
    r.check(encode(g, a ^ b) == (encode(g, a) ^ encode(g, b)));
  }
  return r;
}

/// The first Q columns of every generated encoder form the identity.
inline PropertyReport identity_block(int seeds = 200) {
  PropertyReport r{"leading Q x Q block is the identity"};
  for (int s = 0; s < seeds; ++s) {
    const int m = 8 + s % 40, q = 2 + s % (m - 2);
    for (auto strat : {EncoderStrategy::Random, EncoderStrategy::Chemical}) {
      const auto g = generate_encoder(m, q, strat, {}, nullptr, static_cast<std::uint64_t>(s));
      bool ok = true;
      for (int i = 0; i < q && ok; ++i)
        for (int j = 0; j < q && ok; ++j) ok = g.entry(i, j) == (i == j);
      r.check(ok);
    }
  }
  return r;
}

/// Every decoder returns exactly N occupied orbitals.
inline PropertyReport decoder_weight() {
  PropertyReport r{"decoders conserve electron number"};
  std::mt19937_64 eng(7);
  const int m = 16, q = 10, n = 3;
  const auto g = generate_encoder(m, q, EncoderStrategy::Chemical, {}, nullptr, 4);
  TrainConfig tc;
  tc.max_steps = 300;
  tc.seed = 2;
  const MlpDecoder nn = train_nn_fed(g, n, tc);
  const LookupDecoder lookup(g, n);
  for (int k = 0; k < 500; ++k) {
    const auto c = Codeword::from_index(eng() & ((1u << q) - 1), q);
    r.check(nn_decode(nn, c).weight() == n);
    if (const auto hit = lookup.decode(c)) r.check(hit->occ.weight() == n);
    if (k % 10 == 0) {
      auto cfg = k % 20 ? SearchConfig::annealing() : SearchConfig::genetic();
      cfg.seed = static_cast<std::uint64_t>(k);
      r.check(search_decode(g, n, c, cfg).occ.weight() == n);
    }
  }
  return r;
}

/// Cauchy interlacing for nested determinant sets S ⊂ S' with |S'| = |S| + 1,
/// plus the library's subspace energy never rising when S grows.
inline PropertyReport interlacing(int pairs = 1000) {
  PropertyReport r{"nested subspaces interlace"};
  const Fixture f = load_fixture(fixture_path("h2_631g_4.000.fcidump"));
  const auto sector = enumerate_determinants(8, 2);
  std::mt19937_64 eng(19);
  for (int k = 0; k < pairs; ++k) {
    std::vector<Determinant> big = sector;
    std::shuffle(big.begin(), big.end(), eng);
    big.resize(2 + eng() % (sector.size() - 2));
    std::vector<Determinant> small(big.begin(), big.end() - 1);
    const Eigen::MatrixXd hb = build_subspace_hamiltonian(big, f.table).to_dense();
    const Eigen::MatrixXd hs = build_subspace_hamiltonian(small, f.table).to_dense();
    const Eigen::VectorXd lb = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(hb, Eigen::EigenvaluesOnly).eigenvalues();
    const Eigen::VectorXd ls = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(hs, Eigen::EigenvaluesOnly).eigenvalues();
    bool ok = true;
    for (Eigen::Index i = 0; i < ls.size(); ++i) ok = ok && lb(i) <= ls(i) + 1e-10 && ls(i) <= lb(i + 1) + 1e-10;
    ok = ok && subspace_energy(big, f.table) <= subspace_energy(small, f.table) + 1e-10;
    r.check(ok);
  }
  return r;
}

/// Compressed ground energies never fall below full CI, and kept + dropped covers the sector.
inline PropertyReport compression_variational(int encoders = 100) {
  PropertyReport r{"compression is variational"};
  const Fixture f = load_fixture(fixture_path("lih_sto3g_2.500_10_2.fcidump"));
  const double fci = full_ci(f.table, 2).energy;
  for (int s = 0; s < encoders; ++s) {
    const int q = 3 + s % 7;
    const auto g = generate_encoder(10, q, s % 2 ? EncoderStrategy::Random : EncoderStrategy::Chemical,
                                    chemical_ordering(f.table), nullptr, static_cast<std::uint64_t>(s));
    const auto h = build_compressed_hamiltonian(f.table, g, 2);
    std::vector<std::uint64_t> codes;
    for (const auto& k : h.kept()) codes.push_back(k.code.to_index());
    std::sort(codes.begin(), codes.end());
    const bool distinct = std::adjacent_find(codes.begin(), codes.end()) == codes.end();
    r.check(distinct && static_cast<long>(h.kept().size()) + h.dropped() == 45 &&
            h.ground_state().energy >= fci - 1e-10);
  }
  return r;
}

/// An all-zero noise model behaves exactly like no noise model.
inline PropertyReport zero_noise_equivalence() {
  PropertyReport r{"zero noise equals noiseless"};
  const NoiseModel zero;
  std::mt19937_64 eng(5);
  std::uniform_real_distribution<double> ang(-3.0, 3.0);
  for (int k = 0; k < 50; ++k) {
    const auto spec = hea(3 + k % 4, 1 + k % 3);
    std::vector<double> p(spec.parameter_count());
    for (double& v : p) v = ang(eng);
    const auto clean = run_circuit(spec, p);
    r.check(run_circuit(spec, p, &zero, static_cast<std::uint64_t>(k)).amps() == clean.amps());
    r.check(sample_counts(clean, 200, &zero, k) == sample_counts(clean, 200, nullptr, k));
  }
  ExperimentConfig c;
  c.fixture = fixture_path("lih_sto3g_2.500_6_2.fcidump");
  c.qubits = 4;
  c.rounds = 3;
  c.shots = 200;
  c.r_top = 3;
  c.trial.ansatz_layers = 2;
  const auto a = run_lossy_qsci(c);
  c.trial.noise = parse_noise("p_gate1=0 p_gate2=0 p_reset=0 p_meas=0");
  const auto b = run_lossy_qsci(c);
  r.check(a.e_best == b.e_best && a.s_r.configs == b.s_r.configs);
  return r;
}

/// Identical configuration and seed give bit-identical runs, including the noisy and NN paths.
inline PropertyReport reproducibility() {
  PropertyReport r{"runs are reproducible"};
  ExperimentConfig c;
  c.fixture = fixture_path("lih_sto3g_2.500_10_2.fcidump");
  c.qubits = 6;
  c.rounds = 3;
  c.shots = 200;
  c.r_top = 4;
  c.trial.ansatz_layers = 2;
  c.trial.noise = NoiseModel::uniform(0.05);
  c.trial.vqe.trajectories = 4;
  c.trial.vqe.nelder_mead.max_evaluations = 40;
  c.decoder = DecoderKind::Nn;
  c.train.max_steps = 200;
  const auto a = run_experiment(c);
  const auto b = run_experiment(c);
  r.check(a.e_best == b.e_best);
  r.check(a.s_r.configs == b.s_r.configs);
  r.check(a.rounds.size() == b.rounds.size());
  for (std::size_t i = 0; i < std::min(a.rounds.size(), b.rounds.size()); ++i)
    r.check(a.rounds[i].counts_digest == b.rounds[i].counts_digest &&
            a.rounds[i].encoder_fingerprint == b.rounds[i].encoder_fingerprint &&
            a.rounds[i].trial_energy == b.rounds[i].trial_energy);
  return r;
}

inline std::vector<PropertyReport> all_properties() {
  return {linearity(), identity_block(), decoder_weight(), interlacing(), compression_variational(),
          zero_noise_equivalence(), reproducibility()};
}

}  // namespace lqsci::testing
