// Copyright 2026 The lossy-qsci Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file pipeline.hpp
 * @brief Lossy and baseline QSCI loops, experiment configuration and drivers.
 *
 * One round: draw an encoder, compress the Hamiltonian, prepare a trial state
 * in the compressed register, sample it, decode the codewords, keep the R most
 * frequent weight-N determinants and merge them into the candidate set if the
 * subspace energy drops.
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lqsci/chem_io.hpp"
#include "lqsci/ci_engine.hpp"
#include "lqsci/decoder.hpp"
#include "lqsci/gf2_encoder.hpp"
#include "lqsci/quantum_sim.hpp"

namespace lqsci {

inline constexpr double kChemicalAccuracy = 0.00159;  ///< Hartree (1 kcal/mol)

struct CandidateSet {
  std::vector<Determinant> configs;
  std::vector<std::vector<Determinant>> history;  ///< configurations added per accepted merge

  bool contains(const Determinant& d) const;
  std::size_t size() const noexcept { return configs.size(); }
};

/// Decoded determinant histogram.
using DetCounts = std::map<Determinant, long>;

struct MergeOutcome {
  CandidateSet set;
  double e_best = std::numeric_limits<double>::infinity();
  double e_new = std::numeric_limits<double>::infinity();
  bool accepted = false;
  std::vector<Determinant> selected;  ///< the top-R determinants considered
};

/// R most frequent determinants, ties broken lexicographically.
std::vector<Determinant> top_r(const DetCounts& counts, int r);

/**
 * Merges the top-R of `counts` into `s_r`, diagonalizes, and accepts iff the
 * new energy is below e_best - tol. A rejected merge returns s_r unchanged.
 */
MergeOutcome select_and_merge(const DetCounts& counts, int r_top, const CandidateSet& s_r,
                              const IntegralTable& t, double e_best, double tol = 1e-10);

/**
 * psi_g + s * u with u uniform in (-1, 1)^dim, normalized, where the scale s
 * is bisected until |<psi_n|psi_g>|^2 is within 1e-4 of the target. Throws
 * NumericalError if the target is unreachable.
 */
Eigen::VectorXd make_noisy_trial_state(const Eigen::VectorXd& psi_g, double target_fidelity,
                                       std::uint64_t seed);

enum class TrialMode { ExactPlusNoise, Vqe };
enum class RunMode { Lossy, Baseline };
enum class DecoderKind { Nn, Lookup };
enum class BiasSource { None, Excitations, GroundTop };

struct TrialStatePlan {
  TrialMode mode = TrialMode::Vqe;
  double target_fidelity = 0.85;
  int ansatz_layers = 3;           ///< Ry layers of the hardware-efficient ansatz
  std::string ansatz_text;         ///< overrides ansatz_layers when nonempty
  VqeConfig vqe;
  NoiseModel noise;                ///< all-zero means noiseless
};

struct ExperimentConfig {
  std::filesystem::path fixture;
  RunMode mode = RunMode::Lossy;
  int electrons = -1;                  ///< -1: take from the fixture
  std::optional<int> ms2;              ///< 2*Sz restriction of the sector
  int qubits = 0;
  std::optional<EncoderStrategy> strategy = EncoderStrategy::Chemical;  ///< nullopt: identity encoder
  BiasSource bias = BiasSource::None;
  int bias_size = 200;
  bool fixed_encoder = false;          ///< one encoder for all rounds
  int rounds = 1;
  long shots = 1000;
  int r_top = 10;
  double tolerance = 1e-10;
  int max_rejections = 5;              ///< consecutive rejections that end the run; 0 disables
  bool stop_at_chemical_accuracy = false;  ///< end the run once e_best is within kChemicalAccuracy of FCI
  TrialStatePlan trial;
  DecoderKind decoder = DecoderKind::Lookup;
  TrainConfig train;
  double decoder_floor = 0.0;          ///< rounds whose decoder falls below this are skipped
  std::uint64_t seed = 1;
  std::filesystem::path output;        ///< empty: no files written

  /// Throws ConfigError on invalid combinations.
  void validate() const;
};

/// `key = value` lines; '#' starts a comment. Unknown keys are errors.
ExperimentConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);
std::string serialize_config(const ExperimentConfig& cfg);

struct RoundRecord {
  int round = 0;
  std::uint64_t encoder_seed = 0;
  std::uint64_t encoder_fingerprint = 0;
  long dropped = 0;
  double decoder_accuracy = 1.0;
  bool skipped = false;
  double trial_energy = 0.0;        ///< <psi|H_comp|psi> of the prepared state
  std::uint64_t counts_digest = 0;
  long valid_shots = 0;             ///< shots surviving decoding and post-selection
  double e_new = 0.0;
  double e_best = 0.0;
  std::size_t n_configs = 0;
  bool accepted = false;
};

struct QsciResult {
  double e_best = std::numeric_limits<double>::infinity();
  CandidateSet s_r;
  std::vector<RoundRecord> rounds;
  double e_fci = std::numeric_limits<double>::quiet_NaN();
  double chemical_threshold = std::numeric_limits<double>::quiet_NaN();  ///< e_fci + kChemicalAccuracy
  std::optional<std::size_t> configs_at_chemical_accuracy;  ///< |S_R| when first within the threshold
  long total_shots = 0;
  long shot_qubits = 0;             ///< shots x register width
  DetCounts pooled_counts;          ///< decoded counts summed over all rounds
  bool converged = true;            ///< false when a VQE or eigen solve failed softly
};

/// Shared per-fixture data reused across runs.
struct ProblemContext {
  Fixture fixture;
  int n = 0;
  std::optional<SzConstraint> sz;
  std::vector<Determinant> sector;
  EigenResult fci;

  static ProblemContext load(const ExperimentConfig& cfg);
};

/// Lossy loop; `start` seeds S_R (and E_best) with an earlier candidate set.
QsciResult run_lossy_qsci(const ExperimentConfig& cfg, const ProblemContext* ctx = nullptr,
                          const CandidateSet* start = nullptr);
/// Identity encoder on the full register; number-conserving post-selection of raw samples.
QsciResult run_baseline_qsci(const ExperimentConfig& cfg, const ProblemContext* ctx = nullptr);
/// Dispatches on cfg.mode and writes result.csv, candidates.txt and meta.txt when cfg.output is set.
QsciResult run_experiment(const ExperimentConfig& cfg, const ProblemContext* ctx = nullptr);
void write_outputs(const ExperimentConfig& cfg, const QsciResult& r);

/// Subspace energy of the R most frequent pooled determinants, for each R.
std::vector<std::pair<int, double>> r_sweep(const DetCounts& pooled, const IntegralTable& t,
                                            const std::vector<int>& r_values);

/**
 * One lossy run per register width in `qubits` (ascending), each starting
 * from the previous run's candidate set, so the subspaces are nested and the
 * energies nonincreasing. Seeds are shared across widths.
 */
std::vector<QsciResult> qubit_sweep(const ExperimentConfig& base, const std::vector<int>& qubits,
                                    const ProblemContext* ctx = nullptr);

struct StrategyCase {
  EncoderStrategy strategy;
  int encoder_index = 0;
  double energy = 0.0;
  double error = 0.0;   ///< energy - FCI
};

/**
 * Runs `cases` fixed-encoder lossy QSCI runs per strategy on the same
 * problem and returns their final energies. Each case uses its own encoder
 * seed; trial-state seeds are shared across strategies.
 */
std::vector<StrategyCase> strategy_comparison(const ExperimentConfig& base,
                                              const std::vector<EncoderStrategy>& strategies, int cases);
/// CSV `strategy,rank,case,energy,error` with rank = position in the sorted error curve.
std::string strategy_csv(const std::vector<StrategyCase>& cases);
double median_error(const std::vector<StrategyCase>& cases, EncoderStrategy s);

}  // namespace lqsci
