// Copyright 2026 The lossy-qsci Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file decoder.hpp
 * @brief Decoders inverting an encoder on the N-electron sector.
 *
 * NN-FED is a feed-forward network trained on freshly sampled N-electron
 * strings with binary cross-entropy. Its output is repaired to weight N by
 * keeping the N largest activations. Genetic-algorithm and simulated-annealing
 * searches and an exhaustive lookup table serve as baselines and oracles.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "lqsci/bits.hpp"
#include "lqsci/gf2_encoder.hpp"

namespace lqsci {

struct TrainConfig {
  int batch_size = 256;           ///< k strings per step
  long max_steps = 20000;         ///< t_max
  double learning_rate = 1e-3;    ///< Adam step size
  double target_accuracy = 0.999; ///< stop once held-out exact-match accuracy reaches this
  std::uint64_t seed = 0;
  int eval_interval = 250;        ///< steps between held-out evaluations
  int eval_samples = 2000;        ///< held-out strings per evaluation
  int hidden_factor = 2;          ///< hidden width = hidden_factor * N * M
  int hidden_layers = 1;

  void validate() const;
};

struct TrainStats {
  double accuracy = 0.0;        ///< best held-out exact-match accuracy
  long steps = 0;               ///< optimizer steps taken
  double seconds = 0.0;
  std::vector<float> loss_history;  ///< per-step mean BCE
};

class MlpDecoder {
 public:
  MlpDecoder() = default;
  MlpDecoder(std::vector<int> arch, int n_electrons, std::uint64_t encoder_fingerprint);

  const std::vector<int>& arch() const noexcept { return arch_; }
  int input_width() const noexcept { return arch_.front(); }
  int output_width() const noexcept { return arch_.back(); }
  int n_electrons() const noexcept { return n_electrons_; }
  std::uint64_t encoder_fingerprint() const noexcept { return fingerprint_; }
  std::size_t parameter_count() const noexcept;

  /// Logits for a batch of codewords given column-wise as +-1 entries.
  Eigen::MatrixXf logits(const Eigen::MatrixXf& inputs) const;

  /// Flat parameter list (W0, b0, W1, b1, ...; weights column-major).
  std::vector<float> flat_parameters() const;
  void set_flat_parameters(const std::vector<float>& p);

  std::vector<Eigen::MatrixXf>& weights() noexcept { return w_; }
  std::vector<Eigen::VectorXf>& biases() noexcept { return b_; }
  const std::vector<Eigen::MatrixXf>& weights() const noexcept { return w_; }
  const std::vector<Eigen::VectorXf>& biases() const noexcept { return b_; }

  TrainStats stats;

 private:
  std::vector<int> arch_;
  int n_electrons_ = 0;
  std::uint64_t fingerprint_ = 0;
  std::vector<Eigen::MatrixXf> w_;
  std::vector<Eigen::VectorXf> b_;
};

/**
 * Trains NN-FED against `g`. Training strings are uniform over the weight-n
 * sector, or uniform over `domain` when given (e.g. the determinants kept by a
 * lossy compression). Stops at target_accuracy or max_steps and returns the
 * best decoder seen. Throws TrainingFailure on a non-finite loss.
 */
MlpDecoder train_nn_fed(const EncoderMatrix& g, int n, const TrainConfig& cfg,
                        const std::vector<Determinant>* domain = nullptr);

/// Weight-N output for one codeword. Throws DomainError on width mismatch.
OccupationString nn_decode(const MlpDecoder& d, const Codeword& c);
std::vector<OccupationString> nn_decode_batch(const MlpDecoder& d, const std::vector<Codeword>& cs);

/// Throws DomainError unless `d` was trained against `g`.
void ensure_compatible(const MlpDecoder& d, const EncoderMatrix& g);

/// Exact-match accuracy of `d` on the given strings.
double decoder_accuracy(const MlpDecoder& d, const EncoderMatrix& g,
                        const std::vector<Determinant>& strings);

/// Self-describing text checkpoint.
std::string save_checkpoint(const MlpDecoder& d);
MlpDecoder load_checkpoint(std::string_view text);

enum class SearchMethod { Genetic, Annealing };

struct SearchConfig {
  SearchMethod method = SearchMethod::Genetic;
  int population = 64;        ///< GA
  int generations = 200;      ///< GA
  int tournament = 3;         ///< GA
  double mutation_rate = 0.05;///< GA, per-child swap probability
  double t0 = 2.0;            ///< SA initial temperature
  double cooling = 0.995;     ///< SA geometric factor
  int steps = 280;            ///< SA steps per restart
  int restarts = 1;           ///< SA
  std::uint64_t seed = 0;

  void validate() const;
  static SearchConfig genetic();
  static SearchConfig annealing();
};

struct SearchResult {
  OccupationString occ;
  bool success = false;
  int distance = 0;           ///< Hamming distance of encode(occ) to the target
  long evaluations = 0;
};

/// Weight-preserving search minimizing the Hamming distance between encode(s) and c.
SearchResult search_decode(const EncoderMatrix& g, int n, const Codeword& c,
                           const SearchConfig& cfg, const OccupationString* init = nullptr);

inline constexpr double kLookupGuard = 1e6;

struct LookupHit {
  OccupationString occ;   ///< lexicographically smallest preimage
  int multiplicity = 1;   ///< number of weight-n preimages
};

/// Exhaustive codeword -> preimage table over a determinant list (the full sector by default).
class LookupDecoder {
 public:
  LookupDecoder(const EncoderMatrix& g, int n, const std::vector<Determinant>* domain = nullptr);
  /// nullopt when c has no preimage in the table ("NotInImage").
  std::optional<LookupHit> decode(const Codeword& c) const;
  std::size_t size() const noexcept { return table_.size(); }
  /// True when some codeword has more than one preimage.
  bool has_multiplicity() const noexcept { return ambiguous_; }

 private:
  std::unordered_map<Codeword, LookupHit, BitsHash> table_;
  bool ambiguous_ = false;
};

/// One-shot convenience: builds the full-sector table and looks up c.
std::optional<LookupHit> lookup_decode(const EncoderMatrix& g, int n, const Codeword& c);

struct BenchInstance {
  int m = 0;
  int q = 0;
  int n = 0;
};

struct DecodeBenchRow {
  int m = 0, q = 0, n = 0;
  std::string method;
  std::optional<double> train_s;
  std::optional<double> decode_s;   ///< mean wall-clock per shot
  std::optional<double> accuracy;   ///< exact-match fraction
};

struct BenchConfig {
  TrainConfig train;
  SearchConfig ga = SearchConfig::genetic();
  SearchConfig sa = SearchConfig::annealing();
  std::uint64_t seed = 0;
  bool run_nn = true;
  bool run_ga = true;
  bool run_sa = true;
};

std::vector<DecodeBenchRow> benchmark_decoders(const std::vector<BenchInstance>& instances,
                                               int shots, const BenchConfig& cfg);

/// CSV with header `m,q,n,method,train_s,decode_s,accuracy`; absent values are empty.
std::string bench_csv(const std::vector<DecodeBenchRow>& rows);

/// Uniform random weight-n string of length m.
OccupationString random_occupation(int m, int n, std::mt19937_64& engine);

}  // namespace lqsci
