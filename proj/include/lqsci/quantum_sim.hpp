// Copyright 2026 The lossy-qsci Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file quantum_sim.hpp
 * @brief Statevector simulation of Ry/CNOT circuits with bit-flip noise,
 *        compressed Hamiltonians on codeword space, sampling and VQE.
 *
 * Qubit i is codeword bit i; as a statevector index it carries weight 2^i.
 */

#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lqsci/bits.hpp"
#include "lqsci/chem_io.hpp"
#include "lqsci/ci_engine.hpp"
#include "lqsci/gf2_encoder.hpp"
#include "lqsci/optimizer.hpp"

namespace lqsci {

/// Largest register the simulator will allocate.
inline constexpr int kMaxQubits = 24;

class StateVector {
 public:
  using Amp = std::complex<double>;

  StateVector() = default;
  /// |index> on q qubits.
  StateVector(int q, std::uint64_t index = 0);
  /// Takes ownership of amplitudes; the length must be 2^q. Not normalized here.
  static StateVector from_amplitudes(int q, std::vector<Amp> amps);

  int qubits() const noexcept { return q_; }
  std::size_t dim() const noexcept { return amps_.size(); }
  const std::vector<Amp>& amps() const noexcept { return amps_; }
  std::vector<Amp>& amps() noexcept { return amps_; }
  Amp operator[](std::size_t i) const { return amps_[i]; }
  double norm() const;
  double probability(std::size_t i) const { return std::norm(amps_[i]); }

  void apply_ry(int qubit, double theta);
  void apply_cx(int control, int target);
  void apply_x(int qubit);

 private:
  int q_ = 0;
  std::vector<Amp> amps_;
};

struct Gate {
  enum class Kind { Ry, Cx };
  Kind kind = Kind::Ry;
  int a = 0;  ///< Ry: qubit, Cx: control
  int b = 0;  ///< Ry: parameter index, Cx: target
};

struct AnsatzSpec {
  int q = 0;
  std::vector<Gate> gates;

  int parameter_count() const;
  int count(Gate::Kind k) const;
  /// Throws SpecError on out-of-range qubits or non-contiguous parameter indices.
  void validate() const;
};

/**
 * Hardware-efficient ansatz: `ry_layers` full Ry layers separated by
 * linear-chain CNOT layers (0->1, 1->2, ...). Gate counts are q*L Ry and
 * (q-1)*(L-1) CNOT; q=4, L=5 gives 20/12 and q=8, L=3 gives 24/14.
 */
AnsatzSpec hea(int q, int ry_layers);

/// Lines `qubits <q>`, then `ry <qubit> <param>` / `cx <control> <target>`; '#' starts a comment.
std::string serialize_ansatz(const AnsatzSpec& spec);
AnsatzSpec parse_ansatz(std::string_view text);

struct NoiseModel {
  double p_gate1 = 0.0;  ///< X after a single-qubit gate
  double p_gate2 = 0.0;  ///< independent X on each qubit of a two-qubit gate
  double p_reset = 0.0;  ///< prepare |1> instead of |0>
  double p_meas = 0.0;   ///< readout bit flip

  void validate() const;
  bool is_zero() const noexcept { return p_gate1 == 0 && p_gate2 == 0 && p_reset == 0 && p_meas == 0; }
  /// Every channel at probability p.
  static NoiseModel uniform(double p) { return {p, p, p, p}; }
};

/// `key=value` pairs separated by whitespace, commas or newlines.
NoiseModel parse_noise(std::string_view text);
std::string serialize_noise(const NoiseModel& n);

/**
 * Runs the circuit on |0...0>. Without noise the result is deterministic.
 * With noise it is one stochastic trajectory drawn from `engine`; readout
 * noise is applied at sampling time, not here.
 */
StateVector run_circuit(const AnsatzSpec& spec, const std::vector<double>& params,
                        const NoiseModel* noise, std::mt19937_64& engine);
StateVector run_circuit(const AnsatzSpec& spec, const std::vector<double>& params,
                        const NoiseModel* noise = nullptr, std::uint64_t seed = 0);

/// Codeword histogram ordered lexicographically.
using Counts = std::map<Codeword, long>;

/// Samples a fixed state; only p_meas of `noise` is used.
Counts sample_counts(const StateVector& state, long shots, const NoiseModel* noise, std::uint64_t seed);

/// Draws a fresh state per shot (a noisy trajectory), then measures with p_meas.
Counts sample_counts(const std::function<StateVector(std::mt19937_64&)>& source, long shots,
                     const NoiseModel* noise, std::uint64_t seed);

struct KeptConfig {
  Determinant det;
  Codeword code;
};

/**
 * H restricted to the kept determinants, addressed by codeword. Codewords
 * outside the kept image have zero rows and columns.
 */
class CompressedHamiltonian {
 public:
  int qubits() const noexcept { return q_; }
  std::uint64_t dim() const noexcept { return std::uint64_t{1} << q_; }
  const std::vector<KeptConfig>& kept() const noexcept { return kept_; }
  long dropped() const noexcept { return dropped_; }
  bool has_matrix() const noexcept { return has_matrix_; }
  /// Throws DomainError when built without matrix elements.
  const SubspaceHamiltonian& subspace() const;

  /// Index into kept() for a codeword, or nullopt.
  std::optional<int> find(const Codeword& c) const;
  /// Kept determinants in kept() order.
  std::vector<Determinant> kept_dets() const;
  /// Lowest eigenpair over the kept support.
  EigenResult ground_state(double tol = kKrylovTol) const;
  /// Dense 2^q x 2^q matrix (small q only).
  Eigen::MatrixXd to_dense() const;
  /// Embeds a kept-basis vector into the 2^q register.
  StateVector embed(const Eigen::VectorXd& kept_vector) const;

 private:
  friend CompressedHamiltonian build_compressed_hamiltonian(const IntegralTable&, const EncoderMatrix&,
                                                            int, std::optional<SzConstraint>,
                                                            const std::vector<Determinant>*, double, bool);
  int q_ = 0;
  std::vector<KeptConfig> kept_;
  std::vector<std::uint64_t> index_;  ///< statevector index of each kept codeword
  std::unordered_map<Codeword, int, BitsHash> lookup_;
  long dropped_ = 0;
  bool has_matrix_ = false;
  SubspaceHamiltonian h_;
};

/**
 * Enumerates the sector, orders it by ascending diagonal energy (ties
 * lexicographic) and keeps each determinant whose codeword is still free.
 * Determinants listed in `priority` are offered first, in their given order.
 * Throws CapacityError beyond `guard` sector determinants. With
 * `with_matrix` false only the kept map is built (no matrix elements).
 */
CompressedHamiltonian build_compressed_hamiltonian(const IntegralTable& t, const EncoderMatrix& g, int n,
                                                   std::optional<SzConstraint> sz = std::nullopt,
                                                   const std::vector<Determinant>* priority = nullptr,
                                                   double guard = 1e6, bool with_matrix = true);

/// <psi|H_comp|psi>.
double expectation(const StateVector& state, const CompressedHamiltonian& h);

struct VqeConfig {
  LbfgsOptions lbfgs;
  NelderMeadOptions nelder_mead;
  int trajectories = 200;     ///< per noisy energy evaluation
  double init_scale = 0.1;    ///< initial parameters uniform in (-init_scale, init_scale)
};

struct VqeResult {
  double energy = 0.0;
  std::vector<double> params;
  std::vector<double> trace;
  long evaluations = 0;
};

/**
 * L-BFGS with central differences when `noise` is null or all-zero;
 * trajectory-averaged energies with bounded Nelder-Mead otherwise. The noisy
 * objective reuses the same trajectory seeds at every evaluation.
 */
VqeResult vqe_minimize(const CompressedHamiltonian& h, const AnsatzSpec& spec, const VqeConfig& cfg,
                       const NoiseModel* noise, std::uint64_t seed);

/// Trajectory-averaged energy used by the noisy VQE objective.
double noisy_energy(const CompressedHamiltonian& h, const AnsatzSpec& spec,
                    const std::vector<double>& params, const NoiseModel& noise, int trajectories,
                    std::uint64_t seed);

}  // namespace lqsci
