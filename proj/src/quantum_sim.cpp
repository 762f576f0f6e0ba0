// Copyright 2026 The lossy-qsci Authors
// SPDX-License-Identifier: Apache-2.0

#include "lqsci/quantum_sim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace lqsci {

// --------------------------------------------------------------- StateVector

namespace {

void check_qubits(int q) {
  if (q < 1 || q > kMaxQubits)
    throw DomainError("qubit count " + std::to_string(q) + " outside [1, " +
                      std::to_string(kMaxQubits) + "]");
}

}  // namespace

StateVector::StateVector(int q, std::uint64_t index) : q_(q) {
  check_qubits(q);
  amps_.assign(std::size_t{1} << q, Amp{0.0, 0.0});
  if (index >= amps_.size()) throw DomainError("basis index out of range");
  amps_[index] = 1.0;
}

StateVector StateVector::from_amplitudes(int q, std::vector<Amp> amps) {
  check_qubits(q);
  if (amps.size() != (std::size_t{1} << q)) throw DomainError("amplitude vector length is not 2^q");
  StateVector s;
  s.q_ = q;
  s.amps_ = std::move(amps);
  return s;
}

double StateVector::norm() const {
  double acc = 0.0;
  for (const auto& a : amps_) acc += std::norm(a);
  return std::sqrt(acc);
}

void StateVector::apply_ry(int qubit, double theta) {
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  const std::size_t bit = std::size_t{1} << qubit;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (i & bit) continue;
    const Amp a0 = amps_[i];
    const Amp a1 = amps_[i | bit];
    amps_[i] = c * a0 - s * a1;
    amps_[i | bit] = s * a0 + c * a1;
  }
}

void StateVector::apply_cx(int control, int target) {
  const std::size_t cb = std::size_t{1} << control;
  const std::size_t tb = std::size_t{1} << target;
  for (std::size_t i = 0; i < amps_.size(); ++i)
    if ((i & cb) && !(i & tb)) std::swap(amps_[i], amps_[i | tb]);
}

void StateVector::apply_x(int qubit) {
  const std::size_t bit = std::size_t{1} << qubit;
  for (std::size_t i = 0; i < amps_.size(); ++i)
    if (!(i & bit)) std::swap(amps_[i], amps_[i | bit]);
}

// -------------------------------------------------------------------- ansatz

int AnsatzSpec::parameter_count() const {
  int p = 0;
  for (const auto& g : gates)
    if (g.kind == Gate::Kind::Ry) p = std::max(p, g.b + 1);
  return p;
}

int AnsatzSpec::count(Gate::Kind k) const {
  return static_cast<int>(std::count_if(gates.begin(), gates.end(), [k](const Gate& g) { return g.kind == k; }));
}

void AnsatzSpec::validate() const {
  if (q < 1 || q > kMaxQubits) throw SpecError("ansatz qubit count out of range");
  std::vector<bool> used;
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const Gate& g = gates[i];
    const std::string where = "gate " + std::to_string(i) + ": ";
    if (g.a < 0 || g.a >= q) throw SpecError(where + "qubit " + std::to_string(g.a) + " out of range");
    if (g.kind == Gate::Kind::Cx) {
      if (g.b < 0 || g.b >= q) throw SpecError(where + "qubit " + std::to_string(g.b) + " out of range");
      if (g.a == g.b) throw SpecError(where + "control equals target");
    } else {
      if (g.b < 0) throw SpecError(where + "negative parameter index");
      if (static_cast<std::size_t>(g.b) >= used.size()) used.resize(g.b + 1, false);
      used[g.b] = true;
    }
  }
  for (std::size_t p = 0; p < used.size(); ++p)
    if (!used[p]) throw SpecError("parameter indices are not contiguous: " + std::to_string(p) + " unused");
}

AnsatzSpec hea(int q, int ry_layers) {
  if (q < 1 || ry_layers < 1) throw SpecError("hea requires q >= 1 and at least one layer");
  AnsatzSpec spec;
  spec.q = q;
  int p = 0;
  for (int l = 0; l < ry_layers; ++l) {
    if (l > 0)
      for (int k = 0; k + 1 < q; ++k) spec.gates.push_back({Gate::Kind::Cx, k, k + 1});
    for (int k = 0; k < q; ++k) spec.gates.push_back({Gate::Kind::Ry, k, p++});
  }
  spec.validate();
  return spec;
}

std::string serialize_ansatz(const AnsatzSpec& spec) {
  std::ostringstream out;
  out << "qubits " << spec.q << '\n';
  for (const auto& g : spec.gates)
    out << (g.kind == Gate::Kind::Ry ? "ry " : "cx ") << g.a << ' ' << g.b << '\n';
  return out.str();
}

AnsatzSpec parse_ansatz(std::string_view text) {
  AnsatzSpec spec;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  bool have_q = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string op;
    if (!(ls >> op)) continue;
    std::transform(op.begin(), op.end(), op.begin(), [](unsigned char ch) { return std::tolower(ch); });
    if (op == "qubits") {
      if (!(ls >> spec.q)) throw ParseError("ansatz: bad qubit count", lineno);
      have_q = true;
      continue;
    }
    Gate g;
    if (op == "ry") {
      g.kind = Gate::Kind::Ry;
    } else if (op == "cx" || op == "cnot") {
      g.kind = Gate::Kind::Cx;
    } else {
      throw ParseError("ansatz: unknown gate '" + op + "'", lineno);
    }
    if (!(ls >> g.a >> g.b)) throw ParseError("ansatz: gate needs two integers", lineno);
    spec.gates.push_back(g);
  }
  if (!have_q) throw ParseError("ansatz: missing 'qubits' line", 0);
  spec.validate();
  return spec;
}

// --------------------------------------------------------------------- noise

void NoiseModel::validate() const {
  for (double p : {p_gate1, p_gate2, p_reset, p_meas})
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("noise probabilities must lie in [0, 1]");
}

NoiseModel parse_noise(std::string_view text) {
  NoiseModel n;
  std::string s(text);
  for (char& ch : s)
    if (ch == ',' || ch == ';') ch = ' ';
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw ParseError("noise: expected key=value, got '" + tok + "'", 0);
    const std::string key = tok.substr(0, eq);
    double v = 0.0;
    try {
      v = std::stod(tok.substr(eq + 1));
    } catch (const std::exception&) {
      throw ParseError("noise: bad value in '" + tok + "'", 0);
    }
    if (key == "p_gate1") {
      n.p_gate1 = v;
    } else if (key == "p_gate2") {
      n.p_gate2 = v;
    } else if (key == "p_reset") {
      n.p_reset = v;
    } else if (key == "p_meas") {
      n.p_meas = v;
    } else if (key == "p") {
      n = NoiseModel::uniform(v);
    } else {
      throw ParseError("noise: unknown key '" + key + "'", 0);
    }
  }
  n.validate();
  return n;
}

std::string serialize_noise(const NoiseModel& n) {
  std::ostringstream out;
  out.precision(17);
  out << "p_gate1=" << n.p_gate1 << " p_gate2=" << n.p_gate2 << " p_reset=" << n.p_reset
      << " p_meas=" << n.p_meas;
  return out.str();
}

// ------------------------------------------------------------------- circuit

StateVector run_circuit(const AnsatzSpec& spec, const std::vector<double>& params,
                        const NoiseModel* noise, std::mt19937_64& engine) {
  spec.validate();
  if (static_cast<int>(params.size()) != spec.parameter_count())
    throw SpecError("expected " + std::to_string(spec.parameter_count()) + " parameters, got " +
                    std::to_string(params.size()));
  if (noise) noise->validate();
  const bool noisy = noise && !noise->is_zero();
  std::uniform_real_distribution<double> u(0.0, 1.0);

  std::uint64_t start = 0;
  if (noisy && noise->p_reset > 0.0)
    for (int k = 0; k < spec.q; ++k)
      if (u(engine) < noise->p_reset) start |= std::uint64_t{1} << k;
  StateVector s(spec.q, start);

  for (const auto& g : spec.gates) {
    if (g.kind == Gate::Kind::Ry) {
      s.apply_ry(g.a, params[g.b]);
      if (noisy && u(engine) < noise->p_gate1) s.apply_x(g.a);
    } else {
      s.apply_cx(g.a, g.b);
      if (noisy) {
        if (u(engine) < noise->p_gate2) s.apply_x(g.a);
        if (u(engine) < noise->p_gate2) s.apply_x(g.b);
      }
    }
  }
  return s;
}

StateVector run_circuit(const AnsatzSpec& spec, const std::vector<double>& params,
                        const NoiseModel* noise, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  return run_circuit(spec, params, noise, engine);
}

// ------------------------------------------------------------------ sampling

namespace {

Codeword measure_index(std::uint64_t index, int q, const NoiseModel* noise, std::mt19937_64& engine,
                       std::uniform_real_distribution<double>& u) {
  if (noise && noise->p_meas > 0.0)
    for (int k = 0; k < q; ++k)
      if (u(engine) < noise->p_meas) index ^= std::uint64_t{1} << k;
  return Codeword::from_index(index, q);
}

std::uint64_t draw_index(const std::vector<double>& cdf, double r) {
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), r * cdf.back());
  return static_cast<std::uint64_t>(std::min<std::ptrdiff_t>(it - cdf.begin(), cdf.size() - 1));
}

std::vector<double> cumulative(const StateVector& s) {
  std::vector<double> cdf(s.dim());
  double acc = 0.0;
  for (std::size_t i = 0; i < s.dim(); ++i) cdf[i] = acc += s.probability(i);
  if (!(acc > 0.0)) throw NumericalError("cannot sample from a zero state");
  return cdf;
}

}  // namespace

Counts sample_counts(const StateVector& state, long shots, const NoiseModel* noise, std::uint64_t seed) {
  if (shots < 0) throw DomainError("negative shot count");
  if (noise) noise->validate();
  Counts counts;
  if (shots == 0) return counts;
  std::mt19937_64 engine(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto cdf = cumulative(state);
  for (long k = 0; k < shots; ++k)
    ++counts[measure_index(draw_index(cdf, u(engine)), state.qubits(), noise, engine, u)];
  return counts;
}

Counts sample_counts(const std::function<StateVector(std::mt19937_64&)>& source, long shots,
                     const NoiseModel* noise, std::uint64_t seed) {
  if (shots < 0) throw DomainError("negative shot count");
  if (noise) noise->validate();
  Counts counts;
  std::mt19937_64 engine(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (long k = 0; k < shots; ++k) {
    const StateVector s = source(engine);
    const auto cdf = cumulative(s);
    ++counts[measure_index(draw_index(cdf, u(engine)), s.qubits(), noise, engine, u)];
  }
  return counts;
}

// ---------------------------------------------------- compressed Hamiltonian

std::optional<int> CompressedHamiltonian::find(const Codeword& c) const {
  const auto it = lookup_.find(c);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::vector<Determinant> CompressedHamiltonian::kept_dets() const {
  std::vector<Determinant> out;
  out.reserve(kept_.size());
  for (const auto& k : kept_) out.push_back(k.det);
  return out;
}

const SubspaceHamiltonian& CompressedHamiltonian::subspace() const {
  if (!has_matrix_) throw DomainError("compressed Hamiltonian was built without matrix elements");
  return h_;
}

EigenResult CompressedHamiltonian::ground_state(double tol) const { return lqsci::ground_state(subspace(), tol); }

Eigen::MatrixXd CompressedHamiltonian::to_dense() const {
  if (q_ > 13) throw CapacityError("dense compressed Hamiltonian limited to 13 qubits");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim(), dim());
  const Eigen::MatrixXd sub = subspace().to_dense();
  for (std::size_t i = 0; i < kept_.size(); ++i)
    for (std::size_t j = 0; j < kept_.size(); ++j) m(index_[i], index_[j]) = sub(i, j);
  return m;
}

StateVector CompressedHamiltonian::embed(const Eigen::VectorXd& v) const {
  if (static_cast<std::size_t>(v.size()) != kept_.size()) throw DomainError("embed: length != kept size");
  std::vector<StateVector::Amp> amps(dim(), 0.0);
  for (std::size_t i = 0; i < kept_.size(); ++i) amps[index_[i]] = v(static_cast<Eigen::Index>(i));
  return StateVector::from_amplitudes(q_, std::move(amps));
}

CompressedHamiltonian build_compressed_hamiltonian(const IntegralTable& t, const EncoderMatrix& g, int n,
                                                   std::optional<SzConstraint> sz,
                                                   const std::vector<Determinant>* priority, double guard,
                                                   bool with_matrix) {
  const int m = 2 * t.n_spatial();
  if (g.m() != m) throw DomainError("encoder width " + std::to_string(g.m()) + " != spin orbitals " + std::to_string(m));
  if (g.q() > kMaxQubits) throw CapacityError("compressed register exceeds simulator limit");
  const auto sector = enumerate_determinants(m, n, sz, guard);

  std::vector<std::pair<double, std::size_t>> order;
  order.reserve(sector.size());
  for (std::size_t i = 0; i < sector.size(); ++i) order.emplace_back(diagonal_energy(sector[i], t), i);
  // The sector is already lexicographic, so a stable sort breaks ties lexicographically.
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });

  CompressedHamiltonian h;
  h.q_ = g.q();
  std::unordered_map<Determinant, bool, BitsHash> taken;
  auto offer = [&](const Determinant& d) {
    if (taken.count(d)) return;
    taken.emplace(d, true);
    Codeword c = encode_determinant(g, d);
    if (h.lookup_.count(c)) {
      ++h.dropped_;
      return;
    }
    h.lookup_.emplace(c, static_cast<int>(h.kept_.size()));
    h.index_.push_back(c.to_index());
    h.kept_.push_back({d, std::move(c)});
  };
  if (priority) {
    for (const auto& d : *priority) {
      if (d.size() != m || d.weight() != n) throw DomainError("priority determinant outside the sector");
      if (sz && count_alpha(d) != sz->n_alpha) continue;
      offer(d);
    }
  }
  for (const auto& [e, i] : order) offer(sector[i]);
  if (with_matrix) {
    h.h_ = build_subspace_hamiltonian(h.kept_dets(), t);
    h.has_matrix_ = true;
  }
  return h;
}

double expectation(const StateVector& state, const CompressedHamiltonian& h) {
  if (state.qubits() != h.qubits()) throw DomainError("state and Hamiltonian qubit counts differ");
  const auto& kept = h.kept();
  Eigen::VectorXd re(kept.size()), im(kept.size());
  for (std::size_t i = 0; i < kept.size(); ++i) {
    const auto a = state[kept[i].code.to_index()];
    re(i) = a.real();
    im(i) = a.imag();
  }
  Eigen::VectorXd hre(kept.size()), him(kept.size());
  h.subspace().apply(re, hre);
  h.subspace().apply(im, him);
  return re.dot(hre) + im.dot(him);
}

// ----------------------------------------------------------------------- VQE

double noisy_energy(const CompressedHamiltonian& h, const AnsatzSpec& spec,
                    const std::vector<double>& params, const NoiseModel& noise, int trajectories,
                    std::uint64_t seed) {
  if (trajectories < 1) throw DomainError("at least one trajectory is required");
  double acc = 0.0;
  for (int k = 0; k < trajectories; ++k)
    acc += expectation(run_circuit(spec, params, &noise, mix_seed(seed, k)), h);
  return acc / trajectories;
}

VqeResult vqe_minimize(const CompressedHamiltonian& h, const AnsatzSpec& spec, const VqeConfig& cfg,
                       const NoiseModel* noise, std::uint64_t seed) {
  spec.validate();
  if (spec.q != h.qubits()) throw DomainError("ansatz qubits != Hamiltonian qubits");
  std::mt19937_64 init(mix_seed(seed, 0x1));
  std::uniform_real_distribution<double> u(-cfg.init_scale, cfg.init_scale);
  std::vector<double> x0(spec.parameter_count());
  for (double& v : x0) v = u(init);

  OptimResult r;
  if (!noise || noise->is_zero()) {
    r = lbfgs_minimize([&](const std::vector<double>& p) { return expectation(run_circuit(spec, p), h); },
                       std::move(x0), cfg.lbfgs);
  } else {
    const std::uint64_t traj_seed = mix_seed(seed, 0x2);
    r = nelder_mead_minimize(
        [&](const std::vector<double>& p) {
          return noisy_energy(h, spec, p, *noise, cfg.trajectories, traj_seed);
        },
        std::move(x0), cfg.nelder_mead);
  }
  return {r.f, std::move(r.x), std::move(r.trace), r.evaluations};
}

}  // namespace lqsci
