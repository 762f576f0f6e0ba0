// Copyright 2026 The lossy-qsci Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "lqsci/pipeline.hpp"

namespace lqsci {

namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

template <class T>
T number(const std::string& key, const std::string& v) {
  std::istringstream in(v);
  T out{};
  if (!(in >> out) || !(in >> std::ws).eof()) throw ConfigError("'" + key + "' expects a number, got '" + v + "'");
  return out;
}

bool boolean(const std::string& key, const std::string& v) {
  const std::string l = lower(v);
  if (l == "true" || l == "yes" || l == "1" || l == "on") return true;
  if (l == "false" || l == "no" || l == "0" || l == "off") return false;
  throw ConfigError("'" + key + "' expects true/false, got '" + v + "'");
}

const char* name(RunMode m) { return m == RunMode::Lossy ? "lossy" : "baseline"; }
const char* name(TrialMode m) { return m == TrialMode::Vqe ? "vqe" : "exact"; }
const char* name(DecoderKind d) { return d == DecoderKind::Nn ? "nn" : "lookup"; }
const char* name(BiasSource b) {
  switch (b) {
    case BiasSource::None: return "none";
    case BiasSource::Excitations: return "excitations";
    case BiasSource::GroundTop: return "ground_top";
  }
  return "none";
}

}  // namespace

void ExperimentConfig::validate() const {
  if (fixture.empty()) throw ConfigError("no fixture given");
  if (rounds < 1) throw ConfigError("rounds must be >= 1");
  if (shots < 1) throw ConfigError("shots must be >= 1");
  if (r_top < 1) throw ConfigError("r_top must be >= 1");
  if (mode == RunMode::Lossy && qubits < 1) throw ConfigError("lossy mode needs qubits >= 1");
  if (qubits > kMaxQubits) throw ConfigError("qubits exceeds the simulator limit of " + std::to_string(kMaxQubits));
  if (!(tolerance >= 0.0)) throw ConfigError("tolerance must be >= 0");
  if (max_rejections < 0) throw ConfigError("max_rejections must be >= 0");
  if (bias_size < 1) throw ConfigError("bias_size must be >= 1");
  if (!(trial.target_fidelity > 0.0 && trial.target_fidelity <= 1.0))
    throw ConfigError("fidelity must lie in (0, 1]");
  if (trial.ansatz_layers < 1) throw ConfigError("ansatz_layers must be >= 1");
  if (trial.vqe.trajectories < 1) throw ConfigError("trajectories must be >= 1");
  try {
    trial.noise.validate();
    train.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

ExperimentConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
  ExperimentConfig c;
  using Setter = std::function<void(const std::string&, const std::string&)>;
  const std::map<std::string, Setter> setters{
      {"fixture", [&](auto&, auto& v) {
         std::filesystem::path p(v);
         if (p.is_relative() && !base_dir.empty() && !std::filesystem::exists(p)) p = base_dir / p;
         c.fixture = p;
       }},
      {"mode", [&](auto& k, auto& v) {
         const auto l = lower(v);
         if (l == "lossy") c.mode = RunMode::Lossy;
         else if (l == "baseline") c.mode = RunMode::Baseline;
         else throw ConfigError("'" + k + "' must be lossy or baseline");
       }},
      {"electrons", [&](auto& k, auto& v) { c.electrons = number<int>(k, v); }},
      {"ms2", [&](auto& k, auto& v) {
         if (lower(v) == "none" || v.empty()) c.ms2.reset();
         else c.ms2 = number<int>(k, v);
       }},
      {"qubits", [&](auto& k, auto& v) { c.qubits = number<int>(k, v); }},
      {"strategy", [&](auto& k, auto& v) {
         if (lower(v) == "identity") {
           c.strategy.reset();
           return;
         }
         try {
           c.strategy = parse_strategy(lower(v));
         } catch (const DomainError&) {
           throw ConfigError("'" + k + "' must be random, chemical, biased_chemical or identity");
         }
       }},
      {"bias", [&](auto& k, auto& v) {
         const auto l = lower(v);
         if (l == "none") c.bias = BiasSource::None;
         else if (l == "excitations") c.bias = BiasSource::Excitations;
         else if (l == "ground_top") c.bias = BiasSource::GroundTop;
         else throw ConfigError("'" + k + "' must be none, excitations or ground_top");
       }},
      {"bias_size", [&](auto& k, auto& v) { c.bias_size = number<int>(k, v); }},
      {"fixed_encoder", [&](auto& k, auto& v) { c.fixed_encoder = boolean(k, v); }},
      {"rounds", [&](auto& k, auto& v) { c.rounds = number<int>(k, v); }},
      {"shots", [&](auto& k, auto& v) { c.shots = number<long>(k, v); }},
      {"r_top", [&](auto& k, auto& v) { c.r_top = number<int>(k, v); }},
      {"tolerance", [&](auto& k, auto& v) { c.tolerance = number<double>(k, v); }},
      {"max_rejections", [&](auto& k, auto& v) { c.max_rejections = number<int>(k, v); }},
      {"stop_at_chemical_accuracy", [&](auto& k, auto& v) { c.stop_at_chemical_accuracy = boolean(k, v); }},
      {"trial", [&](auto& k, auto& v) {
         const auto l = lower(v);
         if (l == "vqe") c.trial.mode = TrialMode::Vqe;
         else if (l == "exact" || l == "exact_plus_noise") c.trial.mode = TrialMode::ExactPlusNoise;
         else throw ConfigError("'" + k + "' must be vqe or exact");
       }},
      {"fidelity", [&](auto& k, auto& v) { c.trial.target_fidelity = number<double>(k, v); }},
      {"ansatz_layers", [&](auto& k, auto& v) { c.trial.ansatz_layers = number<int>(k, v); }},
      {"ansatz_file", [&](auto&, auto& v) {
         std::filesystem::path p(v);
         if (p.is_relative() && !base_dir.empty() && !std::filesystem::exists(p)) p = base_dir / p;
         std::ifstream in(p);
         if (!in) throw ConfigError("cannot read ansatz file " + p.string());
         std::ostringstream ss;
         ss << in.rdbuf();
         c.trial.ansatz_text = ss.str();
       }},
      {"noise", [&](auto&, auto& v) {
         try {
           c.trial.noise = parse_noise(v);
         } catch (const std::exception& e) {
           throw ConfigError(e.what());
         }
       }},
      {"trajectories", [&](auto& k, auto& v) { c.trial.vqe.trajectories = number<int>(k, v); }},
      {"vqe_max_iterations", [&](auto& k, auto& v) { c.trial.vqe.lbfgs.max_iterations = number<int>(k, v); }},
      {"vqe_max_evaluations", [&](auto& k, auto& v) { c.trial.vqe.nelder_mead.max_evaluations = number<int>(k, v); }},
      {"vqe_init_scale", [&](auto& k, auto& v) { c.trial.vqe.init_scale = number<double>(k, v); }},
      {"decoder", [&](auto& k, auto& v) {
         const auto l = lower(v);
         if (l == "nn") c.decoder = DecoderKind::Nn;
         else if (l == "lookup") c.decoder = DecoderKind::Lookup;
         else throw ConfigError("'" + k + "' must be nn or lookup");
       }},
      {"decoder_floor", [&](auto& k, auto& v) { c.decoder_floor = number<double>(k, v); }},
      {"train_steps", [&](auto& k, auto& v) { c.train.max_steps = number<long>(k, v); }},
      {"train_batch", [&](auto& k, auto& v) { c.train.batch_size = number<int>(k, v); }},
      {"learning_rate", [&](auto& k, auto& v) { c.train.learning_rate = number<double>(k, v); }},
      {"target_accuracy", [&](auto& k, auto& v) { c.train.target_accuracy = number<double>(k, v); }},
      {"hidden_factor", [&](auto& k, auto& v) { c.train.hidden_factor = number<int>(k, v); }},
      {"seed", [&](auto& k, auto& v) { c.seed = number<std::uint64_t>(k, v); }},
      {"output", [&](auto&, auto& v) { c.output = v; }},
  };

  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = lower(trim(line.substr(0, eq)));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    try {
      it->second(key, value);
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.parent_path());
}

std::string serialize_config(const ExperimentConfig& c) {
  std::ostringstream out;
  out.precision(17);
  out << "fixture = " << c.fixture.string() << "\nmode = " << name(c.mode) << "\nelectrons = " << c.electrons
      << "\nms2 = " << (c.ms2 ? std::to_string(*c.ms2) : "none") << "\nqubits = " << c.qubits
      << "\nstrategy = " << (c.strategy ? to_string(*c.strategy) : "identity") << "\nbias = " << name(c.bias)
      << "\nbias_size = " << c.bias_size << "\nfixed_encoder = " << (c.fixed_encoder ? "true" : "false")
      << "\nrounds = " << c.rounds << "\nshots = " << c.shots << "\nr_top = " << c.r_top
      << "\ntolerance = " << c.tolerance << "\nmax_rejections = " << c.max_rejections
      << "\nstop_at_chemical_accuracy = " << (c.stop_at_chemical_accuracy ? "true" : "false")
      << "\ntrial = " << name(c.trial.mode) << "\nfidelity = " << c.trial.target_fidelity
      << "\nansatz_layers = " << c.trial.ansatz_layers << "\nnoise = " << serialize_noise(c.trial.noise)
      << "\ntrajectories = " << c.trial.vqe.trajectories
      << "\nvqe_max_iterations = " << c.trial.vqe.lbfgs.max_iterations
      << "\nvqe_max_evaluations = " << c.trial.vqe.nelder_mead.max_evaluations
      << "\nvqe_init_scale = " << c.trial.vqe.init_scale << "\ndecoder = " << name(c.decoder)
      << "\ndecoder_floor = " << c.decoder_floor << "\ntrain_steps = " << c.train.max_steps
      << "\ntrain_batch = " << c.train.batch_size << "\nlearning_rate = " << c.train.learning_rate
      << "\ntarget_accuracy = " << c.train.target_accuracy << "\nhidden_factor = " << c.train.hidden_factor
      << "\nseed = " << c.seed << '\n';
  if (!c.output.empty()) out << "output = " << c.output.string() << '\n';
  return out.str();
}

}  // namespace lqsci
