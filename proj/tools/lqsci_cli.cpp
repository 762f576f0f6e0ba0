// Copyright 2026 The lossy-qsci Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end. Exit codes: 0 success, 1 other error,
// 2 configuration error, 3 fixture error, 4 convergence failure.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>

#include "CLI11.hpp"
#include "lqsci/chem_io.hpp"
#include "lqsci/ci_engine.hpp"
#include "lqsci/decoder.hpp"
#include "lqsci/gf2_encoder.hpp"
#include "lqsci/pipeline.hpp"

using namespace lqsci;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitFixture = 3;
constexpr int kExitConvergence = 4;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  out << text;
}

std::optional<SzConstraint> sector_of(int n, std::optional<int> ms2) {
  if (!ms2) return std::nullopt;
  if ((n + *ms2) % 2 != 0 || std::abs(*ms2) > n) throw ConfigError("ms2 incompatible with electron count");
  return SzConstraint{(n + *ms2) / 2, (n - *ms2) / 2};
}

std::vector<BenchInstance> parse_instances(const std::string& text, int n) {
  std::vector<BenchInstance> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw ConfigError("instance '" + item + "' is not m:q");
    out.push_back({std::stoi(item.substr(0, colon)), std::stoi(item.substr(colon + 1)), n});
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lossy QSCI simulator"};
  app.require_subcommand(1);

  // parse
  std::string parse_path;
  auto* parse = app.add_subcommand("parse", "Validate an FCIDUMP file");
  parse->add_option("fcidump", parse_path, "FCIDUMP path")->required();

  // fci
  std::string fci_path;
  int fci_n = -1;
  std::optional<int> fci_ms2;
  auto* fci = app.add_subcommand("fci", "Full-CI reference energy of a fixture");
  fci->add_option("fixture", fci_path, "FCIDUMP path (a .meta sidecar is read when present)")->required();
  fci->add_option("--electrons", fci_n, "Electron count (default: from the file)");
  fci->add_option("--ms2", fci_ms2, "Restrict to 2*Sz");

  // encode
  int enc_m = 0, enc_q = 0, enc_n = 0;
  std::string enc_strategy = "chemical", enc_out, enc_fixture;
  std::uint64_t enc_seed = 0;
  auto* enc = app.add_subcommand("encode", "Generate and serialize an encoder");
  enc->add_option("--m", enc_m, "Spin orbitals");
  enc->add_option("--q", enc_q, "Qubits")->required();
  enc->add_option("--strategy", enc_strategy, "random | chemical | biased_chemical");
  enc->add_option("--seed", enc_seed, "Generator seed");
  enc->add_option("--fixture", enc_fixture, "Take m and the chemical ordering from a fixture");
  enc->add_option("--check-n", enc_n, "Report injectivity on the weight-n sector");
  enc->add_option("-o,--out", enc_out, "Output file (default stdout)");

  // train-decoder
  std::string td_encoder, td_out;
  int td_n = 0;
  TrainConfig td_cfg;
  auto* td = app.add_subcommand("train-decoder", "Train NN-FED for an encoder file");
  td->add_option("encoder", td_encoder, "Encoder file from 'encode'")->required();
  td->add_option("--n", td_n, "Electrons")->required();
  td->add_option("--steps", td_cfg.max_steps, "Maximum optimizer steps");
  td->add_option("--batch", td_cfg.batch_size, "Strings per step");
  td->add_option("--lr", td_cfg.learning_rate, "Adam learning rate");
  td->add_option("--target", td_cfg.target_accuracy, "Early-stop held-out accuracy");
  td->add_option("--hidden-factor", td_cfg.hidden_factor, "Hidden width = factor * n * m");
  td->add_option("--seed", td_cfg.seed, "Training seed");
  td->add_option("-o,--out", td_out, "Checkpoint path")->required();

  // bench-decoders
  std::string bd_instances = "30:23,40:27,50:30,60:32,70:34", bd_out, bd_methods = "nn,ga,sa";
  int bd_n = 4, bd_shots = 1000;
  BenchConfig bd_cfg;
  auto* bd = app.add_subcommand("bench-decoders", "Decoder benchmark table as CSV");
  bd->add_option("--instances", bd_instances, "Comma-separated m:q pairs");
  bd->add_option("--n", bd_n, "Electrons");
  bd->add_option("--shots", bd_shots, "Random encoded strings per instance");
  bd->add_option("--methods", bd_methods, "Subset of nn,ga,sa");
  bd->add_option("--steps", bd_cfg.train.max_steps, "NN training steps");
  bd->add_option("--hidden-factor", bd_cfg.train.hidden_factor, "NN hidden width = factor * n * m");
  bd->add_option("--seed", bd_cfg.seed, "Master seed");
  bd->add_option("-o,--out", bd_out, "CSV path (default stdout)");

  // qsci
  std::string qs_config, qs_output;
  std::optional<std::uint64_t> qs_seed;
  auto* qs = app.add_subcommand("qsci", "Run lossy or baseline QSCI from a config file");
  qs->add_option("config", qs_config, "Config file")->required();
  qs->add_option("--output", qs_output, "Output directory (overrides the config)");
  qs->add_option("--seed", qs_seed, "Master seed (overrides the config)");

  // strategies
  std::string st_config, st_out;
  int st_cases = 20;
  auto* st = app.add_subcommand("strategies", "Encoder strategy comparison as CSV");
  st->add_option("config", st_config, "Base config file")->required();
  st->add_option("--cases", st_cases, "Encoders per strategy");
  st->add_option("-o,--out", st_out, "CSV path (default stdout)");

  // r-sweep
  std::string rs_config;
  std::vector<int> rs_values{4, 6, 8, 10, 12, 14, 16};
  auto* rs = app.add_subcommand("r-sweep", "Run a config, then diagonalize the R most frequent pooled samples");
  rs->add_option("config", rs_config, "Config file")->required();
  rs->add_option("--r", rs_values, "Comma-separated R values")->delimiter(',');

  // qubit-sweep
  std::string qw_config, qw_out;
  std::vector<int> qw_qubits{10, 12, 14, 16};
  std::vector<std::string> qw_fixtures;
  auto* qw = app.add_subcommand("qubit-sweep", "Nested lossy runs over register widths as CSV");
  qw->add_option("config", qw_config, "Base config file")->required();
  qw->add_option("--qubits", qw_qubits, "Comma-separated ascending widths")->delimiter(',');
  qw->add_option("--fixture", qw_fixtures, "Fixture to sweep (repeatable; default: the config's)");
  qw->add_option("-o,--out", qw_out, "CSV path (default stdout)");

  // trial-state
  std::string ts_fixture;
  double ts_fidelity = 0.85;
  std::uint64_t ts_seed = 0;
  std::optional<int> ts_ms2;
  auto* ts = app.add_subcommand("trial-state", "Noise-mixed trial state fidelity check");
  ts->add_option("fixture", ts_fixture, "FCIDUMP path")->required();
  ts->add_option("--fidelity", ts_fidelity, "Target |<psi_n|psi_g>|^2");
  ts->add_option("--seed", ts_seed, "Noise seed");
  ts->add_option("--ms2", ts_ms2, "Restrict to 2*Sz");

  CLI11_PARSE(app, argc, argv);

  try {
    std::cout << std::setprecision(12);
    if (*parse) {
      const IntegralTable t = parse_fcidump(slurp(parse_path));
      std::cout << "norb = " << t.n_spatial() << "\nnelec = " << t.n_electrons() << "\nms2 = " << t.ms2()
                << "\ncore_energy = " << t.core_energy() << "\n";
    } else if (*fci) {
      const Fixture f = load_fixture(fci_path);
      const int n = fci_n > 0 ? fci_n : f.table.n_electrons();
      const auto sz = sector_of(n, fci_ms2);
      const auto dets = enumerate_determinants(2 * f.table.n_spatial(), n, sz, kFullCiGuard);
      const EigenResult r = full_ci(f.table, n, sz);
      std::cout << "determinants = " << dets.size() << "\nenergy = " << r.energy << "\n";
      if (auto ref = f.meta_number("fci_energy_ms0")) std::cout << "reference_ms0 = " << *ref << "\n";
    } else if (*enc) {
      SpinOrbitalOrdering order;
      if (!enc_fixture.empty()) {
        const Fixture f = load_fixture(enc_fixture);
        enc_m = 2 * f.table.n_spatial();
        order = chemical_ordering(f.table);
      }
      if (enc_m <= 0) throw ConfigError("give --m or --fixture");
      const EncoderStrategy s = parse_strategy(enc_strategy);
      BiasSet bias;
      if (s == EncoderStrategy::BiasedChemical) {
        if (enc_n <= 0) throw ConfigError("biased_chemical needs --check-n for its excitation bias set");
        bias = excitation_bias_set(enc_m, enc_n, enc_q, default_tier_probabilities(enc_n), mix_seed(enc_seed, 1));
      }
      const EncoderMatrix g = generate_encoder(enc_m, enc_q, s, order, bias.empty() ? nullptr : &bias, enc_seed);
      emit(serialize_encoder(g), enc_out);
      if (enc_n > 0) {
        const auto qb = qubit_bounds(enc_m, enc_n);
        const auto sector = enumerate_determinants(enc_m, enc_n);
        const auto inj = check_injectivity(g, sector);
        std::cerr << "info_lower = " << qb.info_lower << ", sector = " << sector.size()
                  << ", injective = " << (inj.ok ? "yes" : "no") << "\n";
      }
    } else if (*td) {
      const EncoderMatrix g = parse_encoder(slurp(td_encoder));
      const MlpDecoder d = train_nn_fed(g, td_n, td_cfg);
      emit(save_checkpoint(d), td_out);
      std::cout << "accuracy = " << d.stats.accuracy << "\nsteps = " << d.stats.steps
                << "\nseconds = " << d.stats.seconds << "\n";
    } else if (*bd) {
      bd_cfg.run_nn = bd_methods.find("nn") != std::string::npos;
      bd_cfg.run_ga = bd_methods.find("ga") != std::string::npos;
      bd_cfg.run_sa = bd_methods.find("sa") != std::string::npos;
      emit(bench_csv(benchmark_decoders(parse_instances(bd_instances, bd_n), bd_shots, bd_cfg)), bd_out);
    } else if (*qs) {
      ExperimentConfig cfg = load_config(qs_config);
      if (!qs_output.empty()) cfg.output = qs_output;
      if (qs_seed) cfg.seed = *qs_seed;
      const QsciResult r = run_experiment(cfg);
      std::cout << "e_best = " << r.e_best << "\ne_fci = " << r.e_fci << "\nerror = " << r.e_best - r.e_fci
                << "\nn_configs = " << r.s_r.size() << "\nrounds = " << r.rounds.size()
                << "\nconfigs_at_chemical_accuracy = "
                << (r.configs_at_chemical_accuracy ? std::to_string(*r.configs_at_chemical_accuracy) : "none")
                << "\ntotal_shots = " << r.total_shots << "\nshot_qubits = " << r.shot_qubits << "\n";
      if (!r.converged) return kExitConvergence;
    } else if (*st) {
      const ExperimentConfig cfg = load_config(st_config);
      const std::vector<EncoderStrategy> all{EncoderStrategy::Random, EncoderStrategy::Chemical,
                                             EncoderStrategy::BiasedChemical};
      const auto cases = strategy_comparison(cfg, all, st_cases);
      emit(strategy_csv(cases), st_out);
      for (auto s : all) std::cerr << to_string(s) << " median error = " << median_error(cases, s) << "\n";
    } else if (*rs) {
      const ExperimentConfig cfg = load_config(rs_config);
      const ProblemContext ctx = ProblemContext::load(cfg);
      const QsciResult r = run_experiment(cfg, &ctx);
      double vqe_min = std::numeric_limits<double>::infinity();
      for (const auto& rec : r.rounds) vqe_min = std::min(vqe_min, rec.trial_energy);
      std::cout << "R,energy,error\n";
      for (const auto& [rr, e] : r_sweep(r.pooled_counts, ctx.fixture.table, rs_values))
        std::cout << rr << ',' << e << ',' << e - r.e_fci << '\n';
      std::cerr << "e_fci = " << r.e_fci << "\nlowest trial energy = " << vqe_min << "\n";
    } else if (*qw) {
      ExperimentConfig cfg = load_config(qw_config);
      if (qw_fixtures.empty()) qw_fixtures.push_back(cfg.fixture.string());
      std::ostringstream csv;
      csv << std::setprecision(12) << "fixture,qubits,e_best,e_fci,trial_energy,n_configs\n";
      for (const auto& fx : qw_fixtures) {
        cfg.fixture = fx;
        const ProblemContext ctx = ProblemContext::load(cfg);
        const auto runs = qubit_sweep(cfg, qw_qubits, &ctx);
        for (std::size_t i = 0; i < runs.size(); ++i) {
          double trial = std::numeric_limits<double>::infinity();
          for (const auto& rec : runs[i].rounds) trial = std::min(trial, rec.trial_energy);
          csv << std::filesystem::path(fx).filename().string() << ',' << qw_qubits[i] << ',' << runs[i].e_best
              << ',' << runs[i].e_fci << ',' << trial << ',' << runs[i].s_r.size() << '\n';
        }
      }
      emit(csv.str(), qw_out);
    } else if (*ts) {
      const Fixture f = load_fixture(ts_fixture);
      const int n = f.table.n_electrons();
      const auto sz = sector_of(n, ts_ms2);
      const EigenResult g = full_ci(f.table, n, sz);
      const Eigen::VectorXd psi = make_noisy_trial_state(g.vector, ts_fidelity, ts_seed);
      const double ov = psi.dot(g.vector);
      std::cout << "target = " << ts_fidelity << "\nfidelity = " << ov * ov << "\n";
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const FixtureError& e) {
    std::cerr << "fixture error: " << e.what() << "\n";
    return kExitFixture;
  } catch (const SolverError& e) {
    std::cerr << "convergence failure: " << e.what() << "\n";
    return kExitConvergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
