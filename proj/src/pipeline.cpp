// Copyright 2026 The lossy-qsci Authors
// SPDX-License-Identifier: Apache-2.0

#include "lqsci/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_map>

namespace lqsci {

// Seed-stream tags.
namespace tag {
constexpr std::uint64_t kEncoder = 0xE1;
constexpr std::uint64_t kTrial = 0x7A;
constexpr std::uint64_t kVqe = 0x5C;
constexpr std::uint64_t kShots = 0x5B;
constexpr std::uint64_t kDecoder = 0xDE;
constexpr std::uint64_t kBias = 0xB1;
}  // namespace tag

bool CandidateSet::contains(const Determinant& d) const {
  return std::find(configs.begin(), configs.end(), d) != configs.end();
}

std::vector<Determinant> top_r(const DetCounts& counts, int r) {
  std::vector<std::pair<Determinant, long>> items(counts.begin(), counts.end());
  // std::map iterates lexicographically, so a stable sort keeps that as the tie-break.
  std::stable_sort(items.begin(), items.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  std::vector<Determinant> out;
  for (std::size_t i = 0; i < items.size() && static_cast<int>(i) < r; ++i) out.push_back(items[i].first);
  return out;
}

MergeOutcome select_and_merge(const DetCounts& counts, int r_top, const CandidateSet& s_r,
                              const IntegralTable& t, double e_best, double tol) {
  if (r_top < 1) throw DomainError("r_top must be at least 1");
  MergeOutcome out;
  out.set = s_r;
  out.e_best = e_best;
  out.selected = top_r(counts, r_top);
  std::vector<Determinant> added;
  for (const auto& d : out.selected)
    if (!s_r.contains(d)) added.push_back(d);
  if (added.empty()) {
    out.e_new = e_best;
    return out;
  }
  std::vector<Determinant> merged = s_r.configs;
  merged.insert(merged.end(), added.begin(), added.end());
  out.e_new = subspace_energy(merged, t);
  if (out.e_new < e_best - tol) {
    out.accepted = true;
    out.e_best = out.e_new;
    out.set.configs = std::move(merged);
    out.set.history.push_back(std::move(added));
  }
  return out;
}

Eigen::VectorXd make_noisy_trial_state(const Eigen::VectorXd& psi_g, double target_fidelity,
                                       std::uint64_t seed) {
  if (!(target_fidelity > 0.0 && target_fidelity <= 1.0))
    throw DomainError("target fidelity must lie in (0, 1]");
  const double norm = psi_g.norm();
  if (std::abs(norm - 1.0) > 1e-8) throw DomainError("psi_g must be normalized");
  if (target_fidelity == 1.0) return psi_g;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXd noise(psi_g.size());
  for (Eigen::Index i = 0; i < noise.size(); ++i) noise(i) = u(rng);
  noise.normalize();

  auto mixed = [&](double s) { return Eigen::VectorXd((psi_g + s * noise).normalized()); };
  auto fidelity = [&](double s) {
    const double ov = mixed(s).dot(psi_g);
    return ov * ov;
  };
  double hi = 1.0;
  while (fidelity(hi) > target_fidelity) {
    hi *= 2.0;
    if (hi > 1e8) throw NumericalError("trial-state fidelity target unreachable for this support");
  }
  double lo = 0.0;
  for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f = fidelity(mid);
    if (std::abs(f - target_fidelity) < 1e-6) return mixed(mid);
    (f > target_fidelity ? lo : hi) = mid;
  }
  const Eigen::VectorXd out = mixed(0.5 * (lo + hi));
  const double ov = out.dot(psi_g);
  if (std::abs(ov * ov - target_fidelity) > 1e-4)
    throw NumericalError("trial-state fidelity target unreachable for this support");
  return out;
}

// ------------------------------------------------------------------ problem

ProblemContext ProblemContext::load(const ExperimentConfig& cfg) {
  ProblemContext ctx;
  ctx.fixture = load_fixture(cfg.fixture);
  const auto& t = ctx.fixture.table;
  ctx.n = cfg.electrons > 0 ? cfg.electrons : t.n_electrons();
  const int m = 2 * t.n_spatial();
  if (ctx.n <= 0 || ctx.n > m) throw ConfigError("electron count " + std::to_string(ctx.n) + " invalid for " + std::to_string(m) + " spin orbitals");
  if (cfg.ms2) {
    if ((ctx.n + *cfg.ms2) % 2 != 0 || std::abs(*cfg.ms2) > ctx.n)
      throw ConfigError("ms2 = " + std::to_string(*cfg.ms2) + " incompatible with " + std::to_string(ctx.n) + " electrons");
    const int na = (ctx.n + *cfg.ms2) / 2;
    ctx.sz = SzConstraint{na, ctx.n - na};
  }
  ctx.sector = enumerate_determinants(m, ctx.n, ctx.sz, kFullCiGuard);
  ctx.fci = ground_state(build_subspace_hamiltonian(ctx.sector, t));
  // Fix the global sign so the largest component is positive.
  Eigen::Index imax = 0;
  ctx.fci.vector.cwiseAbs().maxCoeff(&imax);
  if (ctx.fci.vector(imax) < 0) ctx.fci.vector = -ctx.fci.vector;
  return ctx;
}

// -------------------------------------------------------------------- loop

namespace {

std::uint64_t counts_digest(const DetCounts& counts) {
  std::string s;
  for (const auto& [d, c] : counts) s += d.to_string() + ":" + std::to_string(c) + ";";
  return fnv1a(s);
}

std::vector<Determinant> ground_top(const ProblemContext& ctx, int k) {
  std::vector<std::size_t> idx(ctx.sector.size());
  std::iota(idx.begin(), idx.end(), 0);
  const auto& v = ctx.fci.vector;
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(v(static_cast<Eigen::Index>(a))) > std::abs(v(static_cast<Eigen::Index>(b)));
  });
  std::vector<Determinant> out;
  for (std::size_t i = 0; i < idx.size() && static_cast<int>(i) < k; ++i) out.push_back(ctx.sector[idx[i]]);
  return out;
}

bool in_sector(const Determinant& d, int n, const std::optional<SzConstraint>& sz) {
  return d.weight() == n && (!sz || count_alpha(d) == sz->n_alpha);
}

AnsatzSpec make_ansatz(const TrialStatePlan& plan, int q) {
  if (!plan.ansatz_text.empty()) {
    AnsatzSpec spec = parse_ansatz(plan.ansatz_text);
    if (spec.q != q) throw ConfigError("ansatz has " + std::to_string(spec.q) + " qubits, register has " + std::to_string(q));
    return spec;
  }
  return hea(q, plan.ansatz_layers);
}

QsciResult run_loop(const ExperimentConfig& cfg, const ProblemContext& ctx, bool baseline,
                    const CandidateSet* start = nullptr) {
  const auto& t = ctx.fixture.table;
  const int m = 2 * t.n_spatial();
  const int n = ctx.n;
  const int q = baseline ? m : cfg.qubits;
  const bool identity = baseline || !cfg.strategy;
  if (identity && q != m) throw ConfigError("identity encoding needs qubits = spin orbitals (" + std::to_string(m) + ")");

  QsciResult res;
  res.e_fci = ctx.fci.energy;
  res.chemical_threshold = res.e_fci + kChemicalAccuracy;
  if (start && start->size() > 0) {
    for (const auto& d : start->configs)
      if (!in_sector(d, ctx.n, ctx.sz)) throw DomainError("starting candidate outside the sector");
    res.s_r = *start;
    res.e_best = subspace_energy(res.s_r.configs, ctx.fixture.table);
    if (res.e_best <= res.chemical_threshold) res.configs_at_chemical_accuracy = res.s_r.size();
  }

  const SpinOrbitalOrdering ordering = chemical_ordering(t);
  std::unordered_map<Determinant, Eigen::Index, BitsHash> sector_index;
  for (std::size_t i = 0; i < ctx.sector.size(); ++i) sector_index.emplace(ctx.sector[i], static_cast<Eigen::Index>(i));

  // Bias configurations in the canonical basis.
  BiasSet bias;
  if (!identity && cfg.bias != BiasSource::None) {
    if (cfg.bias == BiasSource::GroundTop) {
      bias.configs = ground_top(ctx, cfg.bias_size);
      bias.source = "ground_top";
    } else {
      const BiasSet raw = excitation_bias_set(m, n, q, default_tier_probabilities(n),
                                              mix_seed(cfg.seed, tag::kBias), cfg.bias_size);
      const SpinOrbitalOrdering inv = ordering.inverse();
      for (const auto& b : raw.configs) bias.configs.push_back(inv.apply(b));
      bias.source = "excitations";
    }
  }
  const bool biased = !identity && *cfg.strategy == EncoderStrategy::BiasedChemical;
  if (biased && bias.empty()) throw ConfigError("biased_chemical strategy needs bias = ground_top or excitations");

  const AnsatzSpec ansatz = cfg.trial.mode == TrialMode::Vqe ? make_ansatz(cfg.trial, q) : AnsatzSpec{};
  const bool noisy = !cfg.trial.noise.is_zero();
  std::unordered_map<std::uint64_t, MlpDecoder> decoder_cache;

  int rejections = 0;
  for (int round = 0; round < cfg.rounds; ++round) {
    RoundRecord rec;
    rec.round = round + 1;
    rec.encoder_seed = mix_seed(mix_seed(cfg.seed, tag::kEncoder), cfg.fixed_encoder ? 0 : round);

    const EncoderMatrix g =
        identity ? identity_encoder(m)
                 : generate_encoder(m, q, *cfg.strategy, ordering, biased ? &bias : nullptr, rec.encoder_seed);
    rec.encoder_fingerprint = g.fingerprint();
    const CompressedHamiltonian hc =
        build_compressed_hamiltonian(t, g, n, ctx.sz, biased ? &bias.configs : nullptr, 1e6);
    rec.dropped = hc.dropped();

    // Trial state and samples.
    Counts counts;
    const std::uint64_t shot_seed = mix_seed(mix_seed(cfg.seed, tag::kShots), round);
    if (cfg.trial.mode == TrialMode::ExactPlusNoise) {
      const Eigen::VectorXd psi_n = make_noisy_trial_state(
          ctx.fci.vector, cfg.trial.target_fidelity, mix_seed(mix_seed(cfg.seed, tag::kTrial), round));
      Eigen::VectorXd kept_amps(hc.kept().size());
      for (std::size_t i = 0; i < hc.kept().size(); ++i)
        kept_amps(static_cast<Eigen::Index>(i)) = psi_n(sector_index.at(hc.kept()[i].det));
      if (kept_amps.norm() == 0.0) {
        rec.skipped = true;
        res.rounds.push_back(rec);
        continue;
      }
      kept_amps.normalize();
      const StateVector state = hc.embed(kept_amps);
      rec.trial_energy = expectation(state, hc);
      counts = sample_counts(state, cfg.shots, noisy ? &cfg.trial.noise : nullptr, shot_seed);
    } else {
      const VqeResult vqe = vqe_minimize(hc, ansatz, cfg.trial.vqe, noisy ? &cfg.trial.noise : nullptr,
                                         mix_seed(mix_seed(cfg.seed, tag::kVqe), round));
      rec.trial_energy = vqe.energy;
      if (noisy) {
        const NoiseModel noise = cfg.trial.noise;
        counts = sample_counts(
            [&](std::mt19937_64& eng) { return run_circuit(ansatz, vqe.params, &noise, eng); },
            cfg.shots, &noise, shot_seed);
      } else {
        counts = sample_counts(run_circuit(ansatz, vqe.params), cfg.shots, nullptr, shot_seed);
      }
    }
    res.total_shots += cfg.shots;
    res.shot_qubits += cfg.shots * q;

    // Decode and post-select.
    DetCounts decoded;
    if (identity) {
      for (const auto& [c, k] : counts) {
        Determinant d(m);
        d.set_word(0, c.word(0));
        d.set_word(1, c.word(1));
        if (in_sector(d, n, ctx.sz)) decoded[d] += k;
      }
    } else if (cfg.decoder == DecoderKind::Lookup) {
      const std::vector<Determinant> domain = hc.kept_dets();
      const LookupDecoder lookup(g, n, &domain);
      for (const auto& [c, k] : counts)
        if (auto hit = lookup.decode(c); hit && in_sector(hit->occ, n, ctx.sz)) decoded[hit->occ] += k;
    } else {
      auto it = decoder_cache.find(g.fingerprint());
      if (it == decoder_cache.end()) {
        const std::vector<Determinant> domain = hc.kept_dets();
        TrainConfig tc = cfg.train;
        tc.seed = mix_seed(mix_seed(cfg.seed, tag::kDecoder), g.fingerprint());
        it = decoder_cache.emplace(g.fingerprint(), train_nn_fed(g, n, tc, &domain)).first;
      }
      const MlpDecoder& dec = it->second;
      rec.decoder_accuracy = dec.stats.accuracy;
      if (rec.decoder_accuracy < cfg.decoder_floor) {
        rec.skipped = true;
        res.rounds.push_back(rec);
        continue;
      }
      std::vector<Codeword> cws;
      std::vector<long> ks;
      for (const auto& [c, k] : counts) {
        cws.push_back(c);
        ks.push_back(k);
      }
      const auto out = nn_decode_batch(dec, cws);
      for (std::size_t i = 0; i < out.size(); ++i)
        if (in_sector(out[i], n, ctx.sz)) decoded[out[i]] += ks[i];
    }
    rec.counts_digest = counts_digest(decoded);
    for (const auto& [d, k] : decoded) {
      rec.valid_shots += k;
      res.pooled_counts[d] += k;
    }

    MergeOutcome mo;
    try {
      mo = select_and_merge(decoded, cfg.r_top, res.s_r, t, res.e_best, cfg.tolerance);
    } catch (const SolverError&) {
      res.converged = false;
      res.rounds.push_back(rec);
      break;
    }
    rec.e_new = mo.e_new;
    rec.accepted = mo.accepted;
    res.s_r = std::move(mo.set);
    res.e_best = mo.e_best;
    rec.e_best = res.e_best;
    rec.n_configs = res.s_r.size();
    res.rounds.push_back(rec);
    if (!res.configs_at_chemical_accuracy && res.e_best <= res.chemical_threshold)
      res.configs_at_chemical_accuracy = res.s_r.size();
    if (cfg.stop_at_chemical_accuracy && res.configs_at_chemical_accuracy) break;

    rejections = rec.accepted ? 0 : rejections + 1;
    if (cfg.max_rejections > 0 && rejections >= cfg.max_rejections) break;
  }
  return res;
}

}  // namespace

QsciResult run_lossy_qsci(const ExperimentConfig& cfg, const ProblemContext* ctx, const CandidateSet* start) {
  cfg.validate();
  if (ctx) return run_loop(cfg, *ctx, false, start);
  const ProblemContext own = ProblemContext::load(cfg);
  return run_loop(cfg, own, false, start);
}

QsciResult run_baseline_qsci(const ExperimentConfig& cfg, const ProblemContext* ctx) {
  cfg.validate();
  if (ctx) return run_loop(cfg, *ctx, true);
  const ProblemContext own = ProblemContext::load(cfg);
  return run_loop(cfg, own, true);
}

QsciResult run_experiment(const ExperimentConfig& cfg, const ProblemContext* ctx) {
  QsciResult r = cfg.mode == RunMode::Baseline ? run_baseline_qsci(cfg, ctx) : run_lossy_qsci(cfg, ctx);
  if (!cfg.output.empty()) write_outputs(cfg, r);
  return r;
}

void write_outputs(const ExperimentConfig& cfg, const QsciResult& r) {
  namespace fs = std::filesystem;
  fs::create_directories(cfg.output);
  {
    std::ofstream out(cfg.output / "result.csv");
    out << std::setprecision(12);
    out << "round,e_best,n_configs,accepted\n";
    for (const auto& rec : r.rounds)
      out << rec.round << ',' << rec.e_best << ',' << rec.n_configs << ',' << (rec.accepted ? 1 : 0) << '\n';
  }
  {
    std::ofstream out(cfg.output / "candidates.txt");
    for (const auto& d : r.s_r.configs) out << d.to_string() << '\n';
  }
  {
    std::ofstream out(cfg.output / "meta.txt");
    out << std::setprecision(12);
    out << "# configuration\n" << serialize_config(cfg) << "\n# results\n";
    out << "e_best = " << r.e_best << "\ne_fci = " << r.e_fci << "\nchemical_threshold = " << r.chemical_threshold
        << "\nconfigs_at_chemical_accuracy = "
        << (r.configs_at_chemical_accuracy ? std::to_string(*r.configs_at_chemical_accuracy) : "none")
        << "\ntotal_shots = " << r.total_shots << "\nshot_qubits = " << r.shot_qubits
        << "\nconverged = " << (r.converged ? "true" : "false") << "\n# rounds\n";
    out << "round encoder_seed fingerprint dropped decoder_accuracy skipped trial_energy digest valid_shots e_new accepted\n";
    for (const auto& rec : r.rounds) {
      out << rec.round << ' ' << rec.encoder_seed << ' ' << std::hex << rec.encoder_fingerprint << std::dec << ' '
          << rec.dropped << ' ' << rec.decoder_accuracy << ' ' << rec.skipped << ' ' << rec.trial_energy << ' '
          << std::hex << rec.counts_digest << std::dec << ' ' << rec.valid_shots << ' ' << rec.e_new << ' '
          << rec.accepted << '\n';
    }
    out << "# decisions\n"
           "collision policy = keep lower diagonal energy, ties lexicographic; bias configurations first\n"
           "acceptance = strict decrease beyond tolerance; rejected samples discarded\n"
           "stop = rounds exhausted or max_rejections consecutive rejections\n";
  }
}

// ------------------------------------------------------------------ drivers

std::vector<std::pair<int, double>> r_sweep(const DetCounts& pooled, const IntegralTable& t,
                                            const std::vector<int>& r_values) {
  std::vector<std::pair<int, double>> out;
  for (int r : r_values) {
    const auto dets = top_r(pooled, r);
    if (dets.empty()) throw DomainError("r_sweep: no pooled configurations");
    out.emplace_back(r, subspace_energy(dets, t));
  }
  return out;
}

std::vector<QsciResult> qubit_sweep(const ExperimentConfig& base, const std::vector<int>& qubits,
                                    const ProblemContext* ctx) {
  if (qubits.empty()) return {};
  if (!std::is_sorted(qubits.begin(), qubits.end())) throw ConfigError("qubit sweep must be ascending");
  ExperimentConfig first = base;
  first.mode = RunMode::Lossy;
  first.qubits = qubits.front();
  first.validate();
  std::optional<ProblemContext> own;
  if (!ctx) ctx = &own.emplace(ProblemContext::load(base));
  std::vector<QsciResult> out;
  for (int q : qubits) {
    ExperimentConfig cfg = base;
    cfg.mode = RunMode::Lossy;
    cfg.qubits = q;
    out.push_back(run_lossy_qsci(cfg, ctx, out.empty() ? nullptr : &out.back().s_r));
  }
  return out;
}

std::vector<StrategyCase> strategy_comparison(const ExperimentConfig& base,
                                              const std::vector<EncoderStrategy>& strategies, int cases) {
  base.validate();
  const ProblemContext ctx = ProblemContext::load(base);
  std::vector<StrategyCase> out;
  for (int i = 0; i < cases; ++i) {
    for (EncoderStrategy s : strategies) {
      ExperimentConfig cfg = base;
      cfg.mode = RunMode::Lossy;
      cfg.strategy = s;
      cfg.fixed_encoder = true;
      cfg.seed = mix_seed(base.seed, static_cast<std::uint64_t>(i));
      if (s == EncoderStrategy::BiasedChemical && cfg.bias == BiasSource::None) cfg.bias = BiasSource::GroundTop;
      const QsciResult r = run_lossy_qsci(cfg, &ctx);
      out.push_back({s, i, r.e_best, r.e_best - ctx.fci.energy});
    }
  }
  return out;
}

std::string strategy_csv(const std::vector<StrategyCase>& cases) {
  std::map<EncoderStrategy, std::vector<const StrategyCase*>> by;
  for (const auto& c : cases) by[c.strategy].push_back(&c);
  std::ostringstream out;
  out << std::setprecision(12) << "strategy,rank,case,energy,error\n";
  for (auto& [s, v] : by) {
    std::stable_sort(v.begin(), v.end(), [](const auto* a, const auto* b) { return a->error < b->error; });
    for (std::size_t k = 0; k < v.size(); ++k)
      out << to_string(s) << ',' << k << ',' << v[k]->encoder_index << ',' << v[k]->energy << ','
          << v[k]->error << '\n';
  }
  return out.str();
}

double median_error(const std::vector<StrategyCase>& cases, EncoderStrategy s) {
  std::vector<double> e;
  for (const auto& c : cases)
    if (c.strategy == s) e.push_back(c.error);
  if (e.empty()) throw DomainError("no cases for strategy " + to_string(s));
  std::sort(e.begin(), e.end());
  const std::size_t k = e.size() / 2;
  return e.size() % 2 ? e[k] : 0.5 * (e[k - 1] + e[k]);
}

}  // namespace lqsci
