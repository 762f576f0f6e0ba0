// Copyright 2026 The lossy-qsci Authors
// SPDX-License-Identifier: Apache-2.0

#include "lqsci/decoder.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "lqsci/ci_engine.hpp"

namespace lqsci {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int hamming(const Codeword& a, const Codeword& b) {
  return std::popcount(a.word(0) ^ b.word(0)) + std::popcount(a.word(1) ^ b.word(1));
}

void fill_input(const Codeword& c, Eigen::Ref<Eigen::VectorXf> col) {
  for (int i = 0; i < c.size(); ++i) col(i) = c.test(i) ? 1.0f : -1.0f;
}

OccupationString top_n(const Eigen::Ref<const Eigen::VectorXf>& logits, int n) {
  const int m = static_cast<int>(logits.size());
  std::vector<int> idx(m);
  std::iota(idx.begin(), idx.end(), 0);
  // Ties go to the lower index.
  std::partial_sort(idx.begin(), idx.begin() + n, idx.end(), [&](int a, int b) {
    return logits(a) > logits(b) || (logits(a) == logits(b) && a < b);
  });
  OccupationString s(m);
  for (int k = 0; k < n; ++k) s.set(idx[k]);
  return s;
}

std::string hex64(std::uint64_t v) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

OccupationString random_occupation(int m, int n, std::mt19937_64& engine) {
  if (n < 0 || n > m) throw DomainError("random_occupation requires 0 <= n <= m");
  std::array<int, kMaxBits> pool;
  std::iota(pool.begin(), pool.begin() + m, 0);
  OccupationString s(m);
  for (int k = 0; k < n; ++k) {
    const int j = k + static_cast<int>(engine() % static_cast<std::uint64_t>(m - k));
    std::swap(pool[k], pool[j]);
    s.set(pool[k]);
  }
  return s;
}

// ---------------------------------------------------------------- MlpDecoder

void TrainConfig::validate() const {
  if (batch_size <= 0 || max_steps <= 0 || eval_interval <= 0 || eval_samples <= 0)
    throw DomainError("train config: sizes and step counts must be positive");
  if (!(learning_rate > 0.0)) throw DomainError("train config: learning rate must be positive");
  if (hidden_factor <= 0 || hidden_layers <= 0)
    throw DomainError("train config: hidden layers and width factor must be positive");
}

MlpDecoder::MlpDecoder(std::vector<int> arch, int n_electrons, std::uint64_t encoder_fingerprint)
    : arch_(std::move(arch)), n_electrons_(n_electrons), fingerprint_(encoder_fingerprint) {
  if (arch_.size() < 2) throw DomainError("decoder needs at least input and output layers");
  for (int w : arch_)
    if (w <= 0) throw DomainError("layer widths must be positive");
  if (n_electrons_ < 0 || n_electrons_ > arch_.back())
    throw DomainError("decoder electron count out of range");
  for (std::size_t l = 0; l + 1 < arch_.size(); ++l) {
    w_.emplace_back(Eigen::MatrixXf::Zero(arch_[l + 1], arch_[l]));
    b_.emplace_back(Eigen::VectorXf::Zero(arch_[l + 1]));
  }
}

std::size_t MlpDecoder::parameter_count() const noexcept {
  std::size_t n = 0;
  for (std::size_t l = 0; l < w_.size(); ++l) n += w_[l].size() + b_[l].size();
  return n;
}

Eigen::MatrixXf MlpDecoder::logits(const Eigen::MatrixXf& inputs) const {
  if (inputs.rows() != input_width())
    throw DomainError("decoder input width " + std::to_string(inputs.rows()) + " != " +
                      std::to_string(input_width()));
  Eigen::MatrixXf a = inputs;
  for (std::size_t l = 0; l < w_.size(); ++l) {
    Eigen::MatrixXf z = w_[l] * a;
    z.colwise() += b_[l];
    if (l + 1 < w_.size()) {
      a = z.array().tanh().matrix();
    } else {
      a = std::move(z);
    }
  }
  return a;
}

std::vector<float> MlpDecoder::flat_parameters() const {
  std::vector<float> p;
  p.reserve(parameter_count());
  for (std::size_t l = 0; l < w_.size(); ++l) {
    p.insert(p.end(), w_[l].data(), w_[l].data() + w_[l].size());
    p.insert(p.end(), b_[l].data(), b_[l].data() + b_[l].size());
  }
  return p;
}

void MlpDecoder::set_flat_parameters(const std::vector<float>& p) {
  if (p.size() != parameter_count())
    throw DomainError("parameter vector has " + std::to_string(p.size()) + " entries, expected " +
                      std::to_string(parameter_count()));
  const float* src = p.data();
  for (std::size_t l = 0; l < w_.size(); ++l) {
    std::copy(src, src + w_[l].size(), w_[l].data());
    src += w_[l].size();
    std::copy(src, src + b_[l].size(), b_[l].data());
    src += b_[l].size();
  }
}

// ------------------------------------------------------------------ training

namespace {

struct Adam {
  explicit Adam(const MlpDecoder& d) {
    for (const auto& w : d.weights()) {
      mw.emplace_back(Eigen::MatrixXf::Zero(w.rows(), w.cols()));
      vw.emplace_back(Eigen::MatrixXf::Zero(w.rows(), w.cols()));
    }
    for (const auto& b : d.biases()) {
      mb.emplace_back(Eigen::VectorXf::Zero(b.size()));
      vb.emplace_back(Eigen::VectorXf::Zero(b.size()));
    }
  }

  template <class P, class G, class S>
  void update(P& param, const G& grad, S& m, S& v, float lr_t) {
    m = beta1 * m + (1.0f - beta1) * grad;
    v = beta2 * v + (1.0f - beta2) * grad.cwiseProduct(grad);
    param.array() -= lr_t * m.array() / (v.array().sqrt() + eps);
  }

  void step(MlpDecoder& d, const std::vector<Eigen::MatrixXf>& gw,
            const std::vector<Eigen::VectorXf>& gb, float lr) {
    ++t;
    const float bc1 = 1.0f - std::pow(beta1, static_cast<float>(t));
    const float bc2 = 1.0f - std::pow(beta2, static_cast<float>(t));
    const float lr_t = lr * std::sqrt(bc2) / bc1;
    for (std::size_t l = 0; l < gw.size(); ++l) {
      update(d.weights()[l], gw[l], mw[l], vw[l], lr_t);
      update(d.biases()[l], gb[l], mb[l], vb[l], lr_t);
    }
  }

  float beta1 = 0.9f, beta2 = 0.999f, eps = 1e-8f;
  long t = 0;
  std::vector<Eigen::MatrixXf> mw, vw;
  std::vector<Eigen::VectorXf> mb, vb;
};

class Sampler {
 public:
  Sampler(const EncoderMatrix& g, int n, const std::vector<Determinant>* domain, std::uint64_t seed)
      : g_(g), n_(n), domain_(domain), engine_(seed) {}

  Determinant draw() {
    if (domain_) return (*domain_)[engine_() % domain_->size()];
    return random_occupation(g_.m(), n_, engine_);
  }

  void fill(Eigen::MatrixXf& x, Eigen::MatrixXf& y) {
    for (Eigen::Index k = 0; k < x.cols(); ++k) {
      const Determinant s = draw();
      fill_input(encode_determinant(g_, s), x.col(k));
      for (int i = 0; i < g_.m(); ++i) y(i, k) = s.test(i) ? 1.0f : 0.0f;
    }
  }

 private:
  const EncoderMatrix& g_;
  int n_;
  const std::vector<Determinant>* domain_;
  std::mt19937_64 engine_;
};

}  // namespace

MlpDecoder train_nn_fed(const EncoderMatrix& g, int n, const TrainConfig& cfg,
                        const std::vector<Determinant>* domain) {
  cfg.validate();
  const int m = g.m();
  const int q = g.q();
  if (n <= 0 || n > m) throw DomainError("train_nn_fed requires 0 < n <= m");
  if (domain) {
    if (domain->empty()) throw DomainError("train_nn_fed: empty training domain");
    for (const auto& s : *domain)
      if (s.size() != m || s.weight() != n)
        throw DomainError("train_nn_fed: domain string " + s.to_string() + " is not in the sector");
  }

  const auto t0 = Clock::now();
  std::vector<int> arch{q};
  for (int l = 0; l < cfg.hidden_layers; ++l) arch.push_back(cfg.hidden_factor * n * m);
  arch.push_back(m);
  MlpDecoder d(arch, n, g.fingerprint());

  // Glorot-uniform initialization.
  std::mt19937_64 init_rng(mix_seed(cfg.seed, 0x1));
  for (std::size_t l = 0; l < d.weights().size(); ++l) {
    auto& w = d.weights()[l];
    const float lim = std::sqrt(6.0f / static_cast<float>(w.rows() + w.cols()));
    std::uniform_real_distribution<float> u(-lim, lim);
    for (Eigen::Index i = 0; i < w.size(); ++i) w.data()[i] = u(init_rng);
  }

  // Fixed held-out set; the whole domain when it is small enough.
  std::vector<Determinant> held_out;
  if (domain && domain->size() <= static_cast<std::size_t>(cfg.eval_samples)) {
    held_out = *domain;
  } else {
    Sampler eval_sampler(g, n, domain, mix_seed(cfg.seed, 0x2));
    held_out.reserve(cfg.eval_samples);
    for (int k = 0; k < cfg.eval_samples; ++k) held_out.push_back(eval_sampler.draw());
  }

  Sampler sampler(g, n, domain, mix_seed(cfg.seed, 0x3));
  Adam adam(d);
  const int layers = static_cast<int>(d.weights().size());
  const int batch = cfg.batch_size;
  Eigen::MatrixXf x(q, batch), y(m, batch);
  std::vector<Eigen::MatrixXf> act(layers + 1);
  std::vector<Eigen::MatrixXf> gw(layers);
  std::vector<Eigen::VectorXf> gb(layers);

  std::vector<float> best = d.flat_parameters();
  double best_acc = -1.0;
  long steps = 0;
  d.stats.loss_history.reserve(cfg.max_steps);

  for (long step = 1; step <= cfg.max_steps; ++step) {
    sampler.fill(x, y);
    act[0] = x;
    for (int l = 0; l < layers; ++l) {
      Eigen::MatrixXf z = d.weights()[l] * act[l];
      z.colwise() += d.biases()[l];
      act[l + 1] = (l + 1 < layers) ? Eigen::MatrixXf(z.array().tanh().matrix()) : z;
    }
    const Eigen::ArrayXXf z = act[layers].array();
    const float loss =
        (z.max(0.0f) - z * y.array() + (-z.abs()).exp().log1p()).mean();
    if (!std::isfinite(loss)) throw TrainingFailure("non-finite training loss", step);
    d.stats.loss_history.push_back(loss);

    Eigen::MatrixXf dz = ((1.0f / (1.0f + (-z).exp())) - y.array()).matrix() /
                         static_cast<float>(y.size());
    for (int l = layers - 1; l >= 0; --l) {
      gw[l].noalias() = dz * act[l].transpose();
      gb[l] = dz.rowwise().sum();
      if (l > 0) {
        Eigen::MatrixXf da = d.weights()[l].transpose() * dz;
        dz = (da.array() * (1.0f - act[l].array().square())).matrix();
      }
    }
    adam.step(d, gw, gb, static_cast<float>(cfg.learning_rate));
    steps = step;

    if (step % cfg.eval_interval == 0 || step == cfg.max_steps) {
      const double acc = decoder_accuracy(d, g, held_out);
      if (acc > best_acc) {
        best_acc = acc;
        best = d.flat_parameters();
      }
      if (acc >= cfg.target_accuracy) break;
    }
  }

  d.set_flat_parameters(best);
  d.stats.accuracy = best_acc;
  d.stats.steps = steps;
  d.stats.seconds = seconds_since(t0);
  return d;
}

// ----------------------------------------------------------------- inference

OccupationString nn_decode(const MlpDecoder& d, const Codeword& c) {
  if (c.size() != d.input_width())
    throw DomainError("codeword length " + std::to_string(c.size()) + " != decoder input width " +
                      std::to_string(d.input_width()));
  Eigen::MatrixXf x(d.input_width(), 1);
  fill_input(c, x.col(0));
  const Eigen::MatrixXf out = d.logits(x);
  return top_n(out.col(0), d.n_electrons());
}

std::vector<OccupationString> nn_decode_batch(const MlpDecoder& d, const std::vector<Codeword>& cs) {
  std::vector<OccupationString> out;
  out.reserve(cs.size());
  constexpr std::size_t kChunk = 512;
  for (std::size_t start = 0; start < cs.size(); start += kChunk) {
    const std::size_t len = std::min(kChunk, cs.size() - start);
    Eigen::MatrixXf x(d.input_width(), static_cast<Eigen::Index>(len));
    for (std::size_t k = 0; k < len; ++k) {
      const Codeword& c = cs[start + k];
      if (c.size() != d.input_width())
        throw DomainError("codeword length " + std::to_string(c.size()) +
                          " != decoder input width " + std::to_string(d.input_width()));
      fill_input(c, x.col(static_cast<Eigen::Index>(k)));
    }
    const Eigen::MatrixXf logits = d.logits(x);
    for (std::size_t k = 0; k < len; ++k)
      out.push_back(top_n(logits.col(static_cast<Eigen::Index>(k)), d.n_electrons()));
  }
  return out;
}

void ensure_compatible(const MlpDecoder& d, const EncoderMatrix& g) {
  if (d.encoder_fingerprint() != g.fingerprint())
    throw DomainError("decoder was trained for encoder " + hex64(d.encoder_fingerprint()) +
                      ", got " + hex64(g.fingerprint()));
  if (d.input_width() != g.q() || d.output_width() != g.m())
    throw DomainError("decoder shape does not match encoder");
}

double decoder_accuracy(const MlpDecoder& d, const EncoderMatrix& g,
                        const std::vector<Determinant>& strings) {
  ensure_compatible(d, g);
  if (strings.empty()) return 0.0;
  std::vector<Codeword> cs;
  cs.reserve(strings.size());
  for (const auto& s : strings) cs.push_back(encode_determinant(g, s));
  const auto decoded = nn_decode_batch(d, cs);
  std::size_t hits = 0;
  for (std::size_t k = 0; k < strings.size(); ++k) hits += decoded[k] == strings[k];
  return static_cast<double>(hits) / static_cast<double>(strings.size());
}

// ---------------------------------------------------------------- checkpoint

std::string save_checkpoint(const MlpDecoder& d) {
  std::ostringstream out;
  out << "NNFED 1\narch";
  for (int w : d.arch()) out << ' ' << w;
  out << "\nactivation tanh\nn_electrons " << d.n_electrons() << "\nencoder_fingerprint "
      << hex64(d.encoder_fingerprint()) << "\naccuracy " << d.stats.accuracy << "\nsteps "
      << d.stats.steps << "\nparams " << d.parameter_count() << '\n';
  char buf[32];
  const auto p = d.flat_parameters();
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.9g", static_cast<double>(p[i]));
    out << buf << ((i % 8 == 7 || i + 1 == p.size()) ? '\n' : ' ');
  }
  return out.str();
}

MlpDecoder load_checkpoint(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line, key;
  auto expect_line = [&](const char* what) -> std::istringstream {
    if (!std::getline(in, line)) throw ParseError(std::string("checkpoint: missing ") + what, 0);
    std::istringstream ls(line);
    ls >> key;
    if (key != what) throw ParseError("checkpoint: expected '" + std::string(what) + "', got '" + key + "'", 0);
    return ls;
  };
  auto header = expect_line("NNFED");
  int version = 0;
  header >> version;
  if (version != 1) throw ParseError("checkpoint: unsupported version", 0);

  auto arch_line = expect_line("arch");
  std::vector<int> arch;
  for (int w; arch_line >> w;) arch.push_back(w);
  auto act_line = expect_line("activation");
  std::string act;
  act_line >> act;
  if (act != "tanh") throw ParseError("checkpoint: unsupported activation '" + act + "'", 0);
  int n = 0;
  expect_line("n_electrons") >> n;
  std::string fp_text;
  expect_line("encoder_fingerprint") >> fp_text;
  double acc = 0.0;
  expect_line("accuracy") >> acc;
  long steps = 0;
  expect_line("steps") >> steps;
  std::size_t count = 0;
  expect_line("params") >> count;

  MlpDecoder d(arch, n, std::stoull(fp_text, nullptr, 16));
  if (count != d.parameter_count()) throw ParseError("checkpoint: parameter count mismatch", 0);
  std::vector<float> p;
  p.reserve(count);
  for (float v; p.size() < count && in >> v;) p.push_back(v);
  if (p.size() != count) throw ParseError("checkpoint: truncated parameter list", 0);
  d.set_flat_parameters(p);
  d.stats.accuracy = acc;
  d.stats.steps = steps;
  return d;
}

// ------------------------------------------------------------ GA / SA search

void SearchConfig::validate() const {
  if (method == SearchMethod::Genetic) {
    if (population < 2 || generations < 0 || tournament < 1)
      throw DomainError("GA config: population >= 2, generations >= 0, tournament >= 1");
    if (mutation_rate < 0.0 || mutation_rate > 1.0) throw DomainError("GA mutation rate outside [0, 1]");
  } else {
    if (!(t0 > 0.0) || !(cooling > 0.0 && cooling <= 1.0) || steps < 0 || restarts < 1)
      throw DomainError("SA config: t0 > 0, 0 < cooling <= 1, steps >= 0, restarts >= 1");
  }
}

SearchConfig SearchConfig::genetic() { return SearchConfig{}; }

SearchConfig SearchConfig::annealing() {
  SearchConfig c;
  c.method = SearchMethod::Annealing;
  return c;
}

namespace {

/// Moves one electron from a random occupied to a random empty position.
void swap_move(OccupationString& s, std::mt19937_64& rng) {
  const int m = s.size();
  const int n = s.weight();
  if (n == 0 || n == m) return;
  int from = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
  int to = static_cast<int>(rng() % static_cast<std::uint64_t>(m - n));
  int from_pos = -1, to_pos = -1;
  for (int i = 0; i < m && (from_pos < 0 || to_pos < 0); ++i) {
    if (s.test(i)) {
      if (from-- == 0) from_pos = i;
    } else if (to-- == 0) {
      to_pos = i;
    }
  }
  s.set(from_pos, false);
  s.set(to_pos, true);
}

/// Keeps the positions both parents share and fills up to n from the rest.
OccupationString crossover(const OccupationString& a, const OccupationString& b, int n,
                           std::mt19937_64& rng) {
  const int m = a.size();
  OccupationString child(m);
  std::vector<int> rest;
  for (int i = 0; i < m; ++i) {
    if (a.test(i) && b.test(i)) {
      child.set(i);
    } else if (a.test(i) || b.test(i)) {
      rest.push_back(i);
    }
  }
  // Partial Fisher-Yates over the symmetric difference.
  const int need = n - child.weight();
  for (int k = 0; k < need; ++k) {
    const std::size_t j = k + rng() % (rest.size() - k);
    std::swap(rest[k], rest[j]);
    child.set(rest[k]);
  }
  return child;
}

SearchResult genetic_search(const EncoderMatrix& g, int n, const Codeword& c,
                            const SearchConfig& cfg, const OccupationString* init) {
  std::mt19937_64 rng(cfg.seed);
  const int m = g.m();
  std::vector<OccupationString> pop;
  std::vector<int> fit;
  SearchResult best;
  best.distance = c.size() + 1;
  auto evaluate = [&](const OccupationString& s) {
    const int dist = hamming(encode_determinant(g, s), c);
    ++best.evaluations;
    if (dist < best.distance) {
      best.distance = dist;
      best.occ = s;
    }
    return dist;
  };
  for (int k = 0; k < cfg.population; ++k) {
    pop.push_back(init && k == 0 ? *init : random_occupation(m, n, rng));
    fit.push_back(evaluate(pop.back()));
  }
  auto pick = [&]() -> const OccupationString& {
    int winner = static_cast<int>(rng() % pop.size());
    for (int t = 1; t < cfg.tournament; ++t) {
      const int k = static_cast<int>(rng() % pop.size());
      if (fit[k] < fit[winner]) winner = k;
    }
    return pop[winner];
  };
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int gen = 0; gen < cfg.generations && best.distance > 0; ++gen) {
    std::vector<OccupationString> next{best.occ};
    std::vector<int> next_fit{best.distance};
    while (static_cast<int>(next.size()) < cfg.population && best.distance > 0) {
      const OccupationString& a = pick();
      const OccupationString& b = pick();
      OccupationString child = crossover(a, b, n, rng);
      if (u(rng) < cfg.mutation_rate) swap_move(child, rng);
      next_fit.push_back(evaluate(child));
      next.push_back(std::move(child));
    }
    pop = std::move(next);
    fit = std::move(next_fit);
  }
  best.success = best.distance == 0;
  return best;
}

SearchResult annealing_search(const EncoderMatrix& g, int n, const Codeword& c,
                              const SearchConfig& cfg, const OccupationString* init) {
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  SearchResult best;
  best.distance = c.size() + 1;
  for (int r = 0; r < cfg.restarts && best.distance > 0; ++r) {
    OccupationString s = (init && r == 0) ? *init : random_occupation(g.m(), n, rng);
    int dist = hamming(encode_determinant(g, s), c);
    ++best.evaluations;
    if (dist < best.distance) {
      best.distance = dist;
      best.occ = s;
    }
    double temp = cfg.t0;
    for (int step = 0; step < cfg.steps && best.distance > 0; ++step) {
      OccupationString cand = s;
      swap_move(cand, rng);
      const int cd = hamming(encode_determinant(g, cand), c);
      ++best.evaluations;
      const int delta = cd - dist;
      if (delta <= 0 || u(rng) < std::exp(-delta / temp)) {
        s = std::move(cand);
        dist = cd;
        if (dist < best.distance) {
          best.distance = dist;
          best.occ = s;
        }
      }
      temp *= cfg.cooling;
    }
  }
  best.success = best.distance == 0;
  return best;
}

}  // namespace

SearchResult search_decode(const EncoderMatrix& g, int n, const Codeword& c,
                           const SearchConfig& cfg, const OccupationString* init) {
  cfg.validate();
  if (c.size() != g.q()) throw DomainError("search_decode: codeword length != q");
  if (n <= 0 || n > g.m()) throw DomainError("search_decode requires 0 < n <= m");
  if (init && (init->size() != g.m() || init->weight() != n))
    throw DomainError("search_decode: initial string is not in the sector");
  return cfg.method == SearchMethod::Genetic ? genetic_search(g, n, c, cfg, init)
                                             : annealing_search(g, n, c, cfg, init);
}

// -------------------------------------------------------------------- lookup

LookupDecoder::LookupDecoder(const EncoderMatrix& g, int n, const std::vector<Determinant>* domain) {
  std::vector<Determinant> sector;
  if (!domain) {
    if (binomial(g.m(), n) > kLookupGuard)
      throw CapacityError("lookup table would hold C(" + std::to_string(g.m()) + "," +
                          std::to_string(n) + ") entries");
    sector = enumerate_determinants(g.m(), n, std::nullopt, kLookupGuard);
    domain = &sector;
  }
  table_.reserve(domain->size() * 2);
  for (const auto& s : *domain) {
    auto [it, inserted] = table_.try_emplace(encode_determinant(g, s), LookupHit{s, 1});
    if (!inserted) {
      ++it->second.multiplicity;
      ambiguous_ = true;
      if (s < it->second.occ) it->second.occ = s;
    }
  }
}

std::optional<LookupHit> LookupDecoder::decode(const Codeword& c) const {
  auto it = table_.find(c);
  if (it == table_.end()) return std::nullopt;
  return it->second;
}

std::optional<LookupHit> lookup_decode(const EncoderMatrix& g, int n, const Codeword& c) {
  return LookupDecoder(g, n).decode(c);
}

// ----------------------------------------------------------------- benchmark

std::vector<DecodeBenchRow> benchmark_decoders(const std::vector<BenchInstance>& instances,
                                               int shots, const BenchConfig& cfg) {
  if (shots < 0) throw DomainError("benchmark: negative shot count");
  std::vector<DecodeBenchRow> rows;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto& inst = instances[i];
    const std::uint64_t base = mix_seed(cfg.seed, i);
    const EncoderMatrix g =
        generate_encoder(inst.m, inst.q, EncoderStrategy::Random, {}, nullptr, mix_seed(base, 0x10));
    std::mt19937_64 shot_rng(mix_seed(base, 0x20));
    std::vector<Determinant> truth;
    std::vector<Codeword> codes;
    for (int k = 0; k < shots; ++k) {
      truth.push_back(random_occupation(inst.m, inst.n, shot_rng));
      codes.push_back(encode_determinant(g, truth.back()));
    }
    auto make_row = [&](const char* method) {
      DecodeBenchRow r;
      r.m = inst.m;
      r.q = inst.q;
      r.n = inst.n;
      r.method = method;
      return r;
    };
    auto finish = [&](DecodeBenchRow& r, std::size_t hits, double secs) {
      if (shots == 0) return;
      r.decode_s = secs / shots;
      r.accuracy = static_cast<double>(hits) / shots;
    };

    if (cfg.run_nn) {
      TrainConfig tc = cfg.train;
      tc.seed = mix_seed(base, 0x30);
      DecodeBenchRow r = make_row("NN-FED");
      const MlpDecoder d = train_nn_fed(g, inst.n, tc);
      r.train_s = d.stats.seconds;
      const auto t0 = Clock::now();
      const auto out = nn_decode_batch(d, codes);
      const double secs = seconds_since(t0);
      std::size_t hits = 0;
      for (int k = 0; k < shots; ++k) hits += out[k] == truth[k];
      finish(r, hits, secs);
      rows.push_back(std::move(r));
    }
    for (const auto* sc : {cfg.run_ga ? &cfg.ga : nullptr, cfg.run_sa ? &cfg.sa : nullptr}) {
      if (!sc) continue;
      DecodeBenchRow r = make_row(sc->method == SearchMethod::Genetic ? "GA" : "SA");
      std::size_t hits = 0;
      const auto t0 = Clock::now();
      for (int k = 0; k < shots; ++k) {
        SearchConfig shot_cfg = *sc;
        shot_cfg.seed = mix_seed(mix_seed(base, sc->method == SearchMethod::Genetic ? 0x40 : 0x50), k);
        const SearchResult res = search_decode(g, inst.n, codes[k], shot_cfg);
        // Exact match with the true string, not merely a zero-distance preimage.
        hits += res.success && res.occ == truth[k];
      }
      finish(r, hits, seconds_since(t0));
      rows.push_back(std::move(r));
    }
  }
  return rows;
}

std::string bench_csv(const std::vector<DecodeBenchRow>& rows) {
  std::ostringstream out;
  out << "m,q,n,method,train_s,decode_s,accuracy\n";
  auto opt = [&](const std::optional<double>& v) {
    if (v) out << *v;
  };
  for (const auto& r : rows) {
    out << r.m << ',' << r.q << ',' << r.n << ',' << r.method << ',';
    opt(r.train_s);
    out << ',';
    opt(r.decode_s);
    out << ',';
    opt(r.accuracy);
    out << '\n';
  }
  return out.str();
}

}  // namespace lqsci
