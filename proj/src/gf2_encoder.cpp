// Copyright 2026 The lossy-qsci Authors
// SPDX-License-Identifier: Apache-2.0

#include "lqsci/gf2_encoder.hpp"

#include <bit>
#include <cmath>
#include <random>
#include <sstream>
#include <unordered_map>
#include <utility>

namespace lqsci {

std::string to_string(EncoderStrategy s) {
  switch (s) {
    case EncoderStrategy::Random:
      return "random";
    case EncoderStrategy::Chemical:
      return "chemical";
    case EncoderStrategy::BiasedChemical:
      return "biased_chemical";
  }
  return "unknown";
}

EncoderStrategy parse_strategy(std::string_view text) {
  if (text == "random") return EncoderStrategy::Random;
  if (text == "chemical") return EncoderStrategy::Chemical;
  if (text == "biased_chemical" || text == "biased") return EncoderStrategy::BiasedChemical;
  throw DomainError("unknown encoder strategy '" + std::string(text) + "'");
}

QubitBounds qubit_bounds(int m, int n) {
  if (n < 0 || m < 0 || n > m) {
    throw DomainError("qubit_bounds requires 0 <= n <= m");
  }
  QubitBounds b;
  const double count = binomial(m, n);
  // ceil(log2 count) computed on integers to avoid rounding at exact powers of two.
  int bits = 0;
  while (std::ldexp(1.0, bits) < count) ++bits;
  b.info_lower = bits;
  const double lg = m > 0 ? std::log2(static_cast<double>(m)) : 0.0;
  b.rle_lower = n * lg;
  b.rle_upper = 2.0 * n * lg;
  return b;
}

void BiasSet::validate() const {
  if (configs.empty()) return;
  const int m = configs.front().size();
  const int n = configs.front().weight();
  std::unordered_map<OccupationString, std::size_t, BitsHash> seen;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    if (configs[i].size() != m || configs[i].weight() != n) {
      throw DomainError("bias set members must share length and weight");
    }
    if (!seen.emplace(configs[i], i).second) throw DomainError("bias set contains duplicates");
  }
}

EncoderMatrix::EncoderMatrix(int m, int q, std::vector<Codeword> d_columns,
                             EncoderStrategy strategy, SpinOrbitalOrdering ordering,
                             std::uint64_t seed)
    : m_(m), q_(q), d_(std::move(d_columns)), strategy_(strategy),
      ordering_(std::move(ordering)), seed_(seed) {
  if (q_ <= 0 || q_ > m_ || m_ > kMaxBits) throw DomainError("encoder requires 0 < q <= m <= 128");
  if (static_cast<int>(d_.size()) != m_ - q_) throw DomainError("D must have m - q columns");
  for (const auto& c : d_) {
    if (c.size() != q_) throw DomainError("D column has wrong length");
    if (c.none()) throw DomainError("D column is zero");
  }
  if (ordering_.size() == 0) ordering_ = SpinOrbitalOrdering::identity(m_);
  if (ordering_.size() != m_) throw DomainError("ordering length does not match m");
}

Codeword EncoderMatrix::column(int j) const {
  if (j < 0 || j >= m_) throw DomainError("column index out of range");
  if (j < q_) {
    Codeword c(q_);
    c.set(j);
    return c;
  }
  return d_[j - q_];
}

bool EncoderMatrix::entry(int row, int col) const { return column(col).test(row); }

std::uint64_t EncoderMatrix::fingerprint() const { return fnv1a(serialize_encoder(*this)); }

namespace {

Codeword draw_column(std::mt19937_64& engine, int q) {
  Codeword c(q);
  do {
    std::uint64_t w0 = engine();
    std::uint64_t w1 = q > 64 ? engine() : 0;
    if (q < 64) w0 &= (std::uint64_t{1} << q) - 1;
    if (q > 64 && q < 128) w1 &= (std::uint64_t{1} << (q - 64)) - 1;
    c.set_word(0, w0);
    c.set_word(1, w1);
  } while (c.none());
  return c;
}

}  // namespace

EncoderMatrix generate_encoder(int m, int q, EncoderStrategy strategy,
                               const SpinOrbitalOrdering& ordering, const BiasSet* bias_set,
                               std::uint64_t seed, int max_retries) {
  if (q <= 0 || q > m) throw DomainError("generate_encoder requires 0 < q <= m");
  if (max_retries < 0) throw DomainError("max_retries must be non-negative");
  if (strategy == EncoderStrategy::BiasedChemical) {
    if (bias_set == nullptr || bias_set->empty()) {
      throw DomainError("BiasedChemical strategy needs a nonempty bias set");
    }
    bias_set->validate();
    if (bias_set->configs.front().size() != m) throw DomainError("bias set length differs from m");
  }

  std::mt19937_64 engine(seed);
  SpinOrbitalOrdering order;
  if (strategy == EncoderStrategy::Random) {
    std::vector<int> perm(m);
    for (int i = 0; i < m; ++i) perm[i] = i;
    for (int i = m - 1; i >= 1; --i) {
      const auto j = static_cast<int>(engine() % static_cast<std::uint64_t>(i + 1));
      std::swap(perm[i], perm[j]);
    }
    order = SpinOrbitalOrdering(std::move(perm));
  } else {
    order = ordering.size() ? ordering : SpinOrbitalOrdering::identity(m);
    if (order.size() != m) throw DomainError("ordering length does not match m");
  }

  const int attempts = strategy == EncoderStrategy::BiasedChemical ? max_retries + 1 : 1;
  InjectivityResult last;
  for (int attempt = 0; attempt < attempts; ++attempt) {
    std::vector<Codeword> cols;
    cols.reserve(m - q);
    for (int j = 0; j < m - q; ++j) cols.push_back(draw_column(engine, q));
    EncoderMatrix g(m, q, std::move(cols), strategy, order, seed);
    if (strategy != EncoderStrategy::BiasedChemical) return g;
    last = check_injectivity(g, bias_set->configs);
    if (last) return g;
  }
  throw GenerationFailure("no encoder injective on the bias set within " +
                              std::to_string(max_retries) + " retries; last collision " +
                              bias_set->configs[last.first].to_string() + " / " +
                              bias_set->configs[last.second].to_string(),
                          last.first, last.second);
}

EncoderMatrix identity_encoder(int m) {
  return EncoderMatrix(m, m, {}, EncoderStrategy::Chemical, SpinOrbitalOrdering::identity(m), 0);
}

Codeword encode(const EncoderMatrix& g, const OccupationString& b) {
  if (b.size() != g.m()) {
    throw DomainError("encode: input length " + std::to_string(b.size()) + " != m " +
                      std::to_string(g.m()));
  }
  const int q = g.q();
  Codeword c(q);
  // Identity block: copy the first q bits.
  std::uint64_t w0 = b.word(0);
  std::uint64_t w1 = b.word(1);
  if (q < 64) {
    w0 &= (std::uint64_t{1} << q) - 1;
    w1 = 0;
  } else if (q == 64) {
    w1 = 0;
  } else if (q < 128) {
    w1 &= (std::uint64_t{1} << (q - 64)) - 1;
  }
  c.set_word(0, w0);
  c.set_word(1, w1);
  for (int k = 0; k < 2; ++k) {
    std::uint64_t w = b.word(k);
    while (w != 0) {
      const int pos = 64 * k + std::countr_zero(w);
      w &= w - 1;
      if (pos >= q) c.xor_with(g.d_column(pos - q));
    }
  }
  return c;
}

Codeword encode_determinant(const EncoderMatrix& g, const Determinant& det) {
  return encode(g, g.ordering().apply(det));
}

InjectivityResult check_injectivity(const EncoderMatrix& g,
                                    const std::vector<OccupationString>& configs) {
  std::unordered_map<Codeword, std::size_t, BitsHash> seen;
  seen.reserve(configs.size() * 2);
  for (std::size_t j = 0; j < configs.size(); ++j) {
    auto [it, inserted] = seen.emplace(encode_determinant(g, configs[j]), j);
    if (!inserted) return InjectivityResult{false, it->second, j};
  }
  return {};
}

std::vector<double> default_tier_probabilities(int tiers) {
  std::vector<double> p;
  for (int k = 0; k < tiers; ++k) {
    if (k == 0) {
      p.push_back(1.0);
    } else if (k == 1) {
      p.push_back(0.5);
    } else if (k == 2) {
      p.push_back(0.1);
    } else {
      p.push_back(p.back() * 0.5);
    }
  }
  return p;
}

namespace {

// Calls f for each ascending k-subset of [lo, hi).
template <class F>
void for_each_subset(int lo, int hi, int k, F&& f) {
  const int n = hi - lo;
  if (k < 0 || k > n) return;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = lo + i;
  while (true) {
    f(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == hi - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

BiasSet excitation_bias_set(int m, int n, int q, std::vector<double> tier_probs,
                            std::uint64_t seed, std::size_t max_configs) {
  if (n < 0 || n > m || q <= 0 || q > m) throw DomainError("excitation_bias_set: bad sizes");
  if (tier_probs.empty()) tier_probs = default_tier_probabilities(n);
  while (static_cast<int>(tier_probs.size()) < n) tier_probs.push_back(tier_probs.back() * 0.5);
  for (double p : tier_probs) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("tier probabilities must lie in [0,1]");
  }
  std::mt19937_64 engine(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  BiasSet out;
  out.source = "excitation tiers";
  for (int k = 1; k <= n && out.configs.size() < max_configs; ++k) {
    const double p = tier_probs[k - 1];
    for_each_subset(0, q, n - k, [&](const std::vector<int>& inner) {
      for_each_subset(q, m, k, [&](const std::vector<int>& outer) {
        if (out.configs.size() >= max_configs) return;
        if (unit(engine) >= p) return;
        OccupationString s(m);
        for (int i : inner) s.set(i);
        for (int i : outer) s.set(i);
        out.configs.push_back(s);
      });
    });
  }
  return out;
}

std::string serialize_encoder(const EncoderMatrix& g) {
  std::ostringstream os;
  os << "RLE " << g.m() << ' ' << g.q() << ' ' << to_string(g.strategy()) << ' ' << g.seed()
     << '\n';
  for (int r = 0; r < g.q(); ++r) {
    std::string row(g.m(), '0');
    row[r] = '1';
    for (int j = 0; j < g.m() - g.q(); ++j) {
      if (g.d_column(j).test(r)) row[g.q() + j] = '1';
    }
    os << row << '\n';
  }
  if (!g.ordering().is_identity()) {
    os << "order";
    for (int p : g.ordering().perm()) os << ' ' << p;
    os << '\n';
  }
  return os.str();
}

EncoderMatrix parse_encoder(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(is, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return true;
    }
    return false;
  };
  if (!next_line()) throw ParseError("empty encoder file", 0);
  std::istringstream hs(line);
  std::string tag, strategy;
  int m = 0, q = 0;
  std::uint64_t seed = 0;
  if (!(hs >> tag >> m >> q >> strategy >> seed) || tag != "RLE") {
    throw ParseError("expected header 'RLE m q strategy seed'", lineno);
  }
  if (q <= 0 || q > m || m > kMaxBits) throw ParseError("invalid m/q in header", lineno);
  EncoderStrategy st;
  try {
    st = parse_strategy(strategy);
  } catch (const DomainError& e) {
    throw ParseError(e.what(), lineno);
  }
  std::vector<Codeword> cols(m - q, Codeword(q));
  for (int r = 0; r < q; ++r) {
    if (!next_line()) throw ParseError("missing matrix row", lineno);
    if (static_cast<int>(line.size()) != m) throw ParseError("row has wrong length", lineno);
    for (int c = 0; c < m; ++c) {
      const char ch = line[c];
      if (ch != '0' && ch != '1') throw ParseError("row may only contain 0/1", lineno);
      const bool bit = ch == '1';
      if (c < q) {
        if (bit != (c == r)) throw ParseError("leading block is not the identity", lineno);
      } else if (bit) {
        cols[c - q].set(r);
      }
    }
  }
  SpinOrbitalOrdering order = SpinOrbitalOrdering::identity(m);
  if (next_line()) {
    std::istringstream os(line);
    std::string word;
    os >> word;
    if (word != "order") throw ParseError("unexpected trailing content", lineno);
    std::vector<int> perm;
    int p;
    while (os >> p) perm.push_back(p);
    if (static_cast<int>(perm.size()) != m) throw ParseError("order line has wrong length", lineno);
    try {
      order = SpinOrbitalOrdering(std::move(perm));
    } catch (const DomainError& e) {
      throw ParseError(e.what(), lineno);
    }
  }
  try {
    return EncoderMatrix(m, q, std::move(cols), st, std::move(order), seed);
  } catch (const DomainError& e) {
    throw ParseError(e.what(), 0);
  }
}

}  // namespace lqsci
