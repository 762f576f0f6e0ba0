// Copyright 2026 The lossy-qsci Authors
// SPDX-License-Identifier: Apache-2.0

#include "lqsci/chem_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "lqsci/error.hpp"

namespace lqsci {

IntegralTable::IntegralTable(int n_spatial, int n_electrons)
    : n_(n_spatial), n_electrons_(n_electrons) {
  if (n_spatial < 0 || n_spatial > kMaxBits / 2) throw DomainError("n_spatial out of range");
  if (n_electrons < 0 || n_electrons > 2 * n_spatial) throw DomainError("n_electrons out of range");
  h1_.assign(static_cast<std::size_t>(n_) * n_, 0.0);
  h2_.assign(static_cast<std::size_t>(n_) * n_ * n_ * n_, 0.0);
}

void IntegralTable::set_one_body(int p, int q, double v) {
  h1_[static_cast<std::size_t>(p) * n_ + q] = v;
  h1_[static_cast<std::size_t>(q) * n_ + p] = v;
}

void IntegralTable::set_two_body(int p, int q, int r, int s, double v) {
  for (auto [a, b, c, d] : {std::array{p, q, r, s}, std::array{q, p, r, s}, std::array{p, q, s, r},
                            std::array{q, p, s, r}, std::array{r, s, p, q}, std::array{s, r, p, q},
                            std::array{r, s, q, p}, std::array{s, r, q, p}}) {
    h2_[index(a, b, c, d)] = v;
  }
}

void IntegralTable::set_orbital_energies(std::vector<double> e) {
  if (static_cast<int>(e.size()) != n_) throw DomainError("orbital energy count != n_spatial");
  eps_ = std::move(e);
}

IntegralTable IntegralTable::permuted(const std::vector<int>& order) const {
  if (static_cast<int>(order.size()) != n_) throw DomainError("permutation has wrong length");
  IntegralTable out(n_, n_electrons_);
  out.ms2_ = ms2_;
  out.core_ = core_;
  for (int p = 0; p < n_; ++p) {
    for (int q = 0; q < n_; ++q) {
      out.h1_[static_cast<std::size_t>(p) * n_ + q] = one_body(order[p], order[q]);
      for (int r = 0; r < n_; ++r) {
        for (int s = 0; s < n_; ++s) {
          out.h2_[out.index(p, q, r, s)] = two_body(order[p], order[q], order[r], order[s]);
        }
      }
    }
  }
  if (eps_) {
    std::vector<double> e(n_);
    for (int p = 0; p < n_; ++p) e[p] = (*eps_)[order[p]];
    out.eps_ = std::move(e);
  }
  return out;
}

namespace {

std::string upper(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

// Reads KEY=value from the namelist text; returns nullopt when absent.
std::optional<long> namelist_int(const std::string& nl, const std::string& key, std::size_t line) {
  std::size_t pos = 0;
  while ((pos = nl.find(key, pos)) != std::string::npos) {
    const bool left_ok = pos == 0 || !std::isalnum(static_cast<unsigned char>(nl[pos - 1]));
    std::size_t eq = pos + key.size();
    while (eq < nl.size() && std::isspace(static_cast<unsigned char>(nl[eq]))) ++eq;
    if (left_ok && eq < nl.size() && nl[eq] == '=') {
      std::size_t v = eq + 1;
      while (v < nl.size() && std::isspace(static_cast<unsigned char>(nl[v]))) ++v;
      long value = 0;
      auto [ptr, ec] = std::from_chars(nl.data() + v, nl.data() + nl.size(), value);
      if (ec != std::errc()) throw ParseError("malformed value for " + key + " in header", line);
      (void)ptr;
      return value;
    }
    pos += key.size();
  }
  return std::nullopt;
}

bool parse_double(std::string_view tok, double& out) {
  std::string s(tok);
  for (auto& c : s) {
    if (c == 'D' || c == 'd') c = 'E';
  }
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end && *end == '\0' && !s.empty();
}

bool parse_int(std::string_view tok, long& out) {
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && ptr == tok.data() + tok.size();
}

struct Record {
  double value;
  long i, j, k, l;
  std::size_t line;
};

}  // namespace

IntegralTable parse_fcidump(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  std::string namelist;
  std::size_t header_line = 0;
  bool in_header = false;
  bool seen_header = false;
  std::vector<Record> records;

  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    const std::string up = upper(line);
    if (!seen_header && !in_header && records.empty() && up.compare(first, 4, "&FCI") == 0) {
      in_header = true;
      header_line = lineno;
      namelist = up.substr(first + 4);
    } else if (in_header) {
      namelist += ' ' + up;
    }
    if (in_header) {
      const auto end1 = namelist.find("&END");
      const auto end2 = namelist.find('/');
      if (end1 != std::string::npos || end2 != std::string::npos) {
        namelist = namelist.substr(0, std::min(end1, end2));
        in_header = false;
        seen_header = true;
      }
      continue;
    }
    std::istringstream ls(line);
    std::string tok[5];
    for (auto& t : tok) {
      if (!(ls >> t)) throw ParseError("record needs 'value i j k l'", lineno);
    }
    std::string extra;
    if (ls >> extra) throw ParseError("trailing fields in record", lineno);
    Record r{0.0, 0, 0, 0, 0, lineno};
    if (!parse_double(tok[0], r.value)) throw ParseError("non-numeric value '" + tok[0] + "'", lineno);
    if (!std::isfinite(r.value)) throw ParseError("non-finite integral value", lineno);
    if (!parse_int(tok[1], r.i) || !parse_int(tok[2], r.j) || !parse_int(tok[3], r.k) ||
        !parse_int(tok[4], r.l)) {
      throw ParseError("non-integer orbital index", lineno);
    }
    records.push_back(r);
  }
  if (in_header) throw ParseError("header not terminated by &END or /", header_line);

  long norb = 0;
  long nelec = 0;
  long ms2 = 0;
  if (seen_header) {
    auto n = namelist_int(namelist, "NORB", header_line);
    auto e = namelist_int(namelist, "NELEC", header_line);
    if (!n || !e) throw ParseError("header lacks NORB or NELEC", header_line);
    norb = *n;
    nelec = *e;
    ms2 = namelist_int(namelist, "MS2", header_line).value_or(0);
    if (norb < 0 || norb > kMaxBits / 2) throw ParseError("NORB out of range", header_line);
    if (nelec < 0 || nelec > 2 * norb) throw ParseError("NELEC out of range", header_line);
  } else {
    for (const auto& r : records) norb = std::max({norb, r.i, r.j, r.k, r.l});
    if (norb > kMaxBits / 2) throw ParseError("orbital index out of range", 0);
  }

  IntegralTable t(static_cast<int>(norb), static_cast<int>(nelec));
  t.set_ms2(static_cast<int>(ms2));
  for (const auto& r : records) {
    for (long idx : {r.i, r.j, r.k, r.l}) {
      if (idx < 0 || idx > norb) throw ParseError("orbital index out of range", r.line);
    }
    const int i = static_cast<int>(r.i) - 1, j = static_cast<int>(r.j) - 1;
    const int k = static_cast<int>(r.k) - 1, l = static_cast<int>(r.l) - 1;
    if (r.i == 0 && r.j == 0 && r.k == 0 && r.l == 0) {
      t.set_core_energy(r.value);
    } else if (r.i > 0 && r.j > 0 && r.k == 0 && r.l == 0) {
      t.set_one_body(i, j, r.value);
    } else if (r.i > 0 && r.j > 0 && r.k > 0 && r.l > 0) {
      t.set_two_body(i, j, k, l, r.value);
    } else if (r.i > 0 && r.j == 0 && r.k == 0 && r.l == 0) {
      // Orbital energy record; accepted and ignored (sidecar metadata is authoritative).
    } else {
      throw ParseError("unrecognised index pattern", r.line);
    }
  }
  return t;
}

namespace {

void write_record(std::ostringstream& os, double v, int i, int j, int k, int l) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17e %4d %4d %4d %4d\n", v, i, j, k, l);
  os << buf;
}

}  // namespace

std::string serialize_fcidump(const IntegralTable& t) {
  const int n = t.n_spatial();
  std::ostringstream os;
  os << " &FCI NORB=" << n << ",NELEC=" << t.n_electrons() << ",MS2=" << t.ms2() << ",\n";
  os << "  ORBSYM=";
  for (int i = 0; i < n; ++i) os << "1,";
  os << "\n  ISYM=1,\n &END\n";
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      const int ij = i * (i + 1) / 2 + j;
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l <= k; ++l) {
          const int kl = k * (k + 1) / 2 + l;
          if (kl > ij) continue;
          const double v = t.two_body(i, j, k, l);
          if (v != 0.0) write_record(os, v, i + 1, j + 1, k + 1, l + 1);
        }
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      const double v = t.one_body(i, j);
      if (v != 0.0) write_record(os, v, i + 1, j + 1, 0, 0);
    }
  }
  write_record(os, t.core_energy(), 0, 0, 0, 0);
  return os.str();
}

FixtureMeta parse_meta(std::string_view text) {
  FixtureMeta meta;
  std::istringstream is{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", lineno);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    meta[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return meta;
}

std::optional<double> Fixture::meta_number(const std::string& key) const {
  auto it = meta.find(key);
  if (it == meta.end()) return std::nullopt;
  double v = 0;
  if (!parse_double(it->second, v)) return std::nullopt;
  return v;
}

Fixture load_fixture(const std::filesystem::path& path) {
  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) throw FixtureError("cannot open fixture " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  Fixture f;
  f.name = path.stem().string();
  try {
    f.table = parse_fcidump(slurp(path));
  } catch (const ParseError& e) {
    throw FixtureError(path.string() + ": " + e.what());
  }
  auto meta_path = path;
  meta_path.replace_extension(".meta");
  if (std::filesystem::exists(meta_path)) {
    try {
      f.meta = parse_meta(slurp(meta_path));
    } catch (const ParseError& e) {
      throw FixtureError(meta_path.string() + ": " + e.what());
    }
    auto it = f.meta.find("orbital_energies");
    if (it != f.meta.end()) {
      std::istringstream es(it->second);
      std::vector<double> eps;
      std::string tok;
      while (es >> tok) {
        double v;
        if (!parse_double(tok, v)) throw FixtureError(meta_path.string() + ": bad orbital energy");
        eps.push_back(v);
      }
      if (static_cast<int>(eps.size()) != f.table.n_spatial()) {
        throw FixtureError(meta_path.string() + ": orbital energy count mismatch");
      }
      f.table.set_orbital_energies(std::move(eps));
    }
  }
  return f;
}

std::vector<int> energy_order(const IntegralTable& t) {
  const int n = t.n_spatial();
  std::vector<double> e(n);
  for (int p = 0; p < n; ++p) {
    e[p] = t.orbital_energies() ? (*t.orbital_energies())[p] : t.one_body(p, p);
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return e[a] < e[b]; });
  return order;
}

SpinOrbitalOrdering chemical_ordering(const IntegralTable& t) {
  const auto order = energy_order(t);
  std::vector<int> perm(2 * order.size());
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    perm[2 * order[rank]] = static_cast<int>(2 * rank);
    perm[2 * order[rank] + 1] = static_cast<int>(2 * rank + 1);
  }
  return SpinOrbitalOrdering(std::move(perm));
}

IntegralTable sort_by_energy(const IntegralTable& t) { return t.permuted(energy_order(t)); }

}  // namespace lqsci
