// Copyright 2026 The lossy-qsci Authors
// SPDX-License-Identifier: Apache-2.0

#include "lqsci/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <optional>

#include "lqsci/error.hpp"

namespace lqsci {

namespace {

double checked(const Objective& f, const std::vector<double>& x, long& evals) {
  const double v = f(x);
  ++evals;
  if (!std::isfinite(v)) throw NumericalError("objective returned a non-finite value");
  return v;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

}  // namespace

OptimResult lbfgs_minimize(const Objective& f, std::vector<double> x0, const LbfgsOptions& opt) {
  const std::size_t n = x0.size();
  OptimResult r;
  r.x = std::move(x0);
  r.f = checked(f, r.x, r.evaluations);
  if (n == 0) {
    r.converged = true;
    return r;
  }

  auto gradient = [&](const std::vector<double>& x) {
    std::vector<double> g(n), xp = x;
    for (std::size_t i = 0; i < n; ++i) {
      xp[i] = x[i] + opt.fd_step;
      const double fp = checked(f, xp, r.evaluations);
      xp[i] = x[i] - opt.fd_step;
      const double fm = checked(f, xp, r.evaluations);
      xp[i] = x[i];
      g[i] = (fp - fm) / (2.0 * opt.fd_step);
    }
    return g;
  };

  std::deque<std::vector<double>> s_hist, y_hist;
  std::deque<double> rho_hist;
  std::vector<double> g = gradient(r.x);

  for (int it = 0; it < opt.max_iterations; ++it) {
    const double gnorm = std::abs(*std::max_element(g.begin(), g.end(), [](double a, double b) {
      return std::abs(a) < std::abs(b);
    }));
    if (gnorm < opt.gtol) {
      r.converged = true;
      break;
    }

    // Two-loop recursion.
    std::vector<double> d(g);
    std::vector<double> alpha(s_hist.size());
    for (std::size_t k = s_hist.size(); k-- > 0;) {
      alpha[k] = rho_hist[k] * dot(s_hist[k], d);
      for (std::size_t i = 0; i < n; ++i) d[i] -= alpha[k] * y_hist[k][i];
    }
    if (!s_hist.empty()) {
      const double gamma = dot(s_hist.back(), y_hist.back()) / dot(y_hist.back(), y_hist.back());
      for (double& v : d) v *= gamma;
    }
    for (std::size_t k = 0; k < s_hist.size(); ++k) {
      const double beta = rho_hist[k] * dot(y_hist[k], d);
      for (std::size_t i = 0; i < n; ++i) d[i] += s_hist[k][i] * (alpha[k] - beta);
    }
    for (double& v : d) v = -v;
    double slope = dot(g, d);
    if (slope >= 0.0) {
      // Not a descent direction: reset to steepest descent.
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
      for (std::size_t i = 0; i < n; ++i) d[i] = -g[i];
      slope = -dot(g, g);
    }

    double step = 1.0;
    std::vector<double> x_new(n);
    double f_new = r.f;
    bool moved = false;
    for (int bt = 0; bt < 40; ++bt) {
      for (std::size_t i = 0; i < n; ++i) x_new[i] = r.x[i] + step * d[i];
      f_new = checked(f, x_new, r.evaluations);
      if (f_new <= r.f + 1e-4 * step * slope) {
        moved = true;
        break;
      }
      step *= 0.5;
    }
    r.iterations = it + 1;
    if (!moved || f_new >= r.f) {
      r.trace.push_back(r.f);
      r.converged = true;
      break;
    }

    std::vector<double> g_new = gradient(x_new);
    std::vector<double> s(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = x_new[i] - r.x[i];
      y[i] = g_new[i] - g[i];
    }
    const double sy = dot(s, y);
    if (sy > 1e-12) {
      s_hist.push_back(std::move(s));
      y_hist.push_back(std::move(y));
      rho_hist.push_back(1.0 / sy);
      if (static_cast<int>(s_hist.size()) > opt.memory) {
        s_hist.pop_front();
        y_hist.pop_front();
        rho_hist.pop_front();
      }
    }
    const double improvement = r.f - f_new;
    r.x = std::move(x_new);
    r.f = f_new;
    g = std::move(g_new);
    r.trace.push_back(r.f);
    if (improvement < opt.ftol) {
      r.converged = true;
      break;
    }
  }
  return r;
}

OptimResult nelder_mead_minimize(const Objective& f, std::vector<double> x0,
                                 const NelderMeadOptions& opt) {
  const std::size_t n = x0.size();
  OptimResult r;
  auto clamp = [&](std::vector<double>& x) {
    for (double& v : x) v = std::clamp(v, opt.lower, opt.upper);
  };
  clamp(x0);
  if (n == 0) {
    r.x = x0;
    r.f = checked(f, x0, r.evaluations);
    r.converged = true;
    return r;
  }

  std::vector<std::vector<double>> simplex;
  std::vector<double> fv;
  // Regular simplex at x with the given best value; steps that would leave the box go the other way.
  auto build = [&](const std::vector<double>& x, double fx) {
    simplex.assign(1, x);
    fv.assign(1, fx);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double> v = x;
      v[i] += (v[i] + opt.initial_step <= opt.upper) ? opt.initial_step : -opt.initial_step;
      clamp(v);
      fv.push_back(checked(f, v, r.evaluations));
      simplex.push_back(std::move(v));
    }
  };
  build(x0, checked(f, x0, r.evaluations));

  std::vector<std::size_t> order(n + 1);
  auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    std::vector<std::vector<double>> s2;
    std::vector<double> f2;
    for (std::size_t k : order) {
      s2.push_back(simplex[k]);
      f2.push_back(fv[k]);
    }
    simplex = std::move(s2);
    fv = std::move(f2);
  };
  auto affine = [&](const std::vector<double>& c, const std::vector<double>& w, double t) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = c[i] + t * (w[i] - c[i]);
    clamp(out);
    return out;
  };

  sort_simplex();
  std::optional<double> restart_from;
  while (r.evaluations < opt.max_evaluations) {
    ++r.iterations;
    double spread = 0.0;
    for (std::size_t k = 1; k <= n; ++k)
      for (std::size_t i = 0; i < n; ++i) spread = std::max(spread, std::abs(simplex[k][i] - simplex[0][i]));
    if (spread < opt.xtol && fv[n] - fv[0] < opt.ftol) {
      // Clamping can flatten the simplex against a bound; restart around the
      // best point and stop only once a restart no longer improves it.
      if (restart_from && fv[0] > *restart_from - opt.ftol) {
        r.converged = true;
        break;
      }
      restart_from = fv[0];
      build(simplex[0], fv[0]);
      sort_simplex();
      continue;
    }

    std::vector<double> centroid(n, 0.0);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[k][i] / static_cast<double>(n);

    const auto xr = affine(centroid, simplex[n], -1.0);
    const double fr = checked(f, xr, r.evaluations);
    if (fr < fv[0]) {
      const auto xe = affine(centroid, simplex[n], -2.0);
      const double fe = checked(f, xe, r.evaluations);
      if (fe < fr) {
        simplex[n] = xe;
        fv[n] = fe;
      } else {
        simplex[n] = xr;
        fv[n] = fr;
      }
    } else if (fr < fv[n - 1]) {
      simplex[n] = xr;
      fv[n] = fr;
    } else {
      const bool outside = fr < fv[n];
      const auto xc = outside ? affine(centroid, xr, 0.5) : affine(centroid, simplex[n], 0.5);
      const double fc = checked(f, xc, r.evaluations);
      if (fc < (outside ? fr : fv[n])) {
        simplex[n] = xc;
        fv[n] = fc;
      } else {
        for (std::size_t k = 1; k <= n; ++k) {
          simplex[k] = affine(simplex[0], simplex[k], 0.5);
          fv[k] = checked(f, simplex[k], r.evaluations);
        }
      }
    }
    sort_simplex();
    r.trace.push_back(fv[0]);
  }
  r.x = simplex[0];
  r.f = fv[0];
  return r;
}

}  // namespace lqsci
