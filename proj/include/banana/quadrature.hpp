/*
 * Copyright 2026 The banana-gamma Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/**
 * @file quadrature.hpp
 * @brief Direct evaluation of the banana integral
 *
 *   F(q,t) = int_{(R>0)^l} 1/(t - phi_q(y)) dy_1...dy_l / (y_1...y_l),
 *   phi_q(y) = (q_1 y_1 + ... + q_l y_l + q_{l+1}) (1/y_1 + ... + 1/y_l + 1),
 *
 * of its exponential (mirror) counterpart int e^{-phi_q}, and of the two
 * integral identities linking them to the series side.
 *
 * All integrals are taken in x = log y. In these coordinates
 * phi_q >= min(q) e^{|x|_inf}, which gives explicit tail bounds outside the
 * box [-L, L]^l. For l <= 2 the box is integrated by (nested) adaptive
 * Gauss-Kronrod; for l >= 3 by scrambled-Sobol QMC after the map
 * x = x* + s tan(pi (u - 1/2)), which keeps the integrand bounded on (0,1)^l.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <random>
#include <span>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "banana/sobol.hpp"
#include "banana/types.hpp"

namespace banana {

struct QuadratureBudget {
  double rel_tol = 1e-10;
  /// Cap on subintervals per adaptive 1-D integral.
  unsigned max_intervals = 4000;
  /// Panels per axis of the truncated box.
  int panels = 16;
  QmcOptions qmc{};
  /// Relative target for QMC runs; points double from qmc.log2_points up to qmc_max_log2.
  double qmc_rel_tol = 1e-3;
  unsigned qmc_max_log2 = 20;
  /// Dimensions above this use QMC.
  int max_cubature_dim = 2;
};

struct IntegralResult {
  double value = 0.0;
  double err_estimate = 0.0;
  bool converged = true;
  long long evaluations = 0;
};

inline double phi(const LoopConfig& cfg, std::span<const double> y) {
  if (int(y.size()) != cfg.loops) throw std::invalid_argument("phi: expected l coordinates");
  double lin = cfg.q[cfg.loops];
  double inv = 1.0;
  for (int i = 0; i < cfg.loops; ++i) {
    if (!(y[i] > 0.0)) throw DomainError("phi: coordinates must be positive");
    lin += cfg.q[i] * y[i];
    inv += 1.0 / y[i];
  }
  return lin * inv;
}

namespace detail {

// phi in log coordinates, no checks
inline double phi_log(const LoopConfig& cfg, std::span<const double> x) {
  double lin = cfg.q[cfg.loops];
  double inv = 1.0;
  for (int i = 0; i < cfg.loops; ++i) {
    lin += cfg.q[i] * std::exp(x[i]);
    inv += std::exp(-x[i]);
  }
  return lin * inv;
}

// Location of the minimum of phi in log coordinates: y_i = sqrt(q_{l+1} / q_i).
inline std::vector<double> phi_argmin_log(const LoopConfig& cfg) {
  std::vector<double> c(cfg.loops);
  for (int i = 0; i < cfg.loops; ++i) c[i] = 0.5 * std::log(cfg.q[cfg.loops] / cfg.q[i]);
  return c;
}

// Gamma(l, L) / (l-1)! = e^{-L} sum_{k<l} L^k / k!
inline double upper_gamma_int_normalized(int l, double L) {
  double term = 1.0, sum = 0.0;
  for (int k = 0; k < l; ++k) {
    sum += term;
    term *= L / double(k + 1);
  }
  return std::exp(-L) * sum;
}

// Bound on the integral of e^{-|x|_inf} over |x|_inf > L in R^l:
// the shell |x|_inf = s has measure l 2^l s^{l-1} ds.
inline double exp_tail_volume(int l, double L) {
  double fact = 1.0;
  for (int k = 2; k < l; ++k) fact *= k;
  return std::ldexp(double(l), l) * fact * upper_gamma_int_normalized(l, L);
}

// Bound on the integral of exp(-a0 e^{|x|_inf - L}) over |x|_inf > L, a0 = qmin e^L,
// using e^{s-L} >= 1 + (s-L): integral of s^{l-1} e^{-a0 (1 + s - L)} ds.
inline double double_exp_tail_volume(int l, double L, double a0) {
  double sum = 0.0, fact = 1.0, lk = 1.0;  // sum_k C(l-1,k) L^{l-1-k} k! / a0^{k+1}
  for (int k = 0; k < l; ++k) {
    double binom = 1.0;
    for (int j = 0; j < k; ++j) binom = binom * double(l - 1 - j) / double(j + 1);
    lk = std::pow(L, double(l - 1 - k));
    sum += binom * lk * fact / std::pow(a0, double(k + 1));
    fact *= double(k + 1);
  }
  return std::ldexp(double(l), l) * std::exp(-a0) * sum;
}

using GK = boost::math::quadrature::gauss_kronrod<double, 31>;

// Globally adaptive Gauss-Kronrod (31 points) over [a, b], starting from equal
// panels and always bisecting the interval with the largest error estimate
// until the summed error drops below rel_tol * |I|.
template <class F>
IntegralResult integrate_panels(F&& f, double a, double b, int panels, double rel_tol, unsigned max_intervals) {
  struct Piece {
    double a, b, value, err;
    bool operator<(const Piece& o) const { return err < o.err; }
  };
  long long evals = 0;
  auto rule = [&](double lo, double hi) {
    double err = 0.0;
    const double v = GK::integrate(f, lo, hi, 0, 0.0, &err);
    evals += 31;
    return Piece{lo, hi, v, err};
  };
  std::priority_queue<Piece> heap;
  double total = 0.0, total_err = 0.0;
  const double h = (b - a) / panels;
  for (int k = 0; k < panels; ++k) {
    const Piece p = rule(a + k * h, k + 1 == panels ? b : a + (k + 1) * h);
    total += p.value;
    total_err += p.err;
    heap.push(p);
  }
  while (total_err > rel_tol * std::abs(total) && heap.size() < max_intervals) {
    const Piece p = heap.top();
    heap.pop();
    const double mid = 0.5 * (p.a + p.b);
    if (!(mid > p.a && mid < p.b)) {
      heap.push(p);
      break;
    }
    const Piece l = rule(p.a, mid), r = rule(mid, p.b);
    total += l.value + r.value - p.value;
    total_err += l.err + r.err - p.err;
    heap.push(l);
    heap.push(r);
  }
  // re-sum to drop the running-update rounding
  IntegralResult out;
  while (!heap.empty()) {
    out.value += heap.top().value;
    out.err_estimate += heap.top().err;
    heap.pop();
  }
  out.evaluations = evals;
  out.converged = out.err_estimate <= rel_tol * std::abs(out.value);
  return out;
}

// Integral of g over [-L, L]^dim for dim in {1, 2}. g takes a span of length dim.
template <class G>
IntegralResult integrate_box(int dim, G&& g, double L, const QuadratureBudget& b) {
  if (dim == 1) {
    return integrate_panels([&](double x) { return g(std::span<const double>(&x, 1)); }, -L, L, b.panels,
                            b.rel_tol, b.max_intervals);
  }
  // nested: inner tolerance an order tighter than the outer one
  double inner_err = 0.0;
  long long inner_evals = 0;
  auto outer = [&](double x1) {
    IntegralResult in = integrate_panels(
        [&](double x2) {
          const double x[2] = {x1, x2};
          return g(std::span<const double>(x, 2));
        },
        -L, L, b.panels, 0.1 * b.rel_tol, b.max_intervals);
    inner_err = std::max(inner_err, in.err_estimate);
    inner_evals += in.evaluations;
    return in.value;
  };
  IntegralResult out = integrate_panels(outer, -L, L, b.panels, b.rel_tol, b.max_intervals);
  out.err_estimate += 2.0 * L * inner_err;
  out.evaluations = inner_evals;
  return out;
}

// QMC over R^dim through x = c + s tan(pi (u - 1/2)) per axis.
template <class G>
QmcResult integrate_qmc(int dim, G&& g, std::span<const double> center, const QmcOptions& opt) {
  constexpr double pi = std::numbers::pi;
  constexpr double s = 2.0;
  return qmc_integrate(
      dim,
      [&](std::span<const double> u) {
        double x[CohClass::kMaxVars];
        double jac = 1.0;
        for (int i = 0; i < dim; ++i) {
          const double tn = std::tan(pi * (u[i] - 0.5));
          x[i] = center[i] + s * tn;
          jac *= s * pi * (1.0 + tn * tn);
        }
        const double v = g(std::span<const double>(x, dim));
        return v == 0.0 ? 0.0 : v * jac;
      },
      opt);
}

// Doubles the QMC point count until the standard error meets the budget's relative target.
template <class G>
QmcResult integrate_qmc_adaptive(int dim, G&& g, std::span<const double> center, const QuadratureBudget& b) {
  QmcOptions opt = b.qmc;
  QmcResult res = integrate_qmc(dim, g, center, opt);
  long long evals = res.evaluations;
  while (res.std_error > b.qmc_rel_tol * std::abs(res.value) && opt.log2_points < b.qmc_max_log2) {
    ++opt.log2_points;
    res = integrate_qmc(dim, g, center, opt);
    evals += res.evaluations;
  }
  res.evaluations = evals;
  return res;
}

}  // namespace detail

/// Direct value of F(q,t) for real t < T.
///
/// t < 0 is the convergent regime; 0 <= t < T is still pole-free and is
/// returned with the "extended_domain" flag.
inline AmplitudeResult feynman_direct(const LoopConfig& cfg, double t, const QuadratureBudget& budget = {}) {
  cfg.validate();
  const double T = threshold_T(cfg);
  if (!(t < T)) throw DomainError("feynman_direct: t must lie below the threshold T = " + std::to_string(T));
  const int l = cfg.loops;
  AmplitudeResult r;
  r.method = Method::direct;
  if (t >= 0.0) r.flags.emplace_back("extended_domain");

  auto integrand = [&](std::span<const double> x) { return 1.0 / (t - detail::phi_log(cfg, x)); };

  if (l > budget.max_cubature_dim) {
    const QmcResult q = detail::integrate_qmc_adaptive(l, integrand, detail::phi_argmin_log(cfg), budget);
    r.value = q.value;
    r.err_estimate = q.std_error;
    r.work = q.evaluations;
    r.converged = q.std_error <= budget.qmc_rel_tol * std::abs(q.value);
    r.flags.emplace_back("qmc");
    if (!r.converged) r.flags.emplace_back("budget_exhausted");
    return r;
  }

  // |integrand| <= 1/(phi - t) <= e^{-|x|_inf} / (qmin kappa), kappa = 1 - max(t,0)/T
  const double qmin = *std::min_element(cfg.q.begin(), cfg.q.end());
  const double kappa = 1.0 - std::max(t, 0.0) / T;
  auto tail = [&](double L) { return detail::exp_tail_volume(l, L) / (qmin * kappa); };

  double L = 20.0;
  IntegralResult box = detail::integrate_box(l, integrand, L, budget);
  const double target = 0.1 * budget.rel_tol * std::abs(box.value);
  if (tail(L) > target) {
    while (tail(L) > target && L < 700.0) L += 2.0;
    box = detail::integrate_box(l, integrand, L, budget);
  }
  r.value = box.value;
  r.err_estimate = box.err_estimate + tail(L);
  r.work = box.evaluations;
  r.converged = r.err_estimate <= budget.rel_tol * std::abs(box.value) * 10.0;
  if (!r.converged) r.flags.emplace_back("budget_exhausted");
  return r;
}

/// int_{(R>0)^l} e^{-phi_q(y)} dy/y, positive for every q.
inline IntegralResult oscillatory_direct(const LoopConfig& cfg, const QuadratureBudget& budget = {}) {
  cfg.validate();
  const int l = cfg.loops;
  auto integrand = [&](std::span<const double> x) { return std::exp(-detail::phi_log(cfg, x)); };

  if (l > budget.max_cubature_dim) {
    const QmcResult q = detail::integrate_qmc_adaptive(l, integrand, detail::phi_argmin_log(cfg), budget);
    return {q.value, q.std_error, q.std_error <= budget.qmc_rel_tol * q.value, q.evaluations};
  }

  const double qmin = *std::min_element(cfg.q.begin(), cfg.q.end());
  auto tail = [&](double L) { return detail::double_exp_tail_volume(l, L, qmin * std::exp(L)); };
  // the plateau extends to |x| ~ log(1/qmin); start just past it
  double L = std::max(4.0, std::log(40.0 / qmin));
  IntegralResult box = detail::integrate_box(l, integrand, L, budget);
  const double target = 0.1 * budget.rel_tol * box.value;
  if (tail(L) > target) {
    while (tail(L) > target && L < 700.0) L += 0.5;
    box = detail::integrate_box(l, integrand, L, budget);
  }
  box.err_estimate += tail(L);
  box.converged = box.err_estimate <= budget.rel_tol * box.value * 10.0;
  return box;
}

struct PrzyjalkowskyDeviation {
  /// max |sum_i q_i/u_i - phi_q(y)| / phi_q(y)
  double phase = 0.0;
  /// max |sum_i u_i - 1|
  double simplex = 0.0;
  double max() const { return std::max(phase, simplex); }
};

/// Pointwise check of the substitution u_i = y_i/(1 + sum y), u_{l+1} = 1/(1 + sum y)
/// followed by y -> 1/y: the mirror phase sum_i q_i/u_i must equal phi_q(y).
/// Sample points are log-uniform in [e^-6, e^6]^l.
inline PrzyjalkowskyDeviation przyjalkowsky_check(const LoopConfig& cfg, int samples, std::uint64_t seed = 1) {
  cfg.validate();
  if (samples < 1) throw std::invalid_argument("przyjalkowsky_check: samples must be >= 1");
  const int l = cfg.loops;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> logy(-6.0, 6.0);
  PrzyjalkowskyDeviation dev;
  std::vector<double> y(l), u(l + 1);
  for (int s = 0; s < samples; ++s) {
    for (auto& v : y) v = std::exp(logy(rng));
    if (s == 0) std::fill(y.begin(), y.end(), 1.0);
    double denom = 1.0;
    for (double v : y) denom += 1.0 / v;
    for (int i = 0; i < l; ++i) u[i] = (1.0 / y[i]) / denom;
    u[l] = 1.0 / denom;
    double phase = 0.0, usum = 0.0;
    for (int i = 0; i <= l; ++i) {
      phase += cfg.q[i] / u[i];
      usum += u[i];
    }
    const double ph = phi(cfg, y);
    dev.phase = std::max(dev.phase, std::abs(phase - ph) / ph);
    dev.simplex = std::max(dev.simplex, std::abs(usum - 1.0));
  }
  return dev;
}

struct LaplaceCheck {
  /// int_0^inf e^{r t} (int e^{-phi_{rq}} dy/y) dr
  double laplace_side = 0.0;
  /// -F(q, t) from feynman_direct
  double minus_feynman = 0.0;
  double err_estimate = 0.0;
  double relative_deviation() const {
    return std::abs(laplace_side - minus_feynman) / std::max(std::abs(minus_feynman), 1e-300);
  }
};

/// Laplace transform in r of the exponential integral at r q, compared with -F(q,t).
/// The r-integral runs over s = log r; the inner integrand is positive.
inline LaplaceCheck laplace_check(const LoopConfig& cfg, double t, const QuadratureBudget& budget = {}) {
  cfg.validate();
  if (!(t < 0.0)) throw DomainError("laplace_check: need t < 0");
  QuadratureBudget inner = budget;
  inner.rel_tol = std::max(budget.rel_tol * 0.1, 1e-13);
  QuadratureBudget outer = budget;
  outer.panels = 8;
  double inner_err = 0.0;

  auto integrand = [&](double s) {
    const double r = std::exp(s);
    LoopConfig scaled = cfg;
    for (auto& v : scaled.q) v *= r;
    const IntegralResult o = oscillatory_direct(scaled, inner);
    inner_err = std::max(inner_err, o.err_estimate);
    return std::exp(r * t) * o.value * r;
  };
  // e^{rt} int e^{-r phi} <= e^{-r(|t| + T)} bounds the top end; bottom end decays like r |log r|^l
  const double s_max = std::log(40.0 / (std::abs(t) + threshold_T(cfg)));
  const double s_min = -40.0;
  const IntegralResult lhs =
      detail::integrate_panels(integrand, s_min, s_max, outer.panels, outer.rel_tol, outer.max_intervals);
  LaplaceCheck out;
  out.laplace_side = lhs.value;
  const AmplitudeResult f = feynman_direct(cfg, t, budget);
  out.minus_feynman = -f.value.real();
  out.err_estimate = lhs.err_estimate + inner_err * (s_max - s_min) + f.err_estimate;
  return out;
}

}  // namespace banana
