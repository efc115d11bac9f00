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
 * @file series.hpp
 * @brief Cohomology-valued hypergeometric I-series of F and W, the amplitude
 *        expansion around t = infinity, and its Gamma-class asymptotics.
 *
 * Coefficients of q^d, d in N^n, n = l+1:
 *
 *   I_F:  prod_{k=1}^{|d|} (c_1 + k z)   / prod_i prod_{k=1}^{d_i} (p_i + k z)^2
 *   I_W:  prod_{k=1}^{|d|} (c_1 + k z)^2 / prod_i prod_{k=1}^{d_i} (p_i + k z)^2
 *
 * The amplitude for t away from [0, inf), and on either side of the cut, is
 *
 *   F(q,t) = (1/t) int_F e^{-p log(q/(-t))} sum_d W_d(-1) (q/t)^d  Gamma_F Gamma(1-c_1)
 *
 * which is what the termwise Laplace transform of the I_F identity produces:
 * Gamma(1+|d|-c_1) = Gamma(1-c_1) prod_k (k - c_1) turns the numerator of the
 * F-coefficient into (-1)^{|d|} times the W-numerator, so the series variable
 * is q/t while the logarithmic prefactor carries log(q/(-t)).
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "banana/cohomology.hpp"
#include "banana/types.hpp"

namespace banana {

enum class IKind { F, W };

/// Calls fn(d) for every d in N^n with |d| = m, in lexicographic order.
inline void for_each_in_shell(int n, int m, const std::function<void(std::span<const int>)>& fn) {
  std::vector<int> d(n, 0);
  // d[0..n-2] free, d[n-1] takes the remainder
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == n - 1) {
      d[pos] = left;
      fn(d);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      d[pos] = v;
      rec(pos + 1, left - v);
    }
  };
  rec(0, m);
}

/// Coefficient of q^d in I_F or I_W, without the e^{p log q / z} prefactor.
/// Built literally: numerator products, then each (p_i + k z)^2 inverted.
inline CohClass i_coeff(IKind kind, std::span<const int> d, Complex z, int loops) {
  if (z == Complex{}) throw DomainError("i_coeff: z must be nonzero");
  const int n = loops + 1;
  if (int(d.size()) != n) throw std::invalid_argument("i_coeff: multi-index has wrong length");
  int total = 0;
  for (int v : d) {
    if (v < 0) throw std::invalid_argument("i_coeff: negative multi-index entry");
    total += v;
  }
  const CohClass c1 = CohClass::c1(n);
  CohClass r = CohClass::unit(n);
  for (int k = 1; k <= total; ++k) {
    const CohClass f = c1 + double(k) * z;
    r = r * f;
    if (kind == IKind::W) r = r * f;
  }
  for (int i = 1; i <= n; ++i) {
    for (int k = 1; k <= d[i - 1]; ++k) {
      const CohClass f = CohClass::p(i, n) + double(k) * z;
      r = r * invert(f * f);
    }
  }
  return r;
}

inline CohClass i_coeff_F(std::span<const int> d, Complex z, int loops) { return i_coeff(IKind::F, d, z, loops); }
inline CohClass i_coeff_W(std::span<const int> d, Complex z, int loops) { return i_coeff(IKind::W, d, z, loops); }

/// Partial sum of an I-series together with its last shell.
struct SeriesResult {
  CohClass value;
  CohClass last_shell;
  /// max-norm of the last summed shell
  double tail = 0.0;
  int degree = 0;
  bool converged = false;
};

namespace detail {

// number of d in N^n with |d| = m
inline double binomial_count(int n, int m) {
  double r = 1.0;
  for (int k = 1; k < n; ++k) r = r * double(m + k) / double(k);
  return r;
}

/// sum_{|d| <= D} coeff_d x^d with x_i = exp(log_x[i]), no prefactor.
///
/// Each coefficient is split as (scalar) * N_{|d|} * prod_i (1 + b_{d_i} p_i):
///   W: scalar = multinomial(|d|; d)^2,            N_m = prod_k (1 + c_1/(kz))^2
///   F: scalar = |d|! / prod d_i!^2 * z^{-|d|},    N_m = prod_k (1 + c_1/(kz))
/// and prod_{k<=j} (1 + p/(kz))^{-2} = 1 - 2 H_j p / z since p^2 = 0.
inline SeriesResult sum_i_series(IKind kind, std::span<const Complex> log_x, Complex z, const Truncation& trunc) {
  if (z == Complex{}) throw DomainError("I-series: z must be nonzero");
  const int n = int(log_x.size());
  const Complex log_z = std::log(z);
  const CohClass c1 = CohClass::c1(n);

  std::vector<Complex> b(trunc.max_degree + 1, 0.0);
  std::vector<long double> lfact(trunc.max_degree + 1, 0.0L);
  {
    Complex harmonic = 0.0;
    for (int j = 1; j <= trunc.max_degree; ++j) {
      harmonic += 1.0 / double(j);
      b[j] = -2.0 * harmonic / z;
      lfact[j] = lfact[j - 1] + std::log((long double)j);
    }
  }

  SeriesResult out{CohClass(n), CohClass(n)};
  double terms = 1.0;
  CohClass numer = CohClass::unit(n);
  for (int m = 0; m <= trunc.max_degree; ++m) {
    if (m > 0) {
      const CohClass f = 1.0 + c1 / (double(m) * z);
      numer = numer * f;
      if (kind == IKind::W) numer = numer * f;
    }
    if (m > 0) {
      terms += binomial_count(n, m);
      if (terms > trunc.max_terms) break;
    }
    CohClass shell(n);
    for_each_in_shell(n, m, [&](std::span<const int> d) {
      long double log_mag = 0.0L;
      for (int v : d) log_mag -= lfact[v];
      log_mag = kind == IKind::W ? 2.0L * (lfact[m] + log_mag) : lfact[m] + 2.0L * log_mag;
      Complex phase_log = kind == IKind::F ? -double(m) * log_z : Complex{};
      for (int i = 0; i < n; ++i) {
        log_mag += (long double)d[i] * (long double)log_x[i].real();
        phase_log += Complex(0.0, double(d[i]) * log_x[i].imag());
      }
      const Complex s = std::exp(Complex(double(log_mag), 0.0) + phase_log);
      CohClass term = CohClass::scalar(s, n);
      for (int i = 0; i < n; ++i)
        if (d[i] > 0) term.mul_linear(i + 1, 1.0, b[d[i]]);
      shell += term;
    });
    shell = numer * shell;
    out.value += shell;
    out.tail = shell.max_norm();
    out.degree = m;
    out.last_shell = std::move(shell);
    if (m >= 1 && out.tail < trunc.tail_tol) {
      out.converged = true;
      break;
    }
  }
  return out;
}

inline CohClass log_prefactor(std::span<const Complex> log_x, Complex z) {
  std::vector<Complex> w(log_x.begin(), log_x.end());
  for (auto& v : w) v /= z;
  return exp_nilpotent(CohClass::linear(w));
}

}  // namespace detail

/// I_F(q, z) or I_W(q, z) truncated per `trunc`, including e^{p log q / z}.
/// Non-convergence is reported through SeriesResult::converged.
inline SeriesResult i_function(IKind kind, const LoopConfig& cfg, std::span<const double> qvals, Complex z,
                               const Truncation& trunc) {
  cfg.validate();
  if (int(qvals.size()) != cfg.num_masses()) throw std::invalid_argument("i_function: wrong number of q values");
  std::vector<Complex> log_q;
  for (double v : qvals) {
    if (!(v > 0.0)) throw DomainError("i_function: q values must be positive");
    log_q.emplace_back(std::log(v), 0.0);
  }
  SeriesResult r = detail::sum_i_series(kind, log_q, z, trunc);
  const CohClass pre = detail::log_prefactor(log_q, z);
  r.value = pre * r.value;
  r.last_shell = pre * r.last_shell;
  return r;
}

/// Gamma_F * Gamma(1 - c_1).
inline CohClass gamma_class_KF(int loops) {
  return gamma_class_F(loops) * gamma_one_plus(CohClass::c1(loops + 1), -1);
}

/// Convergence region enforced by Truncation::radius_guard.
inline bool within_series_radius(const LoopConfig& cfg, Complex t) {
  const double qmax = *std::max_element(cfg.q.begin(), cfg.q.end());
  return qmax / std::abs(t) <= 1.0 / 16.0 && std::abs(t) >= 1.25 * threshold_T(cfg);
}

/// The amplitude from its expansion at t = infinity.
///
/// Untagged t uses the principal log(-t) (analytic off [0, inf)); t on the cut
/// needs Branch::lower (t - i0) or Branch::upper (t + i0).
inline AmplitudeResult amplitude_series(const LoopConfig& cfg, const EvalPoint& pt, const Truncation& trunc = {}) {
  cfg.validate();
  if (pt.t == Complex{}) throw DomainError("amplitude_series: t = 0");
  if (trunc.radius_guard && !within_series_radius(cfg, pt.t))
    throw DomainError("amplitude_series: |t| too small for the expansion (need max q/|t| <= 1/16 and |t| >= 1.25 T)");
  const int n = cfg.num_masses();
  const Complex log_mt = pt.log_minus_t();
  const Complex log_t = pt.log_t();

  std::vector<Complex> log_x(n), log_pref(n);
  for (int i = 0; i < n; ++i) {
    const double lq = std::log(cfg.q[i]);
    log_x[i] = lq - log_t;
    log_pref[i] = lq - log_mt;
  }
  SeriesResult s = detail::sum_i_series(IKind::W, log_x, -1.0, trunc);
  const CohClass weight = detail::log_prefactor(log_pref, -1.0);
  const CohClass gk = gamma_class_KF(cfg.loops);

  AmplitudeResult r;
  r.method = Method::series;
  r.value = integrate_over_F(weight * s.value * gk) / pt.t;
  r.err_estimate = std::abs(integrate_over_F(weight * s.last_shell * gk) / pt.t);
  r.converged = s.converged;
  r.work = s.degree;
  if (!s.converged)
    throw ConvergenceError("amplitude_series: tail " + std::to_string(s.tail) + " above tolerance at degree " +
                               std::to_string(s.degree),
                           r);
  return r;
}

/// int_0^inf e^{r t} r^a dr = Gamma(1+a) / (-t)^{1+a}.
inline Complex laplace_term(Complex a, double t) {
  if (!((1.0 + a).real() > 0.0)) throw DomainError("laplace_term: need Re(1+a) > 0");
  if (!(t < 0.0)) throw DomainError("laplace_term: need t < 0");
  return tgamma_complex(1.0 + a) * std::exp(-(1.0 + a) * std::log(-t));
}

/// Ring-valued Laplace term Gamma(1 + m - c_1) (-t)^{-1-m+c_1}, m = |d|.
inline CohClass laplace_term_class(int total_degree, double t, int n) {
  if (!(t < 0.0)) throw DomainError("laplace_term_class: need t < 0");
  if (total_degree < 0) throw std::invalid_argument("laplace_term_class: negative degree");
  const CohClass c1 = CohClass::c1(n);
  CohClass g = gamma_one_plus(c1, -1);
  for (int k = 1; k <= total_degree; ++k) g = g * (double(k) - c1);
  const double lmt = std::log(-t);
  return g * exp_nilpotent(c1 * lmt) * std::exp(-(1.0 + total_degree) * lmt);
}

namespace detail {

inline CohClass log_ratio_weight(const LoopConfig& cfg, double t) {
  std::vector<Complex> w(cfg.num_masses());
  for (int i = 0; i < cfg.num_masses(); ++i) w[i] = -std::log(cfg.q[i] / t);
  return exp_nilpotent(CohClass::linear(w));
}

inline void check_positive_t(double t, const char* who) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError(std::string(who) + ": need finite t > 0");
}

}  // namespace detail

/// Leading large-t behaviour on either side of the cut:
///   F(q, t -/+ i0) ~ (1/t) int_F e^{-p log(q/t)} Gamma_F e^{+/- i pi c_1} Gamma(1-c_1),
/// with e^{+i pi c_1} for t - i0 (lower) and e^{-i pi c_1} for t + i0 (upper).
inline AmplitudeResult asymptotic_leading(const LoopConfig& cfg, const EvalPoint& pt) {
  cfg.validate();
  if (pt.branch == Branch::none) throw DomainError("asymptotic_leading: needs a branch tag");
  const double t = pt.t.real();
  detail::check_positive_t(t, "asymptotic_leading");
  const int n = cfg.num_masses();
  const CohClass rot = exp_i_pi(CohClass::c1(n), pt.branch == Branch::lower ? 1 : -1);
  AmplitudeResult r;
  r.method = Method::asymptotic_leading;
  r.value = integrate_over_F(detail::log_ratio_weight(cfg, t) * gamma_class_KF(cfg.loops) * rot) / t;
  return r;
}

/// Im F(q, t - i0) ~ (pi/t) int_W e^{-p log(q/t)} Gamma_W.
inline double asymptotic_im(const LoopConfig& cfg, double t) {
  cfg.validate();
  detail::check_positive_t(t, "asymptotic_im");
  return (std::numbers::pi / t) * integrate_over_W(detail::log_ratio_weight(cfg, t) * gamma_class_W(cfg.loops)).real();
}

/// Re F(q, t -/+ i0) ~ (1/t) int_F e^{-p log(q/t)} cos(pi c_1) Gamma(1-c_1)/Gamma(1+c_1) e^{-2 gamma c_1}.
inline double asymptotic_re(const LoopConfig& cfg, double t) {
  cfg.validate();
  detail::check_positive_t(t, "asymptotic_re");
  const int n = cfg.num_masses();
  const CohClass c1 = CohClass::c1(n);
  const CohClass k = cos_pi(c1) * gamma_one_plus(c1, -1) * invert(gamma_one_plus(c1, +1)) *
                     exp_nilpotent(c1 * (-2.0L * kEulerGammaWide));
  return integrate_over_F(detail::log_ratio_weight(cfg, t) * k).real() / t;
}

}  // namespace banana
