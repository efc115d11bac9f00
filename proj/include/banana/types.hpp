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

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "banana/cohomology.hpp"

namespace banana {

/// Thrown for inputs outside the domain of an evaluator (t on the cut, q <= 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Loop order l and the l+1 squared internal masses.
struct LoopConfig {
  int loops = 1;
  std::vector<double> q{1.0, 1.0};

  LoopConfig() = default;
  LoopConfig(int l, std::vector<double> masses) : loops(l), q(std::move(masses)) { validate(); }

  /// Equal masses q_i = mass for all l+1 lines.
  static LoopConfig equal(int l, double mass = 1.0) { return LoopConfig(l, std::vector<double>(l + 1, mass)); }

  int num_masses() const { return loops + 1; }

  void validate() const {
    if (loops < 1) throw DomainError("LoopConfig: loop order must be >= 1");
    if (loops + 1 > CohClass::kMaxVars) throw DomainError("LoopConfig: at most 15 loops are supported");
    if (int(q.size()) != loops + 1)
      throw DomainError("LoopConfig: expected " + std::to_string(loops + 1) + " masses, got " +
                        std::to_string(q.size()));
    for (double v : q)
      if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("LoopConfig: masses must be positive and finite");
  }
};

/// Threshold T = (sum sqrt q_i)^2, the start of the cut.
inline double threshold_T(const LoopConfig& cfg) {
  double s = 0.0;
  for (double v : cfg.q) s += std::sqrt(v);
  return s * s;
}

/// Side of the cut [T, inf) a positive real t is approached from.
enum class Branch { none, upper, lower };

inline std::string_view to_string(Branch b) {
  switch (b) {
    case Branch::upper: return "upper";
    case Branch::lower: return "lower";
    default: return "none";
  }
}

inline Branch parse_branch(std::string_view s) {
  if (s == "upper" || s == "+i0") return Branch::upper;
  if (s == "lower" || s == "-i0") return Branch::lower;
  if (s == "none" || s.empty()) return Branch::none;
  throw std::invalid_argument("unknown branch '" + std::string(s) + "'");
}

/// External momentum squared t, optionally tagged t + i0 (upper) or t - i0 (lower).
struct EvalPoint {
  Complex t{-1.0, 0.0};
  Branch branch = Branch::none;

  EvalPoint() = default;
  EvalPoint(Complex t_, Branch b = Branch::none) : t(t_), branch(b) {
    if (branch != Branch::none && !(t.imag() == 0.0 && t.real() > 0.0))
      throw DomainError("EvalPoint: a branch tag needs real positive t");
  }

  bool is_real() const { return t.imag() == 0.0; }

  /// log(-t) on the sheet reached from t < 0: principal for untagged t,
  /// log|t| + i pi for t - i0 and log|t| - i pi for t + i0.
  Complex log_minus_t() const {
    constexpr double pi = std::numbers::pi;
    switch (branch) {
      case Branch::lower: return {std::log(t.real()), pi};
      case Branch::upper: return {std::log(t.real()), -pi};
      default:
        if (t.imag() == 0.0 && t.real() > 0.0)
          throw DomainError("EvalPoint: real positive t needs a branch tag");
        return std::log(-t);
    }
  }

  /// log t (principal; t itself is single-valued so any consistent log works).
  Complex log_t() const {
    if (branch != Branch::none || (t.imag() == 0.0 && t.real() > 0.0)) return {std::log(t.real()), 0.0};
    return std::log(t);
  }
};

/// Series truncation: shells |d| = 0..max_degree, stop early once a shell's
/// max-norm falls below tail_tol.
struct Truncation {
  int max_degree = 400;
  double tail_tol = 1e-16;
  /// Refuse to sum outside the empirical convergence region (see amplitude_series).
  bool radius_guard = true;
  /// Cap on the number of multi-indices visited.
  double max_terms = 2e7;
};

enum class Method { direct, series, asymptotic_leading, asymptotic_im, asymptotic_re };

inline std::string_view to_string(Method m) {
  switch (m) {
    case Method::direct: return "direct";
    case Method::series: return "series";
    case Method::asymptotic_leading: return "asymptotic_leading";
    case Method::asymptotic_im: return "asymptotic_im";
    case Method::asymptotic_re: return "asymptotic_re";
  }
  return "?";
}

inline Method parse_method(std::string_view s) {
  for (Method m : {Method::direct, Method::series, Method::asymptotic_leading, Method::asymptotic_im,
                   Method::asymptotic_re})
    if (to_string(m) == s) return m;
  throw std::invalid_argument("unknown method '" + std::string(s) + "'");
}

struct AmplitudeResult {
  Complex value{};
  Method method = Method::direct;
  double err_estimate = 0.0;
  bool converged = true;
  /// Shells summed (series) or integrand evaluations (quadrature).
  long long work = 0;
  /// Free-form flags, e.g. "extended_domain".
  std::vector<std::string> flags;
};

/// Thrown by amplitude_series when the tail is still above tolerance at max_degree.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, AmplitudeResult best)
      : std::runtime_error(what), best_(std::move(best)) {}
  const AmplitudeResult& best() const { return best_; }

 private:
  AmplitudeResult best_;
};

}  // namespace banana
