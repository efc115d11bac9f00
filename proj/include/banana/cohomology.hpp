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
 * @file cohomology.hpp
 * @brief Arithmetic in C[p_1..p_n]/(p_1^2..p_n^2), the ambient ring for the
 *        cohomology of a (1,...,1) hypersurface F in (P^1)^n.
 *
 * A class stores one complex coefficient per square-free monomial, indexed by
 * the bitmask of the variables it contains. Products of monomials sharing a
 * variable vanish, so multiplication is a subset convolution over disjoint
 * masks. Any class with zero constant term is nilpotent: x^{n+1} = 0, which
 * makes every Taylor series below a finite sum.
 *
 * Coefficients are stored and combined in long double; the accessors round
 * to std::complex<double>.
 */

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "banana/special.hpp"

namespace banana {

using Complex = std::complex<double>;
/// Internal scalar type of CohClass. Coefficient sums of the Gamma classes reach
/// 1e4 at n = 7, where double rounding alone is close to 1e-12.
using WideComplex = std::complex<long double>;
using Mask = std::uint32_t;

class CohClass {
 public:
  static constexpr int kMaxVars = 16;

  /// Zero class in n variables.
  explicit CohClass(int n) : n_(check_vars(n)), c_(std::size_t{1} << n) {}

  static CohClass scalar(WideComplex value, int n) {
    CohClass r(n);
    r.c_[0] = value;
    return r;
  }
  static CohClass unit(int n) { return scalar(1.0, n); }

  /// Hyperplane class p_i, 1-based.
  static CohClass p(int i, int n) {
    CohClass r(n);
    if (i < 1 || i > n) throw std::out_of_range("CohClass::p: index " + std::to_string(i));
    r.c_[Mask{1} << (i - 1)] = 1.0;
    return r;
  }

  /// c_1(F) = p_1 + ... + p_n.
  static CohClass c1(int n) {
    CohClass r(n);
    for (int i = 0; i < n; ++i) r.c_[Mask{1} << i] = 1.0;
    return r;
  }

  /// Degree-one class sum_i w_i p_i.
  static CohClass linear(std::span<const Complex> weights) {
    CohClass r(int(weights.size()));
    for (std::size_t i = 0; i < weights.size(); ++i) r.c_[Mask{1} << i] = weights[i];
    return r;
  }

  int num_vars() const { return n_; }
  std::size_t size() const { return c_.size(); }
  Mask top_mask() const { return Mask(c_.size() - 1); }

  Complex operator[](Mask m) const { return Complex(c_.at(m)); }
  WideComplex& coeff(Mask m) { return c_.at(m); }
  WideComplex wide(Mask m) const { return c_.at(m); }
  std::vector<Complex> coefficients() const { return {c_.begin(), c_.end()}; }

  Complex constant_term() const { return Complex(c_[0]); }
  WideComplex wide_constant_term() const { return c_[0]; }

  /// Homogeneous component of degree k.
  CohClass degree_part(int k) const {
    CohClass r(n_);
    for (std::size_t m = 0; m < c_.size(); ++m)
      if (std::popcount(Mask(m)) == k) r.c_[m] = c_[m];
    return r;
  }

  CohClass without_constant() const {
    CohClass r = *this;
    r.c_[0] = 0.0;
    return r;
  }

  double max_norm() const {
    long double best = 0.0L;
    for (const auto& v : c_) best = std::max(best, std::abs(v));
    return double(best);
  }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const WideComplex& v) { return v == WideComplex{}; });
  }

  CohClass real_part() const {
    CohClass r(n_);
    for (std::size_t m = 0; m < c_.size(); ++m) r.c_[m] = c_[m].real();
    return r;
  }
  CohClass imag_part() const {
    CohClass r(n_);
    for (std::size_t m = 0; m < c_.size(); ++m) r.c_[m] = c_[m].imag();
    return r;
  }
  CohClass conj() const {
    CohClass r(n_);
    for (std::size_t m = 0; m < c_.size(); ++m) r.c_[m] = std::conj(c_[m]);
    return r;
  }

  /// Multiply in place by the linear factor (a + b p_i), i 1-based. O(2^n).
  CohClass& mul_linear(int i, WideComplex a, WideComplex b) {
    const Mask bit = Mask{1} << (i - 1);
    for (std::size_t m = c_.size(); m-- > 0;) {
      if (m & bit)
        c_[m] = a * c_[m] + b * c_[m ^ bit];
      else
        c_[m] = a * c_[m];
    }
    return *this;
  }

  CohClass& operator+=(const CohClass& o) {
    check_same(o);
    for (std::size_t m = 0; m < c_.size(); ++m) c_[m] += o.c_[m];
    return *this;
  }
  CohClass& operator-=(const CohClass& o) {
    check_same(o);
    for (std::size_t m = 0; m < c_.size(); ++m) c_[m] -= o.c_[m];
    return *this;
  }
  CohClass& operator*=(WideComplex s) {
    for (auto& v : c_) v *= s;
    return *this;
  }
  CohClass& operator/=(WideComplex s) {
    for (auto& v : c_) v /= s;
    return *this;
  }
  CohClass& operator*=(const CohClass& o) { return *this = mul(*this, o); }

  friend CohClass operator+(CohClass a, const CohClass& b) { return a += b; }
  friend CohClass operator-(CohClass a, const CohClass& b) { return a -= b; }
  friend CohClass operator-(CohClass a) { return a *= -1.0L; }
  friend CohClass operator*(CohClass a, WideComplex s) { return a *= s; }
  friend CohClass operator*(WideComplex s, CohClass a) { return a *= s; }
  friend CohClass operator/(CohClass a, WideComplex s) { return a /= s; }
  friend CohClass operator*(const CohClass& a, const CohClass& b) { return mul(a, b); }
  friend CohClass operator+(CohClass a, WideComplex s) { a.c_[0] += s; return a; }
  friend CohClass operator+(WideComplex s, CohClass a) { a.c_[0] += s; return a; }
  friend CohClass operator-(CohClass a, WideComplex s) { a.c_[0] -= s; return a; }
  friend CohClass operator-(WideComplex s, CohClass a) { a *= -1.0L; a.c_[0] += s; return a; }

  friend bool operator==(const CohClass& a, const CohClass& b) { return a.n_ == b.n_ && a.c_ == b.c_; }

  /// Cup product: c[m] = sum over s subset of m of a[s] b[m \ s].
  friend CohClass mul(const CohClass& a, const CohClass& b) {
    a.check_same(b);
    CohClass r(a.n_);
    const Mask full = a.top_mask();
    for (Mask s = 0;; ++s) {
      const WideComplex as = a.c_[s];
      if (as != WideComplex{}) {
        // supersets of s: iterate over subsets of the complement
        const Mask rest = full & ~s;
        for (Mask u = rest;; u = (u - 1) & rest) {
          r.c_[s | u] += as * b.c_[u];
          if (u == 0) break;
        }
      }
      if (s == full) break;
    }
    return r;
  }

  /// Largest coefficient-wise deviation |a - b|.
  friend double max_deviation(const CohClass& a, const CohClass& b) { return (a - b).max_norm(); }

 private:
  static int check_vars(int n) {
    if (n < 1 || n > kMaxVars)
      throw std::out_of_range("CohClass: number of variables must be in [1, 16], got " + std::to_string(n));
    return n;
  }
  void check_same(const CohClass& o) const {
    if (o.n_ != n_) throw std::invalid_argument("CohClass: mismatched number of variables");
  }

  int n_;
  std::vector<WideComplex> c_;
};

/// sum_k coeffs[k] x^k for nilpotent x; terms beyond degree n vanish.
inline CohClass taylor_nilpotent(const CohClass& x, std::span<const WideComplex> coeffs) {
  if (x.wide_constant_term() != WideComplex{})
    throw std::domain_error("taylor_nilpotent: argument has a nonzero constant term");
  const int n = x.num_vars();
  const int top = std::min<int>(n, int(coeffs.size()) - 1);
  CohClass r = CohClass::scalar(top >= 0 ? coeffs[top] : WideComplex{}, n);
  for (int k = top - 1; k >= 0; --k) r = mul(r, x) + coeffs[k];
  return r;
}

inline CohClass taylor_nilpotent(const CohClass& x, std::span<const Complex> coeffs) {
  const std::vector<WideComplex> wide(coeffs.begin(), coeffs.end());
  return taylor_nilpotent(x, std::span<const WideComplex>(wide));
}

inline CohClass exp_nilpotent(const CohClass& x) {
  std::vector<WideComplex> c(x.num_vars() + 1);
  long double f = 1.0L;
  for (std::size_t k = 0; k < c.size(); ++k) {
    c[k] = 1.0L / f;
    f *= (long double)(k + 1);
  }
  return taylor_nilpotent(x, std::span<const WideComplex>(c));
}

/// exp(sign * i pi x) for nilpotent x.
inline CohClass exp_i_pi(const CohClass& x, int sign) {
  return exp_nilpotent(x * WideComplex(0.0L, sign * std::numbers::pi_v<long double>));
}

namespace detail {

inline CohClass trig_pi(const CohClass& x, std::size_t parity) {
  std::vector<WideComplex> c(x.num_vars() + 1);
  long double term = 1.0L;
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (k % 2 == parity) c[k] = ((k / 2) % 2 == 0 ? 1.0L : -1.0L) * term;
    term *= std::numbers::pi_v<long double> / (long double)(k + 1);
  }
  return taylor_nilpotent(x, std::span<const WideComplex>(c));
}

}  // namespace detail

/// cos(pi x) and sin(pi x) for nilpotent x.
inline CohClass cos_pi(const CohClass& x) { return detail::trig_pi(x, 0); }
inline CohClass sin_pi(const CohClass& x) { return detail::trig_pi(x, 1); }

/// Inverse via the geometric series in the nilpotent part.
inline CohClass invert(const CohClass& a) {
  const WideComplex a0 = a.wide_constant_term();
  if (a0 == WideComplex{}) throw std::domain_error("invert: class has zero constant term");
  const CohClass nil = -(a.without_constant() / a0);
  std::vector<WideComplex> ones(a.num_vars() + 1, 1.0L);
  return taylor_nilpotent(nil, std::span<const WideComplex>(ones)) / a0;
}

/// Gamma(1 + sign*x) at nilpotent x from
///   log Gamma(1+z) = -gamma z + sum_{k>=2} (-1)^k zeta(k) z^k / k.
inline CohClass gamma_one_plus(const CohClass& x, int sign = +1) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("gamma_one_plus: sign must be +1 or -1");
  if (x.wide_constant_term() != WideComplex{})
    throw std::domain_error("gamma_one_plus: argument has a nonzero constant term");
  const auto& k = constants();
  const int n = x.num_vars();
  std::vector<WideComplex> c(n + 1);
  c[0] = 0.0L;
  if (n >= 1) c[1] = -kEulerGammaWide;
  for (int j = 2; j <= n; ++j) c[j] = (j % 2 == 0 ? 1.0L : -1.0L) * k.zeta_wide_at(j) / (long double)j;
  const CohClass arg = sign > 0 ? x : -x;
  return exp_nilpotent(taylor_nilpotent(arg, std::span<const WideComplex>(c)));
}

/// Gamma class of F: prod_i Gamma(1+p_i)^2 / Gamma(1+c_1), in n = l+1 variables.
inline CohClass gamma_class_F(int loops) {
  if (loops < 1) throw std::invalid_argument("gamma_class_F: loops must be >= 1");
  const int n = loops + 1;
  CohClass r = CohClass::unit(n);
  for (int i = 1; i <= n; ++i) {
    const CohClass g = gamma_one_plus(CohClass::p(i, n));
    r = r * g * g;
  }
  return r * invert(gamma_one_plus(CohClass::c1(n)));
}

/// Gamma class of the anticanonical hypersurface W in F, as a class on F:
/// prod_i Gamma(1+p_i)^2 / Gamma(1+c_1)^2.
inline CohClass gamma_class_W(int loops) {
  return gamma_class_F(loops) * invert(gamma_one_plus(CohClass::c1(loops + 1)));
}

/// Integral over F: coefficient of p_1...p_n in a * c_1 (F is Poincare dual to c_1 in (P^1)^n).
inline Complex integrate_over_F(const CohClass& a) {
  const int n = a.num_vars();
  WideComplex sum{};
  for (int i = 0; i < n; ++i) sum += a.wide(a.top_mask() ^ (Mask{1} << i));
  return Complex(sum);
}

/// Integral over W, realized on F as the integral of a * c_1.
inline Complex integrate_over_W(const CohClass& a) { return integrate_over_F(a * CohClass::c1(a.num_vars())); }

inline void to_json(nlohmann::json& j, const CohClass& a) {
  j = nlohmann::json{{"n", a.num_vars()}, {"terms", nlohmann::json::array()}};
  for (Mask m = 0; m < Mask(a.size()); ++m) {
    if (a.wide(m) == WideComplex{}) continue;
    nlohmann::json subset = nlohmann::json::array();
    for (int i = 0; i < a.num_vars(); ++i)
      if (m & (Mask{1} << i)) subset.push_back(i + 1);
    j["terms"].push_back({{"subset", subset}, {"re", a[m].real()}, {"im", a[m].imag()}});
  }
}

}  // namespace banana
