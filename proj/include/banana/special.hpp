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

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace banana {

/// Euler-Mascheroni constant, 20 significant digits.
inline constexpr double kEulerGamma = 0.57721566490153286061;
inline constexpr long double kEulerGammaWide = 0.577215664901532860606512090082402431L;

namespace detail {

// B_{2j} / (2j)! for j = 1..8
inline constexpr std::array<long double, 8> kBernoulliOverFactorial = {
    1.0L / 12.0L,
    -1.0L / 720.0L,
    1.0L / 30240.0L,
    -1.0L / 1209600.0L,
    1.0L / 47900160.0L,
    -691.0L / 1307674368000.0L,
    1.0L / 74724249600.0L,
    -3617.0L / 10670622842880000.0L,
};

}  // namespace detail

/// Riemann zeta at an integer k >= 2, in long double.
///
/// Direct sum over j < N plus the Euler-Maclaurin tail
///   N^{1-k}/(k-1) + N^{-k}/2 + sum_j B_{2j}/(2j)! * k(k+1)...(k+2j-2) N^{-k-2j+1}.
/// With N = 16 the truncated remainder is below 1e-21 for every k >= 2.
inline long double zeta_integer_wide(int k) {
  if (k < 2) throw std::domain_error("zeta_integer: k must be >= 2");
  constexpr int N = 16;
  const long double kk = k;
  // Small terms first.
  long double tail = 0.0L;
  long double rising = kk;  // k(k+1)...(k+2j-2), starts at j=1 with k
  long double npow = std::pow((long double)N, -kk - 1.0L);
  for (std::size_t j = 0; j < detail::kBernoulliOverFactorial.size(); ++j) {
    tail += detail::kBernoulliOverFactorial[j] * rising * npow;
    rising *= (kk + 2.0L * j + 1.0L) * (kk + 2.0L * j + 2.0L);
    npow /= (long double)N * (long double)N;
  }
  tail += std::pow((long double)N, 1.0L - kk) / (kk - 1.0L) + 0.5L * std::pow((long double)N, -kk);
  long double sum = tail;
  for (int j = N - 1; j >= 1; --j) sum += std::pow((long double)j, -kk);
  return sum;
}

inline double zeta_integer(int k) { return double(zeta_integer_wide(k)); }

/// Read-only table of the constants needed by the Gamma-class Taylor series.
struct ConstantsTable {
  double euler_gamma = kEulerGamma;
  /// zeta[k] = zeta(k) for 2 <= k <= max_k; entries 0 and 1 are unused (NaN).
  std::vector<double> zeta;
  std::vector<long double> zeta_wide;

  double zeta_at(int k) const {
    if (k < 2 || k >= int(zeta.size())) throw std::out_of_range("ConstantsTable: zeta index");
    return zeta[k];
  }
  long double zeta_wide_at(int k) const {
    if (k < 2 || k >= int(zeta_wide.size())) throw std::out_of_range("ConstantsTable: zeta index");
    return zeta_wide[k];
  }
};

/// Process-wide table with zeta(2..40); built once on first use.
inline const ConstantsTable& constants() {
  static const ConstantsTable table = [] {
    ConstantsTable t;
    t.zeta.assign(41, std::nan(""));
    t.zeta_wide.assign(41, std::nanl(""));
    for (int k = 2; k <= 40; ++k) {
      t.zeta_wide[k] = zeta_integer_wide(k);
      t.zeta[k] = double(t.zeta_wide[k]);
    }
    return t;
  }();
  return table;
}

/// log Gamma(z) for complex z, Lanczos (g = 7, 9 terms) with reflection for Re z < 1/2.
/// Relative accuracy about 1e-15 away from the poles.
inline std::complex<double> lgamma_complex(std::complex<double> z) {
  using cd = std::complex<double>;
  constexpr double pi = std::numbers::pi;
  if (z.real() < 0.5) {
    // log Gamma(z) = log(pi / sin(pi z)) - log Gamma(1 - z)
    return std::log(pi / std::sin(pi * z)) - lgamma_complex(1.0 - z);
  }
  static constexpr std::array<double, 9> c = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  constexpr double g = 7.0;
  z -= 1.0;
  cd x = c[0];
  for (int i = 1; i < 9; ++i) x += c[i] / (z + double(i));
  const cd t = z + g + 0.5;
  return 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

inline std::complex<double> tgamma_complex(std::complex<double> z) {
  if (z.imag() == 0.0 && z.real() > 0.0) return std::tgamma(z.real());
  return std::exp(lgamma_complex(z));
}

}  // namespace banana
