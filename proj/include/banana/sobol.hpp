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
 * @file sobol.hpp
 * @brief Sobol points with hash-based nested uniform (Owen-style) scrambling
 *        and a randomized QMC integrator returning a standard-error estimate.
 *
 * Direction numbers for dimensions 2..16 are the Joe-Kuo "new-joe-kuo-6"
 * initial values; dimension 1 is the van der Corput sequence.
 */

#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "banana/parallel.hpp"

namespace banana {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

class SobolSequence {
 public:
  static constexpr int kMaxDim = 16;
  static constexpr int kBits = 32;

  explicit SobolSequence(int dim) : dim_(dim), v_(dim) {
    if (dim < 1 || dim > kMaxDim) throw std::out_of_range("SobolSequence: dimension must be in [1, 16]");
    for (int j = 0; j < kBits; ++j) v_[0][j] = std::uint32_t{1} << (kBits - 1 - j);
    for (int d = 1; d < dim; ++d) {
      const auto& p = kPolys[d - 1];
      const int s = p.degree;
      auto& v = v_[d];
      for (int j = 0; j < s; ++j) v[j] = p.m[j] << (kBits - 1 - j);
      for (int j = s; j < kBits; ++j) {
        std::uint32_t x = v[j - s] ^ (v[j - s] >> s);
        for (int k = 1; k < s; ++k)
          if ((p.a >> (s - 1 - k)) & 1u) x ^= v[j - k];
        v[j] = x;
      }
    }
  }

  int dimension() const { return dim_; }

  /// Unscrambled 32-bit coordinate of point `index` in dimension `d`.
  std::uint32_t bits(std::uint32_t index, int d) const {
    std::uint32_t x = 0;
    for (int j = 0; index != 0; ++j, index >>= 1)
      if (index & 1u) x ^= v_[d][j];
    return x;
  }

  /// Scrambled coordinate in the open interval (0, 1).
  double scrambled(std::uint32_t index, int d, std::uint32_t seed) const {
    const std::uint32_t x = nested_uniform_scramble(bits(index, d), seed);
    return (double(x) + 0.5) * 0x1p-32;
  }

  static std::uint32_t nested_uniform_scramble(std::uint32_t x, std::uint32_t seed) {
    x = reverse(x);
    x += seed;
    x ^= x * 0x6c50b47cu;
    x ^= x * 0xb82f1e52u;
    x ^= x * 0xc7afe638u;
    x ^= x * 0x8d22f6e6u;
    return reverse(x);
  }

 private:
  struct Poly {
    int degree;
    std::uint32_t a;
    std::array<std::uint32_t, 6> m;
  };
  static constexpr std::array<Poly, kMaxDim - 1> kPolys = {{
      {1, 0, {1}},
      {2, 1, {1, 3}},
      {3, 1, {1, 3, 1}},
      {3, 2, {1, 1, 1}},
      {4, 1, {1, 1, 3, 3}},
      {4, 4, {1, 3, 5, 13}},
      {5, 2, {1, 1, 5, 5, 17}},
      {5, 4, {1, 1, 5, 5, 5}},
      {5, 7, {1, 1, 7, 11, 19}},
      {5, 11, {1, 1, 5, 1, 1}},
      {5, 13, {1, 1, 1, 3, 11}},
      {5, 14, {1, 3, 5, 5, 31}},
      {6, 1, {1, 3, 3, 9, 7, 49}},
      {6, 13, {1, 1, 1, 15, 21, 21}},
      {6, 16, {1, 3, 1, 13, 27, 49}},
  }};

  static std::uint32_t reverse(std::uint32_t x) {
    x = ((x >> 1) & 0x55555555u) | ((x & 0x55555555u) << 1);
    x = ((x >> 2) & 0x33333333u) | ((x & 0x33333333u) << 2);
    x = ((x >> 4) & 0x0f0f0f0fu) | ((x & 0x0f0f0f0fu) << 4);
    x = ((x >> 8) & 0x00ff00ffu) | ((x & 0x00ff00ffu) << 8);
    return (x >> 16) | (x << 16);
  }

  int dim_;
  std::vector<std::array<std::uint32_t, kBits>> v_;
};

struct QmcOptions {
  unsigned log2_points = 14;
  unsigned randomizations = 16;
  std::uint64_t seed = 0x5eed;
};

struct QmcResult {
  double value = 0.0;
  double std_error = 0.0;
  long long evaluations = 0;
};

/// Randomized QMC estimate of the integral of f over (0,1)^dim.
/// f takes std::span<const double> of length dim. Reduction order is fixed,
/// so the result does not depend on the worker count.
template <class F>
QmcResult qmc_integrate(int dim, F&& f, const QmcOptions& opt = {}) {
  if (opt.randomizations < 2) throw std::invalid_argument("qmc_integrate: need at least 2 randomizations");
  if (opt.log2_points > 30) throw std::invalid_argument("qmc_integrate: at most 2^30 points");
  const SobolSequence sobol(dim);
  const std::uint32_t npts = std::uint32_t{1} << opt.log2_points;
  std::vector<double> means(opt.randomizations, 0.0);
  parallel_for(opt.randomizations, [&](std::size_t r) {
    std::vector<std::uint32_t> seeds(dim);
    for (int d = 0; d < dim; ++d)
      seeds[d] = std::uint32_t(splitmix64(opt.seed ^ splitmix64(r * 0x100 + std::uint64_t(d))));
    std::vector<double> u(dim);
    double sum = 0.0;
    for (std::uint32_t i = 0; i < npts; ++i) {
      for (int d = 0; d < dim; ++d) u[d] = sobol.scrambled(i, d, seeds[d]);
      sum += f(std::span<const double>(u));
    }
    means[r] = sum / double(npts);
  });
  QmcResult out;
  for (double m : means) out.value += m;
  out.value /= double(means.size());
  double var = 0.0;
  for (double m : means) var += (m - out.value) * (m - out.value);
  var /= double(means.size() - 1);
  out.std_error = std::sqrt(var / double(means.size()));
  out.evaluations = (long long)npts * opt.randomizations;
  return out;
}

}  // namespace banana
