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

#include <map>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "banana/cohomology.hpp"

namespace {

using banana::CohClass;
using banana::Complex;
using banana::Mask;

constexpr double kPi = std::numbers::pi;
constexpr double kZeta3 = 1.2020569031595942854;

// Sparse polynomial over exponent vectors, reduced by p_i^2 = 0 on multiplication.
using Poly = std::map<std::vector<int>, Complex>;

Poly to_poly(const CohClass& a) {
  Poly p;
  for (Mask m = 0; m < Mask(a.size()); ++m) {
    if (a[m] == Complex{}) continue;
    std::vector<int> e(a.num_vars());
    for (int i = 0; i < a.num_vars(); ++i) e[i] = (m >> i) & 1u;
    p[e] = a[m];
  }
  return p;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly r;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      std::vector<int> e(ea.size());
      bool zero = false;
      for (std::size_t i = 0; i < e.size(); ++i) {
        e[i] = ea[i] + eb[i];
        if (e[i] > 1) zero = true;
      }
      if (!zero) r[e] += ca * cb;
    }
  return r;
}

double poly_distance(const Poly& a, const Poly& b) {
  double d = 0.0;
  for (const auto& [e, c] : a) {
    auto it = b.find(e);
    d = std::max(d, std::abs(c - (it == b.end() ? Complex{} : it->second)));
  }
  for (const auto& [e, c] : b)
    if (!a.contains(e)) d = std::max(d, std::abs(c));
  return d;
}

CohClass random_class(int n, std::mt19937_64& rng, bool nilpotent = false) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CohClass a(n);
  for (Mask m = 0; m < Mask(a.size()); ++m) a.coeff(m) = Complex(u(rng), u(rng));
  if (nilpotent) a.coeff(0) = 0.0;
  return a;
}

Mask subset(std::initializer_list<int> idx) {
  Mask m = 0;
  for (int i : idx) m |= Mask{1} << (i - 1);
  return m;
}

TEST(CohClassBasics, SquareOfHyperplaneClassVanishes) {
  const CohClass p1 = CohClass::p(1, 2);
  EXPECT_TRUE((p1 * p1).is_zero());
}

TEST(CohClassBasics, UnitIsMultiplicativeIdentity) {
  std::mt19937_64 rng(11);
  const CohClass x = random_class(3, rng);
  EXPECT_EQ(CohClass::unit(3) * x, x);
  EXPECT_EQ(CohClass::unit(3), CohClass::scalar(1.0, 3));
}

TEST(CohClassBasics, DistinctVariablesGiveMonomial) {
  const CohClass prod = CohClass::p(1, 2) * CohClass::p(2, 2);
  EXPECT_EQ(prod[subset({1, 2})], Complex(1.0));
  EXPECT_EQ(prod[subset({1})], Complex(0.0));
  EXPECT_EQ(prod.constant_term(), Complex(0.0));
}

TEST(CohClassBasics, IndexOutOfRangeThrows) {
  EXPECT_THROW(CohClass::p(0, 3), std::out_of_range);
  EXPECT_THROW(CohClass::p(4, 3), std::out_of_range);
  EXPECT_THROW(CohClass(17), std::out_of_range);
  EXPECT_THROW(CohClass(0), std::out_of_range);
}

TEST(CohClassMul, OnePlusP1Squared) {
  const CohClass a = 1.0 + CohClass::p(1, 3);
  const CohClass sq = a * a;
  EXPECT_EQ(sq, 1.0 + 2.0 * CohClass::p(1, 3));
}

TEST(CohClassMul, CubeOfLinearSumIsSixTimesTop) {
  const CohClass s = CohClass::c1(3);
  const CohClass cube = s * s * s;
  CohClass expected(3);
  expected.coeff(subset({1, 2, 3})) = 6.0;
  EXPECT_EQ(cube, expected);
}

TEST(CohClassMul, TimesZeroIsZero) {
  std::mt19937_64 rng(3);
  EXPECT_TRUE((random_class(4, rng) * CohClass(4)).is_zero());
}

TEST(CohClassMul, MismatchedVariableCountThrows) {
  EXPECT_THROW(CohClass::unit(2) * CohClass::unit(3), std::invalid_argument);
}

TEST(CohClassMul, MatchesSparsePolynomialOracle) {
  std::mt19937_64 rng(2024);
  for (int n = 1; n <= 6; ++n) {
    for (int rep = 0; rep < 5; ++rep) {
      const CohClass a = random_class(n, rng);
      const CohClass b = random_class(n, rng);
      EXPECT_LT(poly_distance(to_poly(a * b), poly_mul(to_poly(a), to_poly(b))), 1e-14) << "n=" << n;
    }
  }
}

TEST(CohClassMul, RingAxiomsOnRandomTriples) {
  std::mt19937_64 rng(7);
  for (int n = 1; n <= 7; ++n) {
    const CohClass a = random_class(n, rng), b = random_class(n, rng), c = random_class(n, rng);
    EXPECT_LT(max_deviation(a * b, b * a), 1e-14);
    EXPECT_LT(max_deviation((a * b) * c, a * (b * c)), 1e-13);
    EXPECT_LT(max_deviation(a * (b + c), a * b + a * c), 1e-14);
  }
}

TEST(CohClassMul, GradingIsRespected) {
  std::mt19937_64 rng(5);
  const int n = 5;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      const CohClass prod = random_class(n, rng).degree_part(i) * random_class(n, rng).degree_part(j);
      for (int k = 0; k <= n; ++k)
        if (k != i + j) {
          EXPECT_TRUE(prod.degree_part(k).is_zero()) << i << "+" << j << " leaks into " << k;
        }
    }
}

TEST(CohClassMul, MulLinearMatchesFullProduct) {
  std::mt19937_64 rng(9);
  CohClass a = random_class(4, rng);
  const CohClass full = a * (Complex(2.0, 1.0) + Complex(-0.5, 3.0) * CohClass::p(3, 4));
  a.mul_linear(3, Complex(2.0, 1.0), Complex(-0.5, 3.0));
  EXPECT_LT(max_deviation(a, full), 1e-15);
}

TEST(ExpNilpotent, Examples) {
  EXPECT_EQ(banana::exp_nilpotent(CohClass(3)), CohClass::unit(3));
  for (int n = 1; n <= 5; ++n)
    EXPECT_EQ(banana::exp_nilpotent(CohClass::p(1, n)), 1.0 + CohClass::p(1, n)) << "n=" << n;
  const CohClass p1 = CohClass::p(1, 2), p2 = CohClass::p(2, 2);
  EXPECT_LT(max_deviation(banana::exp_nilpotent(p1 + p2), 1.0 + p1 + p2 + p1 * p2), 1e-15);
}

TEST(ExpNilpotent, ConstantTermRejected) {
  EXPECT_THROW(banana::exp_nilpotent(CohClass::unit(2)), std::domain_error);
}

TEST(ExpNilpotent, Additivity) {
  std::mt19937_64 rng(13);
  for (int n = 1; n <= 7; ++n) {
    const CohClass x = random_class(n, rng, true), y = random_class(n, rng, true);
    EXPECT_LT(max_deviation(banana::exp_nilpotent(x + y), banana::exp_nilpotent(x) * banana::exp_nilpotent(y)),
              1e-13);
  }
}

TEST(ExpNilpotent, CosAndSinSatisfyPythagoras) {
  std::mt19937_64 rng(17);
  const CohClass x = random_class(5, rng, true);
  const CohClass c = banana::cos_pi(x), s = banana::sin_pi(x);
  EXPECT_LT(max_deviation(c * c + s * s, CohClass::unit(5)), 1e-12);
}

TEST(GammaOnePlus, Examples) {
  EXPECT_EQ(banana::gamma_one_plus(CohClass(2), +1), CohClass::unit(2));
  const CohClass p1 = CohClass::p(1, 3);
  EXPECT_LT(max_deviation(banana::gamma_one_plus(p1, +1), 1.0 - banana::kEulerGamma * p1), 1e-16);
  const CohClass x = CohClass::c1(3);
  const CohClass refl = banana::gamma_one_plus(x, +1) * banana::gamma_one_plus(x, -1);
  EXPECT_LT(max_deviation(refl, 1.0 + (kPi * kPi / 6.0) * x * x), 1e-14);
}

TEST(GammaOnePlus, SignAndConstantTermChecked) {
  EXPECT_THROW(banana::gamma_one_plus(CohClass::p(1, 2), 0), std::invalid_argument);
  EXPECT_THROW(banana::gamma_one_plus(CohClass::unit(2), 1), std::domain_error);
}

// Gamma(1+x) Gamma(1-x) sin(pi x)/(pi x) = 1, with sin(pi x)/(pi x) from its own Taylor series.
TEST(GammaOnePlus, ReflectionIdentity) {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int n = 1; n <= 7; ++n) {
    std::vector<CohClass> args = {CohClass::c1(n)};
    std::vector<Complex> w(n);
    for (auto& v : w) v = Complex(u(rng), u(rng));
    args.push_back(CohClass::linear(w));
    for (const CohClass& x : args) {
      std::vector<banana::WideComplex> sinc(n + 1, 0.0L);
      long double fact = 1.0L;
      for (int k = 0; 2 * k <= n; ++k) {
        if (k > 0) fact *= (long double)(2 * k) * (long double)(2 * k + 1);
        sinc[2 * k] = (k % 2 == 0 ? 1.0L : -1.0L) * std::pow(std::numbers::pi_v<long double>, 2 * k) / fact;
      }
      const CohClass lhs = banana::gamma_one_plus(x, +1) * banana::gamma_one_plus(x, -1) *
                           banana::taylor_nilpotent(x, std::span<const banana::WideComplex>(sinc));
      EXPECT_LT(max_deviation(lhs, CohClass::unit(n)), 1e-13) << "n=" << n;
    }
  }
}

TEST(Invert, Examples) {
  EXPECT_EQ(banana::invert(CohClass::unit(3)), CohClass::unit(3));
  const CohClass p1 = CohClass::p(1, 2);
  EXPECT_LT(max_deviation(banana::invert(1.0 - 2.0 * p1), 1.0 + 2.0 * p1), 1e-16);
  EXPECT_THROW(banana::invert(CohClass::p(1, 2)), std::domain_error);
}

TEST(Invert, InverseAndInvolution) {
  std::mt19937_64 rng(23);
  for (int n = 1; n <= 7; ++n) {
    const CohClass a = 1.0 + random_class(n, rng, true);
    EXPECT_LT(max_deviation(a * banana::invert(a), CohClass::unit(n)), 1e-12);
    EXPECT_LT(max_deviation(banana::invert(banana::invert(a)), a), 1e-12);
  }
}

TEST(GammaClass, TwoFormulasAgree) {
  for (int l = 1; l <= 6; ++l) {
    const int n = l + 1;
    const CohClass c1 = CohClass::c1(n);
    const CohClass alt =
        banana::exp_nilpotent(-2.0 * banana::kEulerGamma * c1) * banana::invert(banana::gamma_one_plus(c1, +1));
    EXPECT_LT(max_deviation(banana::gamma_class_F(l), alt), 1e-12) << "l=" << l;
  }
}

TEST(GammaClass, LowDegreePartsFromLogExpansion) {
  // log Gamma_F = 2 sum log Gamma(1+p_i) - log Gamma(1+c1) = -gamma c1 - zeta(2) c1^2/2 + zeta(3) c1^3/3 - ...
  const int l = 3, n = 4;
  const CohClass c1 = CohClass::c1(n);
  const CohClass gF = banana::gamma_class_F(l);
  EXPECT_EQ(gF.constant_term(), Complex(1.0));
  EXPECT_LT(max_deviation(gF.degree_part(1), -banana::kEulerGamma * c1), 1e-16);
  const double g = banana::kEulerGamma, z2 = kPi * kPi / 6.0;
  const CohClass deg2 = (0.5 * g * g - 0.5 * z2) * c1 * c1;
  EXPECT_LT(max_deviation(gF.degree_part(2), deg2), 1e-15);
  const CohClass deg3 = (-g * g * g / 6.0 + 0.5 * g * z2 + kZeta3 / 3.0) * c1 * c1 * c1;
  EXPECT_LT(max_deviation(gF.degree_part(3), deg3), 1e-14);
}

TEST(GammaClass, WTimesGammaIsF) {
  for (int l = 1; l <= 6; ++l) {
    const CohClass g = banana::gamma_one_plus(CohClass::c1(l + 1), +1);
    EXPECT_EQ(banana::gamma_class_W(l).constant_term(), Complex(1.0));
    EXPECT_LT(max_deviation(banana::gamma_class_W(l) * g, banana::gamma_class_F(l)), 1e-12) << "l=" << l;
  }
  EXPECT_THROW(banana::gamma_class_F(0), std::invalid_argument);
}

TEST(IntegrateOverF, Examples) {
  for (int l = 1; l <= 6; ++l) {
    const int n = l + 1;
    EXPECT_EQ(banana::integrate_over_F(CohClass::unit(n)), Complex(0.0));
    CohClass tail = CohClass::unit(n);
    for (int i = 2; i <= n; ++i) tail = tail * CohClass::p(i, n);
    EXPECT_EQ(banana::integrate_over_F(tail), Complex(1.0));
    CohClass pw = CohClass::unit(n);
    for (int k = 0; k < l; ++k) pw = pw * CohClass::c1(n);
    EXPECT_NEAR(banana::integrate_over_F(pw).real(), std::tgamma(double(l + 2)), 1e-9) << "l=" << l;
  }
}

TEST(IntegrateOverF, DegreeSelective) {
  std::mt19937_64 rng(29);
  for (int l = 1; l <= 6; ++l) {
    const CohClass a = random_class(l + 1, rng);
    EXPECT_LT(std::abs(banana::integrate_over_F(a) - banana::integrate_over_F(a.degree_part(l))), 1e-15);
  }
}

TEST(IntegrateOverW, IsIntegralOfProductWithC1) {
  // W has dimension l-1; only a c1^{l-1} term survives, and int_F c1^l = (l+1)!
  for (int l = 1; l <= 5; ++l) {
    const int n = l + 1;
    CohClass pw = CohClass::unit(n);
    for (int k = 0; k + 1 < l; ++k) pw = pw * CohClass::c1(n);
    EXPECT_NEAR(banana::integrate_over_W(pw).real(), std::tgamma(double(l + 2)), 1e-9);
  }
}

TEST(CohClassJson, DumpListsNonzeroTerms) {
  const CohClass a = 2.0 + Complex(0.0, -1.5) * CohClass::p(1, 3) * CohClass::p(3, 3);
  nlohmann::json j = a;
  EXPECT_EQ(j["n"], 3);
  ASSERT_EQ(j["terms"].size(), 2u);
  EXPECT_EQ(j["terms"][0]["subset"], nlohmann::json::array());
  EXPECT_EQ(j["terms"][0]["re"], 2.0);
  EXPECT_EQ(j["terms"][1]["subset"], (nlohmann::json{1, 3}));
  EXPECT_EQ(j["terms"][1]["im"], -1.5);
}

}  // namespace
