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

#include <cmath>
#include <numbers>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/zeta.hpp>
#include <gtest/gtest.h>

#include "banana/special.hpp"

namespace {

constexpr double kPi = std::numbers::pi;

TEST(Zeta, EvenValuesInClosedForm) {
  const auto& c = banana::constants();
  const long double pi = std::numbers::pi_v<long double>;
  EXPECT_NEAR(c.zeta_at(2), kPi * kPi / 6.0, 2.3e-16);
  EXPECT_NEAR(double(c.zeta_wide_at(2) - pi * pi / 6.0L), 0.0, 1e-18);
  EXPECT_NEAR(double(c.zeta_wide_at(4) - std::pow(pi, 4) / 90.0L), 0.0, 1e-18);
  EXPECT_NEAR(double(c.zeta_wide_at(6) - std::pow(pi, 6) / 945.0L), 0.0, 1e-18);
}

TEST(Zeta, MatchesBoostForAllTabulatedValues) {
  const auto& c = banana::constants();
  for (int k = 2; k <= 40; ++k) {
    const long double ref = boost::math::zeta((long double)k);
    EXPECT_NEAR(double(c.zeta_wide_at(k) - ref), 0.0, 1e-18) << "k=" << k;
    EXPECT_NEAR(c.zeta_at(k), double(ref), 2.3e-16) << "k=" << k;
  }
}

TEST(Zeta, AboveOneAndDecreasing) {
  const auto& c = banana::constants();
  for (int k = 2; k <= 40; ++k) {
    EXPECT_GT(c.zeta_at(k), 1.0);
    if (k > 2) {
      EXPECT_LT(c.zeta_wide_at(k), c.zeta_wide_at(k - 1));
    }
  }
  EXPECT_THROW(c.zeta_at(1), std::out_of_range);
  EXPECT_THROW(c.zeta_at(41), std::out_of_range);
  EXPECT_THROW(banana::zeta_integer(1), std::domain_error);
}

TEST(Zeta, EulerGamma) {
  EXPECT_EQ(banana::constants().euler_gamma, 0.5772156649015329);
  EXPECT_NEAR(double(banana::kEulerGammaWide), boost::math::constants::euler<double>(), 1e-17);
}

TEST(LogGamma, RealAxisAgreesWithStd) {
  for (double x : {0.1, 0.5, 1.0, 1.5, 2.0, 3.7, 10.0, 55.5}) {
    const auto v = banana::lgamma_complex({x, 0.0});
    EXPECT_NEAR(v.real(), std::lgamma(x), 1e-13 * std::max(1.0, std::abs(std::lgamma(x)))) << x;
    EXPECT_NEAR(v.imag(), 0.0, 1e-15);
    EXPECT_NEAR(banana::tgamma_complex({x, 0.0}).real(), boost::math::tgamma(x), 1e-13 * boost::math::tgamma(x));
  }
}

TEST(LogGamma, ReflectionAndModulusOnCriticalLine) {
  // |Gamma(1/2 + i y)|^2 = pi / cosh(pi y)
  for (double y : {0.1, 0.7, 2.0, 5.0}) {
    const auto g = banana::tgamma_complex({0.5, y});
    EXPECT_NEAR(std::norm(g), kPi / std::cosh(kPi * y), 1e-13 * kPi / std::cosh(kPi * y)) << y;
  }
  // Gamma(z) Gamma(1-z) = pi / sin(pi z)
  for (std::complex<double> z : {std::complex<double>(0.3, 0.4), std::complex<double>(-1.2, 0.9),
                                 std::complex<double>(2.5, -1.5)}) {
    const auto lhs = banana::tgamma_complex(z) * banana::tgamma_complex(1.0 - z);
    const auto rhs = kPi / std::sin(kPi * z);
    EXPECT_LT(std::abs(lhs - rhs), 1e-12 * std::abs(rhs));
  }
}

}  // namespace
