#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "silico/coefficients.hpp"
#include "silico/errors.hpp"

using namespace silico;

TEST(Coefficients, PiecewiseRates) {
  const auto fam = CoefficientFamily::piecewise_constant({2.0, 3});
  EXPECT_EQ(fam.kind(), FamilyKind::PiecewiseConstant);
  for (Index i = 0; i <= 3; ++i) {
    EXPECT_DOUBLE_EQ(fam.k(i), 2.0);
    EXPECT_DOUBLE_EQ(fam.p(i), 1.0);
    EXPECT_DOUBLE_EQ(fam.q(i), 0.0);
    EXPECT_DOUBLE_EQ(fam.rho(i), 0.5);
  }
  for (Index i = 4; i < 10; ++i) {
    EXPECT_DOUBLE_EQ(fam.p(i), 0.0);
    EXPECT_DOUBLE_EQ(fam.q(i), 1.0);
    EXPECT_DOUBLE_EQ(fam.rho(i), 0.0);
  }
  for (Index i = 0; i < 10; ++i) EXPECT_DOUBLE_EQ(fam.d(i), 0.5);
  EXPECT_DOUBLE_EQ(fam.z(), 0.5);
}

TEST(Coefficients, PowerLawDerivedExponents) {
  PowerLawParams pl;
  pl.p_exp = 0.5;
  pl.q_exp = 1.5;
  pl.k_exp = 0.25;
  const auto fam = CoefficientFamily::power_law(pl);
  EXPECT_DOUBLE_EQ(pl.a(), 1.75);
  EXPECT_DOUBLE_EQ(pl.b(), -0.25);
  for (Index i = 1; i < 50; ++i) {
    const double t = static_cast<double>(i);
    EXPECT_NEAR(fam.d(i), std::pow(t, 1.75) + std::pow(t, -0.25), 1e-12 * fam.d(i));
    EXPECT_NEAR(fam.rho(i), std::pow(t, -0.25), 1e-14);
  }
}

TEST(Coefficients, FromAbRoundTrips) {
  for (double a : {0.0, 0.5, 1.0, 2.5}) {
    for (double b : {-1.5, -1.0, 0.0, a - 1.0, a}) {
      const auto pl = PowerLawParams::from_ab(a, b);
      EXPECT_DOUBLE_EQ(pl.a(), a);
      EXPECT_DOUBLE_EQ(pl.b(), b);
      EXPECT_GE(pl.p_exp, 0.0);
      EXPECT_GE(pl.q_exp, 0.0);
      EXPECT_GE(pl.k_exp, 0.0);
    }
  }
}

// Brute-force oracle for inf_{t >= n} t^a + t^b over integers.
double brute_inf(double a, double b, Index n) {
  double best = std::numeric_limits<double>::infinity();
  for (Index t = n; t < n + 200000; ++t) {
    const double v = std::pow(static_cast<double>(t), a) + std::pow(static_cast<double>(t), b);
    best = std::min(best, v);
  }
  return best;
}

TEST(Coefficients, InfPowerPairMatchesScan) {
  const double cases[][2] = {{1.0, 0.0}, {2.0, -1.0}, {0.5, -0.5}, {-0.5, -1.0},
                             {0.0, 0.0}, {0.0, -1.0}, {1.0, -3.0}, {0.1, -2.0}};
  for (const auto& c : cases) {
    for (Index n : {1, 2, 7}) {
      const double got = inf_power_pair(c[0], c[1], n);
      const double ref = brute_inf(c[0], c[1], n);
      // Both nonpositive: the infimum is a limit, approached from above.
      if (c[0] <= 0.0 && c[1] <= 0.0 && !(c[0] == 0.0 && c[1] == 0.0)) {
        EXPECT_LE(got, ref) << c[0] << "," << c[1] << "," << n;
      } else {
        EXPECT_NEAR(got, ref, 1e-12 * ref) << c[0] << "," << c[1] << "," << n;
      }
    }
  }
}

TEST(Coefficients, InfimumCrossChecksProbe) {
  PowerLawParams pl = PowerLawParams::from_ab(2.0, -1.0, 1.0, 0.0, 1.0);
  const auto fam = CoefficientFamily::power_law(pl);
  // min over i >= 1 of i^2 + 1/i is at i = 1 (value 2); d_0 = 1.
  EXPECT_DOUBLE_EQ(infimum_d(fam), 1.0);
  EXPECT_DOUBLE_EQ(fam.d_inf_from(1), 2.0);
  EXPECT_DOUBLE_EQ(fam.d_inf_from(3), 9.0 + 1.0 / 3.0);
}

TEST(Coefficients, TabulatedConstantTail) {
  TabulatedParams tb{{1.0, 0.5}, {1.0, 0.8}, {0.0, 0.4}};
  const auto fam = CoefficientFamily::tabulated(tb);
  EXPECT_DOUBLE_EQ(fam.d(0), 1.0);
  EXPECT_DOUBLE_EQ(fam.d(1), 2.4);
  EXPECT_DOUBLE_EQ(fam.d(100), 2.4);
  EXPECT_DOUBLE_EQ(fam.q_over_k(57), 0.8);
  EXPECT_DOUBLE_EQ(fam.z(), 1.0);
  EXPECT_TRUE(fam.warnings().empty());
}

TEST(Coefficients, MonotonicityWarnings) {
  TabulatedParams tb{{1.0, 2.0}, {1.0, 1.0}, {0.0, 0.0}};
  const auto fam = CoefficientFamily::tabulated(tb);
  ASSERT_EQ(fam.warnings().size(), 1u);
  EXPECT_NE(fam.warnings()[0].find("k increases"), std::string::npos);
}

TEST(Coefficients, RejectsInvalidInput) {
  EXPECT_THROW(CoefficientFamily::piecewise_constant({-1.0, 2}), DomainError);
  EXPECT_THROW(CoefficientFamily::tabulated({{}, {}, {}}), DomainError);
  EXPECT_THROW(inf_power_pair(1.0, 0.0, 0), DomainError);
  // All rates zero: d_i = 0 and the series cannot converge.
  TabulatedParams dead{{1.0}, {0.0}, {0.0}};
  EXPECT_THROW(infimum_d(CoefficientFamily::tabulated(dead)), DomainError);
  EXPECT_THROW(ratio_bound(CoefficientFamily::piecewise_constant({1.0, 1}), -1.0), DomainError);
}

TEST(Coefficients, RatioBound) {
  const auto fam = CoefficientFamily::piecewise_constant({4.0, 1});
  EXPECT_DOUBLE_EQ(ratio_bound(fam, 0.75), 0.75);
}
