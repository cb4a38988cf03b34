#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "silico/asymptotics.hpp"
#include "silico/errors.hpp"
#include "silico/special_functions.hpp"

using namespace silico;

TEST(RSum, DirectMatchesReference) {
  struct Case {
    double a, A, v, ref;
  };
  // 40-digit mpmath nsum values.
  const Case cases[] = {{1.0, 0.0, 0.01, 8.3622692545275800442},
                        {1.0, -1.0, 0.001, 3.7425688094424964953},
                        {0.5, 1.0, 0.05, 32.235165109804850026},
                        {2.0, -3.0, 0.01, 1.144884663879932694}};
  for (const auto& c : cases) {
    const auto s = r_sum_direct(c.a, c.A, c.v);
    EXPECT_NEAR(s.value, c.ref, 4e-15 * c.ref) << c.a << " " << c.A;
    EXPECT_LE(s.tail_bound, 1e-16 * c.ref);
  }
  EXPECT_THROW(r_sum_direct(1.0, 0.0, 0.0), DomainError);
}

TEST(RExpansion, GaussianSumHasNoPowerCorrections) {
  // zeta vanishes at -2, -4, ...: sum exp(-v i^2) = (sqrt(pi/v) - 1)/2 + O(e^{-pi^2/v}).
  const auto e = r_expansion(1.0, 0.0, 3);
  for (double v : {1e-1, 1e-2}) {
    EXPECT_NEAR(e.evaluate(v), (std::sqrt(std::numbers::pi / v) - 1.0) / 2.0, 1e-13);
    EXPECT_NEAR(r_sum_direct(1.0, 0.0, v).value, e.evaluate(v), 1e-13);
  }
}

TEST(RExpansion, RegularCaseConverges) {
  const auto e = r_expansion(1.0, 0.5, 2);
  EXPECT_EQ(e.variable, ExpansionVariable::VToZero);
  double prev = INFINITY;
  for (double v : {1e-1, 1e-2, 1e-3}) {
    const double err = std::fabs(r_sum_direct(1.0, 0.5, v).value - e.evaluate(v));
    EXPECT_LT(err, prev);
    EXPECT_LT(err, 10.0 * std::pow(v, 2.5) + 1e-13);
    prev = err;
  }
}

TEST(RExpansion, PoleTermCarriesLogarithm) {
  // A = -1 merges the Gamma and zeta(1) terms into (log(1/v) + a*gamma)/(a+1).
  const auto e = r_expansion(1.0, -1.0, 2);
  bool has_log = false;
  for (const auto& t : e.terms) has_log = has_log || t.log_power == 1;
  EXPECT_TRUE(has_log);
  const double v = 1e-3;
  const double leading = (std::log(1.0 / v) + sf::euler_gamma) / 2.0;
  EXPECT_NEAR(e.evaluate(v), 3.7425688094424964953, 1e-8);
  EXPECT_NEAR(leading, 3.7425688094424964953, 1e-3);
  EXPECT_THROW(r_expansion(1.0, -1.0 + 1e-8, 2), DomainError);
}

TEST(PowerSum, IntegerExponentsExact) {
  for (int a = 0; a <= 6; ++a) {
    for (Index n : {1, 2, 17, 100}) {
      long double brute = 0.0L;
      for (Index j = 1; j <= n; ++j) brute += std::pow(static_cast<long double>(j), a);
      const auto s = power_sum(a, n, 0);
      EXPECT_TRUE(s.exact);
      EXPECT_EQ(s.value, static_cast<double>(brute)) << a << " " << n;
    }
  }
}

TEST(PowerSum, FractionalExponents) {
  for (double a : {0.5, 1.5, 2.25}) {
    const Index n = 5000;
    long double brute = 0.0L;
    for (Index j = n; j >= 1; --j) brute += std::pow(static_cast<long double>(j), static_cast<long double>(a));
    const auto s = power_sum(a, n, 3);
    EXPECT_FALSE(s.exact);
    EXPECT_NEAR(s.value / static_cast<double>(brute), 1.0, 1e-13) << a;
  }
  EXPECT_THROW(power_sum(-1.0, 3, 1), DomainError);
  EXPECT_THROW(power_sum(1.0, 0, 1), DomainError);
}

TEST(KSeries, DirectMatchesReference) {
  SeriesOptions opts;
  opts.tol = 1e-15;
  const auto k10 = k_direct(1.0, -1.0, 10.0, opts);
  EXPECT_GE(3.3327482276194612897 - k10.value, -1e-15);
  EXPECT_LE(3.3327482276194612897 - k10.value, k10.tail_bound + 1e-15);
  EXPECT_NEAR(k_direct(1.0, -1.0, 1000.0, opts).value, 38.969938846456580415, 4e-12);
  const double xs[] = {0.5, 5.0, 200.0};
  const double hs[] = {0.26794159607265600693, 3.3736016285532701144, 183.84926628983688225};
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(h_direct(1.0, 0.0, xs[i]).value, hs[i], 1e-12 * hs[i]);
}

TEST(KSeries, RamanujanExpansion) {
  // K_{1,-1}(x) = sum_i prod_{j<=i} x/(x+j) is Ramanujan's R(x) - 1:
  // sqrt(pi x/2) - 2/3 + sqrt(pi/(2x))/12 + 4/(135 x) + ...
  const auto e = k_expansion_refined(1.0, -1.0, 2);
  ASSERT_EQ(e.terms.size(), 3u);
  const double s = std::sqrt(std::numbers::pi / 2.0);
  EXPECT_NEAR(e.terms[0].coefficient, s, 1e-13);
  EXPECT_DOUBLE_EQ(e.terms[0].power, 0.5);
  EXPECT_NEAR(e.terms[1].coefficient, -2.0 / 3.0, 1e-13);
  EXPECT_DOUBLE_EQ(e.terms[1].power, 0.0);
  EXPECT_NEAR(e.terms[2].coefficient, s / 12.0, 1e-13);
  EXPECT_DOUBLE_EQ(e.terms[2].power, -0.5);
  EXPECT_DOUBLE_EQ(e.remainder.power, -1.0);
  for (double x : {1e3, 1e4}) {
    const double resid = k_direct(1.0, -1.0, x).value - e.evaluate(x);
    EXPECT_NEAR(resid * x, 4.0 / 135.0, 0.01 * 4.0 / 135.0) << x;
  }
}

TEST(KSeries, LeadingAsymptotics) {
  // L = (b+2)/(a+1) = 1 for a = 1, b = 0: K ~ x with unit coefficient.
  const auto lead = k_leading_asymptotics(1.0, 0.0);
  ASSERT_EQ(lead.terms.size(), 1u);
  EXPECT_NEAR(lead.terms[0].coefficient, 1.0, 1e-15);
  EXPECT_DOUBLE_EQ(lead.terms[0].power, 1.0);
  EXPECT_NEAR(k_direct(1.0, 0.0, 1e4).value / 1e4, 1.0, 0.05);
  EXPECT_FALSE(k_log_order_diagnosis(1.0, -2.0).empty());
  EXPECT_THROW(k_log_order_diagnosis(1.0, -1.0), DomainError);
  EXPECT_THROW(k_expansion_refined(1.0, -1.0, 3), DomainError);
}

TEST(KSeries, RefinedExpansionResidualShrinks) {
  for (auto [a, b] : {std::pair{1.0, 0.0}, {2.0, 0.0}, {1.0, 1.0}}) {
    const auto e = k_expansion_refined(a, b, 2);
    const double r1 = std::fabs(k_direct(a, b, 1e3).value - e.evaluate(1e3));
    const double r2 = std::fabs(k_direct(a, b, 1e4).value - e.evaluate(1e4));
    const double scale = std::pow(10.0, e.remainder.power);
    EXPECT_LT(r2, r1 * scale * 1.5 + 1e-9 * k_direct(a, b, 1e4).value) << a << " " << b;
  }
}

TEST(TailCutoff, PartitionsTheSum) {
  const auto t = tail_cutoff_check(1.0, 0.0, 1000.0);
  EXPECT_EQ(t.cutoff_index, static_cast<Index>(std::ceil(std::pow(1000.0, 0.6))));
  EXPECT_GT(t.tail_sum, 0.0);
  EXPECT_LT(t.tail_sum, t.total);
  EXPECT_NEAR(t.total, k_direct(1.0, 0.0, 1000.0).value, 1e-9 * t.total);
}

TEST(TailCutoff, EnvelopeCoversFitPoints) {
  const std::vector<double> xs = {10.0, 20.0, 40.0, 80.0};
  const auto env = fit_tail_envelope(1.0, 0.0, xs);
  EXPECT_GT(env.c, 0.0);
  for (double x : xs) EXPECT_GE(env(1.0, x) * (1.0 + 1e-12), tail_cutoff_check(1.0, 0.0, x).tail_sum);
}

TEST(Expansion, SortAndEvaluate) {
  AsymptoticExpansion e;
  e.variable = ExpansionVariable::XToInfinity;
  e.terms = {{2.0, -1.0, 0}, {1.0, 0.5, 0}, {3.0, 0.5, 1}};
  e.sort_terms();
  EXPECT_EQ(e.terms[0].log_power, 1);
  EXPECT_DOUBLE_EQ(e.terms[2].power, -1.0);
  EXPECT_NEAR(e.evaluate(4.0), 2.0 / 4.0 + 2.0 + 3.0 * 2.0 * std::log(4.0), 1e-14);
  EXPECT_THROW((void)e.evaluate(0.0), DomainError);
}

TEST(KSeries, DepthZeroIsLeadingTerm) {
  for (auto [a, b] : {std::pair{1.0, 0.0}, {2.0, -1.0}, {0.5, 0.5}}) {
    const auto lead = k_leading_asymptotics(a, b);
    const auto e0 = k_expansion_refined(a, b, 0);
    ASSERT_EQ(e0.terms.size(), lead.terms.size()) << a << " " << b;
    for (std::size_t j = 0; j < lead.terms.size(); ++j) {
      EXPECT_NEAR(e0.terms[j].coefficient, lead.terms[j].coefficient, 1e-14);
      EXPECT_DOUBLE_EQ(e0.terms[j].power, lead.terms[j].power);
    }
  }
}

TEST(KSeries, DepthOneExactForLinearCase) {
  // K_{1,0}(x) = x exactly (the x identity with d_j = j), so every correction
  // term vanishes and the residual is rounding only.
  const auto e = k_expansion_refined(1.0, 0.0, 1);
  ASSERT_EQ(e.terms.size(), 1u);
  EXPECT_DOUBLE_EQ(e.terms[0].coefficient, 1.0);
  EXPECT_DOUBLE_EQ(e.terms[0].power, 1.0);
  for (double x : {1e3, 1e4, 1e5}) {
    const auto k = k_direct(1.0, 0.0, x);
    EXPECT_LE(std::fabs(k.value - e.evaluate(x)), k.tail_bound + 64.0 * 2.2e-16 * x) << x;
  }
}
