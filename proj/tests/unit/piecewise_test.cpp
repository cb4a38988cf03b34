#include <gtest/gtest.h>

#include <cmath>

#include "silico/errors.hpp"
#include "silico/piecewise.hpp"

using namespace silico;

namespace {

struct Reference {
  Index N;
  double x_star;
  double F_max;
};

// Stationary points at k = 1 from a 40-digit root of F'(x).
constexpr Reference kReference[] = {
    {1, 1.0, 0.25},
    {2, 1.5485837703548635302, 0.52815294773059507655},
    {3, 2.1010490857604214855, 0.81542277600111478729},
    {5, 3.2106290210118386062, 1.4003389236428420284},
    {10, 5.9931087587364534099, 2.8808659059349883843},
    {30, 17.141028380193870239, 8.8398552546236816264},
};

int scan_crossings(const PiecewiseConstantParams& p, double level, double lo, double hi, int n) {
  int count = 0;
  double prev = piecewise_F(p, lo) - level;
  for (int i = 1; i <= n; ++i) {
    const double x = lo * std::pow(hi / lo, static_cast<double>(i) / n);
    const double cur = piecewise_F(p, x) - level;
    if ((prev < 0.0) != (cur < 0.0)) ++count;
    prev = cur;
  }
  return count;
}

}  // namespace

TEST(Piecewise, TwoFormsAgree) {
  for (Index N : {1, 4, 20}) {
    for (double x : {1e-3, 0.2, 2.0, 50.0}) {
      const double a = piecewise_F({1.3, N}, x);
      const double b = piecewise_F_yform({1.3, N}, x);
      EXPECT_NEAR(a, b, 1e-12 * std::max(1.0, std::fabs(a)));
    }
  }
}

TEST(Piecewise, StationarityPolynomialForms) {
  for (Index N : {1, 3, 9}) {
    for (double y : {0.1, 0.5, 0.8}) {
      EXPECT_NEAR(stationarity_polynomial(N, y), stationarity_polynomial_u(N, 1.0 - y), 1e-12);
    }
  }
}

TEST(Piecewise, StationaryPointsMatchReference) {
  for (const auto& ref : kReference) {
    const auto sp = stationary_point({1.0, ref.N});
    EXPECT_NEAR(sp.x_star, ref.x_star, 1e-10 * ref.x_star) << ref.N;
    EXPECT_NEAR(sp.F_max, ref.F_max, 1e-13 * ref.F_max) << ref.N;
    EXPECT_NEAR(sp.y_star, sp.x_star / (sp.x_star + 1.0), 1e-15);
  }
}

TEST(Piecewise, ScalingInK) {
  // F_{N,k}(x) depends on kx only, so x* scales as 1/k and F_max is unchanged.
  const auto a = stationary_point({1.0, 4});
  const auto b = stationary_point({8.0, 4});
  EXPECT_NEAR(b.x_star, a.x_star / 8.0, 1e-12);
  EXPECT_NEAR(b.F_max, a.F_max, 1e-14);
  EXPECT_NEAR(alpha_star({8.0, 4}, 3.0), 3.0 * a.F_max, 1e-13);
}

TEST(Piecewise, GoldenRatioRootsForN1) {
  const auto rep = solve_roots({1.0, 1}, 0.2, 1.0);
  ASSERT_EQ(rep.count, 2);
  ASSERT_EQ(rep.roots.size(), 2u);
  EXPECT_EQ(rep.status, RootStatus::Resolved);
  EXPECT_NEAR(rep.roots[0].root, (3.0 - std::sqrt(5.0)) / 2.0, 1e-12);
  EXPECT_NEAR(rep.roots[1].root, (3.0 + std::sqrt(5.0)) / 2.0, 1e-11);
  for (const auto& b : rep.roots) {
    EXPECT_LE(b.lo, b.root);
    EXPECT_GE(b.hi, b.root);
  }
}

TEST(Piecewise, RootCountMatchesDenseScan) {
  for (Index N : {1, 2, 6, 15}) {
    const PiecewiseConstantParams p{0.7, N};
    const double m = stationary_point(p).F_max;
    for (double f : {0.1, 0.5, 0.99, 1.01, 2.0}) {
      const auto rep = solve_roots(p, f * m, 1.0);
      EXPECT_EQ(rep.count, scan_crossings(p, f * m, 1e-6, 1e5, 200000)) << N << " " << f;
      for (const auto& b : rep.roots) {
        EXPECT_LE(std::fabs(piecewise_F(p, b.root) - f * m), 1e-10);
      }
    }
  }
}

TEST(Piecewise, NearThresholdReportsTangency) {
  const PiecewiseConstantParams p{1.0, 1};
  const auto rep = solve_roots(p, 0.25 + 1e-13, 1.0);
  EXPECT_EQ(rep.status, RootStatus::NearThreshold);
  EXPECT_EQ(rep.count, 1);
  ASSERT_EQ(rep.roots.size(), 1u);
  EXPECT_NEAR(rep.roots[0].root, 1.0, 1e-12);
  EXPECT_EQ(to_string(rep.status), "near_threshold");
}

TEST(Piecewise, RejectsDegenerateInput) {
  EXPECT_THROW(stationary_point({1.0, 0}), DomainError);
  EXPECT_THROW(solve_roots({1.0, 0}, 0.1, 1.0), DomainError);
  EXPECT_THROW(solve_roots({1.0, 2}, -0.1, 1.0), DomainError);
  EXPECT_THROW(solve_roots({1.0, 2}, 0.1, 0.0), DomainError);
  EXPECT_THROW(piecewise_F({0.0, 2}, 1.0), DomainError);
  // N = 0 itself is a valid family; F vanishes identically.
  EXPECT_NEAR(piecewise_F({1.0, 0}, 3.0), 0.0, 1e-15);
}
