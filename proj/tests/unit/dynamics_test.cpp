#include <gtest/gtest.h>

#include <cmath>

#include "silico/dynamics.hpp"
#include "silico/equilibrium_series.hpp"
#include "silico/errors.hpp"
#include "silico/piecewise.hpp"

using namespace silico;

TEST(Dynamics, EquilibriumIsStationary) {
  // Seed the truncated system with the analytic equilibrium; only the cut at
  // i_max (geometrically small) may leave a nonzero derivative.
  const auto fam = CoefficientFamily::piecewise_constant({1.0, 1});
  const double x = (3.0 - std::sqrt(5.0)) / 2.0;
  const double alpha = 0.2;
  auto s = zero_state(60);
  s.x = x;
  s.M = cohort_profile(fam, x, 1.0, 60).M;
  const auto d = rhs(fam, alpha, 1.0, s);
  EXPECT_LT(rhs_norm(d), 1e-12);
}

TEST(Dynamics, ConservationIdentity) {
  const auto fam = CoefficientFamily::power_law(PowerLawParams::from_ab(1.0, 0.0));
  auto s = zero_state(40);
  s.x = 0.7;
  for (std::size_t i = 0; i < s.M.size(); ++i) s.M[i] = 1.0 / (1.0 + static_cast<double>(i * i));
  EXPECT_LT(conservation_residual(fam, 0.3, 1.2, s), 1e-13);
}

TEST(Dynamics, ConvergesToLowerPiecewiseRoot) {
  const PiecewiseConstantParams pc{1.0, 1};
  const auto fam = CoefficientFamily::piecewise_constant(pc);
  const auto roots = solve_roots(pc, 0.2, 1.0);
  const auto sum = integrate(fam, 0.2, 1.0, zero_state(200), 5000.0);
  EXPECT_TRUE(sum.converged);
  EXPECT_NEAR(sum.final_state.x, roots.roots[0].root, 1e-6);
  EXPECT_LE(sum.max_conservation_drift, 1e-8);
  EXPECT_GE(sum.min_component, -1e-12);
  EXPECT_NEAR(sum.final_state.total_cells(), 1.0, 1e-6);  // r / d = r k
  EXPECT_FALSE(sum.samples.empty());
}

TEST(Dynamics, Rejections) {
  const auto fam = CoefficientFamily::piecewise_constant({1.0, 1});
  EXPECT_THROW(zero_state(0), DomainError);
  EXPECT_THROW(integrate(fam, -1.0, 1.0, zero_state(5), 1.0), DomainError);
  EXPECT_THROW(integrate(fam, 1.0, 1.0, zero_state(5), 0.0), DomainError);
}

TEST(Dynamics, TruncationInsensitive) {
  const auto fam = CoefficientFamily::piecewise_constant({1.0, 1});
  const auto a = integrate(fam, 0.2, 1.0, zero_state(100), 5000.0);
  const auto b = integrate(fam, 0.2, 1.0, zero_state(200), 5000.0);
  // Equilibrium cohorts decay like y^i with y = x/(x+1) ~ 0.28, so the cut
  // at i_max = 100 is far below double resolution.
  const auto tail = cohort_profile(fam, b.final_state.x, 1.0, 100).tail_mass_bound;
  EXPECT_LE(std::fabs(a.final_state.x - b.final_state.x), 10.0 * tail + 1e-9);
}
