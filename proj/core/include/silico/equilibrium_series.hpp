#pragma once

#include <vector>

#include "silico/coefficients.hpp"
#include "silico/product_series.hpp"

namespace silico {

/// Equilibrium cohort sizes M_0..M_n at quartz level x and recruitment r,
/// plus a certified bound on the omitted cell mass sum_{i>n} M_i.
struct EquilibriumProfile {
  double x = 0.0;
  double r = 0.0;
  std::vector<double> M;
  double tail_mass_bound = 0.0;
};

/// M_i = r x^i / (k_i prod_{j=0..i} (x + d_j)) via the forward recursion
/// M_i = M_{i-1} k_{i-1} x / (k_i x + p_i + q_i). Cohorts that underflow to
/// subnormal values are set to zero and counted in tail_mass_bound.
EquilibriumProfile cohort_profile(const CoefficientFamily& fam, double x,
                                  double r, Index n);

/// sum_i k_i M_i: the phagocytosis flux per unit quartz.
BoundedValue uptake_sum(const CoefficientFamily& fam, double x, double r,
                        const SeriesOptions& opts = {});

/// sum_i i q_i M_i: quartz released by dying cells.
BoundedValue release_sum(const CoefficientFamily& fam, double x, double r,
                         const SeriesOptions& opts = {});

/// H(x) = sum_{i>=1} i rho_i prod_{j=1..i} x/(x + d_j); every term >= 0.
BoundedValue clearance_series(const CoefficientFamily& fam, double x,
                              const SeriesOptions& opts = {});

/// F(x) with alpha/r = F(x) the equilibrium condition. Evaluated as
/// H(x)/(x + d_0); with opts.cross_check it is also recomputed as
/// (x * uptake - release)/r and a NumericError is raised on disagreement.
BoundedValue equilibrium_function(const CoefficientFamily& fam, double x,
                                  const SeriesOptions& opts = {});

struct IdentityAudit {
  double partial_sum = 0.0;  ///< S_n of the audited series
  double closed_form = 0.0;  ///< the telescoped remainder (a_n or b_n)
  double residual = 0.0;     ///< |target - S_n - closed_form|
};

/// S_n = (1/x) sum_{i=1..n} (i d_i - x) prod_{j<=i} x/(x+d_j) telescopes to
/// 1 - a_n with a_n = (n+1) x^n / prod_{j<=n} (x + d_j).
IdentityAudit audit_unit_identity(const CoefficientFamily& fam, double x,
                                  Index n_terms);

/// sum_{i=1..n} d_i prod_{j<=i} x/(x+d_j) telescopes to x - b_n with
/// b_n = x^{n+1} / prod_{j<=n} (x + d_j).
IdentityAudit audit_x_identity(const CoefficientFamily& fam, double x,
                               Index n_terms);

}  // namespace silico
