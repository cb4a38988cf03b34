#pragma once

#include <string>
#include <vector>

#include "silico/coefficients.hpp"
#include "silico/product_series.hpp"

namespace silico {

enum class ExpansionVariable { XToInfinity, VToZero };
std::string to_string(ExpansionVariable v);

/// coefficient * t^power * (log t)^log_power, t being x or v.
struct ExpansionTerm {
  double coefficient = 0.0;
  double power = 0.0;
  int log_power = 0;
};

struct RemainderOrder {
  double power = 0.0;
  int log_power = 0;
};

struct AsymptoticExpansion {
  ExpansionVariable variable = ExpansionVariable::XToInfinity;
  std::vector<ExpansionTerm> terms;
  RemainderOrder remainder;

  /// Plain finite sum of all stored terms at t > 0.
  [[nodiscard]] double evaluate(double t) const;
  /// Most dominant first: decreasing power as x -> inf, increasing as
  /// v -> 0; a log factor is more dominant at equal power.
  void sort_terms();
};

/// R(a, A; v) = sum_{i>=1} exp(-v i^{a+1}) i^A with a certified tail from
/// the ratio bound exp(-v (a+1) n^a) max(1, ((n+1)/n)^A). Stops once the
/// tail bound drops below tol times the partial sum.
BoundedValue r_sum_direct(double a, double A, double v, double tol = 1e-17,
                          Index term_cap = 50'000'000);

/// Small-v expansion of R(a, A; v): Gamma(s0)/(a+1) v^{-s0}, s0 = (A+1)/(a+1),
/// plus sum_{k=0..depth} (-1)^k/k! zeta(-A - k(a+1)) v^k. When s0 = -k0 the
/// Gamma term and the k0-th zeta term merge into
/// (-1)^{k0}/((a+1) k0!) (log(1/v) + H_{k0} + a*gamma) v^{k0}.
/// Remainder O(v^{depth+1/2}). Arguments within 1e-6 of a pole (but not on
/// it) are rejected.
AsymptoticExpansion r_expansion(double a, double A, int depth);

struct PowerSumValue {
  double value = 0.0;
  /// First omitted term; zero when the formula is exact (integer a).
  double remainder_estimate = 0.0;
  bool exact = false;
};

/// sum_{j=1..n} j^a through Faulhaber's formula (integer a >= 0, exact) or
/// the Euler-Maclaurin series with the zeta(-a) constant truncated after
/// `depth` Bernoulli terms (non-integer a > 0).
PowerSumValue power_sum(double a, Index n, int depth);

/// K_{a,b}(x) = sum_i i^{b+1} prod_{j<=i} x/(x + j^a).
BoundedValue k_direct(double a, double b, double x,
                      const SeriesOptions& opts = {});

/// H_{a,b}(x) = sum_i i^{b+1} prod_{j<=i} x/(x + j^a + j^b).
BoundedValue h_direct(double a, double b, double x,
                      const SeriesOptions& opts = {});

/// Leading term Gamma(L)/(a+1)^{1-L} x^L, L = (b+2)/(a+1); remainder
/// x^{(b+1)/(a+1)} for b > -1 and O(1) otherwise. Requires a > 0, b > -2.
AsymptoticExpansion k_leading_asymptotics(double a, double b);

/// Diagnosis for b = -2, where K grows like log x with an unknown constant.
std::string k_log_order_diagnosis(double a, double b);

/// Large-x expansion of K_{a,b} to `depth` further orders of x^{-1/(a+1)}
/// below the leading term (depth <= 2). The exponent of the product is
/// expanded via log(1+z) and Euler-Maclaurin power sums, each resulting
/// monomial i^e/x^B is summed through the R expansion at v = 1/((a+1)x).
AsymptoticExpansion k_expansion_refined(double a, double b, int depth);

struct TailCutoff {
  Index cutoff_index = 0;
  double tail_sum = 0.0;
  double total = 0.0;
  Index terms_used = 0;
};

/// ceil(x^{3/(3a+2)}) and the directly summed K_{a,b} terms above it.
TailCutoff tail_cutoff_check(double a, double b, double x);

/// K e^{-c x^{1/(3a+1)}}, c > 0.
struct TailEnvelope {
  double K = 0.0;
  double c = 0.0;
  double unconstrained_c = 0.0;
  [[nodiscard]] double operator()(double a, double x) const;
};

/// Least-squares fit of log(tail) = log K - c x^{1/(3a+1)} over the sample
/// points, with c clamped to a positive floor and K raised until the
/// envelope covers every sample.
TailEnvelope fit_tail_envelope(double a, double b,
                               const std::vector<double>& xs);

}  // namespace silico
