#pragma once

#include <optional>
#include <string>
#include <vector>

#include "silico/coefficients.hpp"
#include "silico/product_series.hpp"

namespace silico {

enum class Regime { AlwaysExists, ThresholdStrict, ThresholdWeak };
std::string to_string(Regime regime);

inline constexpr double kRegimeTolerance = 1e-12;

/// b > a-1: AlwaysExists; |b-(a-1)| <= 1e-12: ThresholdStrict (equilibrium
/// iff alpha/r < m); b < a-1: ThresholdWeak (equilibrium iff alpha/r <= m).
/// Requires a >= 0 and b > -2.
Regime classify_regime(double a, double b);
Regime classify_regime(const PowerLawParams& params);

struct ThresholdOptions {
  double x_min = 1e-3;
  double x_max = 1e6;
  int grid = 200;
  SeriesOptions series{};
};

struct ThresholdEstimate {
  double m = 0.0;
  double error_bar = 0.0;
  /// Maximiser of F; absent when the supremum is approached as x -> inf.
  std::optional<double> attained_at;
  bool supremum_at_infinity = false;
  /// F at the right grid edge and its two-point extrapolation to x = inf
  /// (only filled when the supremum is at infinity).
  double F_edge = 0.0;
  double extrapolated = 0.0;
  double x_max = 0.0;
  int grid = 0;
};

/// m = sup F over x >= 0 by a log-grid scan and Brent refinement of the best
/// cell. In the strict regime F increases towards its limit at infinity,
/// which is the leading coefficient Gamma((b+2)/(a+1)) (a+1)^{(b+2)/(a+1)-1}
/// = 1 of H(x)/x; that case is flagged rather than forced to an interior
/// maximum. Throws DomainError for AlwaysExists and NumericError when F is
/// still increasing at x_max in the weak regime.
ThresholdEstimate estimate_m(const PowerLawParams& params,
                             const ThresholdOptions& opts = {});

enum class Existence { Exists, NotExists, AtThreshold };
std::string to_string(Existence e);

struct ExistenceReport {
  Regime regime = Regime::AlwaysExists;
  Existence existence = Existence::Exists;
  double alpha_over_r = 0.0;
  std::optional<ThresholdEstimate> threshold;
};

/// Existence of an equilibrium for alpha/r; AtThreshold when alpha/r is
/// within the error bar of the m estimate.
ExistenceReport existence_verdict(const PowerLawParams& params, double alpha,
                                  double r, const ThresholdOptions& opts = {});

struct GridSample {
  double x = 0.0;
  double value = 0.0;
};

/// F on a log grid, endpoints included.
std::vector<GridSample> F_on_log_grid(const CoefficientFamily& fam,
                                      double x_lo, double x_hi, int points,
                                      const SeriesOptions& opts = {});

/// Heuristic: sign changes of F - alpha/r on a dense log grid. Not a
/// certified count.
int heuristic_root_count(const PowerLawParams& params, double alpha_over_r,
                         double x_lo, double x_hi, int points);

/// Exploratory second differences of H in log x, for probing convexity.
std::vector<GridSample> second_difference_probe(const PowerLawParams& params,
                                                double x_lo, double x_hi,
                                                int points);

}  // namespace silico
