#pragma once

#include <functional>

#include "silico/coefficients.hpp"

namespace silico {

/// A series value with a one-sided certified truncation bound: every
/// omitted term is nonnegative, so the exact sum lies in
/// [value, value + tail_bound] (up to floating-point rounding of value).
struct BoundedValue {
  double value = 0.0;
  double tail_bound = 0.0;
  Index terms_used = 0;
};

struct SeriesOptions {
  double tol = 1e-12;  ///< absolute target for tail_bound
  Index term_cap = 1'000'000;
  /// Recompute the equilibrium function through the uptake/release route
  /// and fail if the two routes disagree beyond their combined bounds.
  bool cross_check = true;
};

/// sum_{i >= 1} w_i * prod_{j=1..i} x / (x + d_j) with w_i >= 0.
///
/// The tail after term n is bounded using prod_{j<=i} <= P_n * q^{i-n} with
/// q = x / (x + inf_{j>n} d_j) and the weight envelope w_i <= w_n (i/n)^g.
struct ProductSeries {
  std::function<double(Index)> weight;
  std::function<double(Index)> d;
  std::function<double(Index)> d_inf_from;
  GrowthEnvelope weight_growth;
};

/// Sums until the certified tail drops to opts.tol. Throws NumericError if
/// opts.term_cap terms are not enough, DomainError if x < 0.
BoundedValue sum_product_series(const ProductSeries& series, double x,
                                const SeriesOptions& opts = {});

}  // namespace silico
