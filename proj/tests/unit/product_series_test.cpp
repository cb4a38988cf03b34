#include <gtest/gtest.h>

#include <cmath>

#include "silico/compensated_sum.hpp"
#include "silico/errors.hpp"
#include "silico/product_series.hpp"

using namespace silico;

namespace {

// Constant d: sum_{i>=1} w q^i with q = x/(x+d).
ProductSeries constant_d(double d, double weight_exponent) {
  ProductSeries s;
  s.weight = [weight_exponent](Index i) { return std::pow(static_cast<double>(i), weight_exponent); };
  s.d = [d](Index) { return d; };
  s.d_inf_from = [d](Index) { return d; };
  s.weight_growth = {weight_exponent, 1};
  return s;
}

}  // namespace

TEST(ProductSeries, GeometricClosedForm) {
  // sum q^i = q/(1-q); sum i q^i = q/(1-q)^2.
  for (double x : {0.01, 1.0, 30.0}) {
    const double q = x / (x + 2.0);
    const auto s0 = sum_product_series(constant_d(2.0, 0.0), x);
    const auto s1 = sum_product_series(constant_d(2.0, 1.0), x);
    const double e0 = q / (1.0 - q);
    const double e1 = q / ((1.0 - q) * (1.0 - q));
    EXPECT_LE(s0.tail_bound, 1e-12);
    EXPECT_GE(e0 - s0.value, -1e-13 * e0);
    EXPECT_LE(e0 - s0.value, s0.tail_bound + 1e-13 * e0);
    EXPECT_GE(e1 - s1.value, -1e-13 * e1);
    EXPECT_LE(e1 - s1.value, s1.tail_bound + 1e-13 * e1);
  }
}

TEST(ProductSeries, TailBoundIsCertified) {
  // Loose tolerance: the bound must still cover the true remainder.
  SeriesOptions opts;
  opts.tol = 1e-3;
  const double x = 5.0;
  const double q = x / (x + 1.0);
  const auto s = sum_product_series(constant_d(1.0, 2.0), x, opts);
  const double exact = q * (1.0 + q) / std::pow(1.0 - q, 3);
  EXPECT_GE(exact - s.value, 0.0);
  EXPECT_LE(exact - s.value, s.tail_bound);
  EXPECT_LE(s.tail_bound, 1e-3);
}

TEST(ProductSeries, XZeroIsZero) {
  const auto s = sum_product_series(constant_d(1.0, 1.0), 0.0);
  EXPECT_EQ(s.value, 0.0);
  EXPECT_EQ(s.tail_bound, 0.0);
}

TEST(ProductSeries, TermCapRaisesNumericError) {
  SeriesOptions opts;
  opts.term_cap = 10;
  EXPECT_THROW(sum_product_series(constant_d(1e-3, 0.0), 100.0, opts), NumericError);
  EXPECT_THROW(sum_product_series(constant_d(1.0, 0.0), -1.0), DomainError);
}

TEST(CompensatedSum, RecoversCancellation) {
  CompensatedSum s;
  s += 1e16;
  s += 1.0;
  s += -1e16;
  EXPECT_EQ(s.value(), 1.0);
}
