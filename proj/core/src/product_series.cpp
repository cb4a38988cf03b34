#include "silico/product_series.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "silico/compensated_sum.hpp"
#include "silico/errors.hpp"

namespace silico {

BoundedValue sum_product_series(const ProductSeries& series, double x,
                                const SeriesOptions& opts) {
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw DomainError("series argument x must be finite and >= 0");
  }
  if (!(opts.tol > 0.0)) throw DomainError("tolerance must be > 0");
  if (x == 0.0) return {0.0, 0.0, 0};

  const double g = series.weight_growth.exponent;
  const Index start = std::max<Index>(1, series.weight_growth.start);

  CompensatedSum sum;
  double product = 1.0;
  for (Index i = 1; i <= opts.term_cap; ++i) {
    product *= x / (x + series.d(i));
    const double w = series.weight(i);
    sum += w * product;
    if (i < start) continue;

    const double n = static_cast<double>(i);
    const double q = x / (x + series.d_inf_from(i + 1));
    const double ratio = q * std::max(1.0, std::pow((n + 2.0) / (n + 1.0), g));
    if (ratio >= 1.0) continue;
    // An underflowed product still bounds the true one by the smallest normal.
    const double p_bound =
        std::max(product, std::numeric_limits<double>::min());
    const double tail =
        w * std::pow((n + 1.0) / n, g) * p_bound * q / (1.0 - ratio);
    if (tail <= opts.tol) return {sum.value(), tail, i};
  }
  std::ostringstream os;
  os << "series at x=" << x << " did not reach tail bound " << opts.tol
     << " within " << opts.term_cap << " terms";
  throw NumericError(os.str());
}

}  // namespace silico
