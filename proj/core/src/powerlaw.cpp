#include "silico/powerlaw.hpp"

#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <cstdint>
#include <sstream>

#include "silico/equilibrium_series.hpp"
#include "silico/errors.hpp"

namespace silico {
namespace {

std::vector<double> log_grid(double lo, double hi, int points) {
  if (!(lo > 0.0) || !(hi > lo) || points < 2) {
    throw DomainError("log grid needs 0 < lo < hi and at least two points");
  }
  std::vector<double> xs(static_cast<std::size_t>(points));
  const double l0 = std::log(lo);
  const double step = (std::log(hi) - l0) / (points - 1);
  for (int j = 0; j < points; ++j) xs[static_cast<std::size_t>(j)] = std::exp(l0 + step * j);
  xs.front() = lo;
  xs.back() = hi;
  return xs;
}

// lim_{x->inf} H(x)/x when (b+2)/(a+1) = 1: Gamma(1) (a+1)^0.
constexpr double kStrictLimit = 1.0;

}  // namespace

std::string to_string(Regime regime) {
  switch (regime) {
    case Regime::AlwaysExists:
      return "always_exists";
    case Regime::ThresholdStrict:
      return "threshold_strict";
    case Regime::ThresholdWeak:
      return "threshold_weak";
  }
  return "unknown";
}

std::string to_string(Existence e) {
  switch (e) {
    case Existence::Exists:
      return "exists";
    case Existence::NotExists:
      return "not_exists";
    case Existence::AtThreshold:
      return "at_threshold";
  }
  return "unknown";
}

Regime classify_regime(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("exponents must be finite");
  }
  if (a < 0.0) throw DomainError("regime classification requires a >= 0");
  if (b <= -2.0) throw DomainError("regime classification requires b > -2");
  const double gap = b - (a - 1.0);
  if (std::fabs(gap) <= kRegimeTolerance) return Regime::ThresholdStrict;
  return gap > 0.0 ? Regime::AlwaysExists : Regime::ThresholdWeak;
}

Regime classify_regime(const PowerLawParams& params) {
  return classify_regime(params.a(), params.b());
}

std::vector<GridSample> F_on_log_grid(const CoefficientFamily& fam,
                                      double x_lo, double x_hi, int points,
                                      const SeriesOptions& opts) {
  std::vector<GridSample> out;
  for (double x : log_grid(x_lo, x_hi, points)) {
    out.push_back({x, equilibrium_function(fam, x, opts).value});
  }
  return out;
}

ThresholdEstimate estimate_m(const PowerLawParams& params,
                             const ThresholdOptions& opts) {
  const Regime regime = classify_regime(params);
  if (regime == Regime::AlwaysExists) {
    throw DomainError("F is unbounded when b > a - 1; there is no finite m");
  }
  const auto fam = CoefficientFamily::power_law(params);
  const auto xs = log_grid(opts.x_min, opts.x_max, opts.grid);
  std::vector<BoundedValue> fs;
  fs.reserve(xs.size());
  double worst_tail = 0.0;
  std::size_t best = 0;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    fs.push_back(equilibrium_function(fam, xs[j], opts.series));
    worst_tail = std::max(worst_tail, fs[j].tail_bound);
    if (fs[j].value > fs[best].value) best = j;
  }

  ThresholdEstimate est;
  est.x_max = opts.x_max;
  est.grid = opts.grid;
  const std::size_t last = xs.size() - 1;
  const bool rising_at_edge = fs[last].value > fs[last - 1].value;
  est.F_edge = fs[last].value;

  if (rising_at_edge) {
    if (regime == Regime::ThresholdWeak) {
      std::ostringstream os;
      os.precision(17);
      os << "F is still increasing at x_max=" << opts.x_max
         << "; increase x_max for the weak regime";
      throw NumericError(os.str());
    }
    // Two-point extrapolation of F = m + c x^{-1/(a+1)} + ... to x = inf.
    const double theta = 1.0 / (params.a() + 1.0);
    const std::size_t mid = last - std::min<std::size_t>(last, xs.size() / 4);
    const double w2 = std::pow(xs[last], theta);
    const double w1 = std::pow(xs[mid], theta);
    est.extrapolated = (fs[last].value * w2 - fs[mid].value * w1) / (w2 - w1);
    if (fs[best].value <= kStrictLimit) {
      est.m = kStrictLimit;
      est.supremum_at_infinity = true;
      est.error_bar = std::fabs(est.extrapolated - est.m) + worst_tail;
      return est;
    }
  }

  // Interior maximum: refine on the neighbouring cells in log x.
  const std::size_t lo = best == 0 ? 0 : best - 1;
  const std::size_t hi = std::min(last, best + 1);
  const auto neg_F = [&](double t) {
    return -equilibrium_function(fam, std::exp(t), opts.series).value;
  };
  std::uintmax_t max_iter = 200;
  const auto [t_opt, neg_max] = boost::math::tools::brent_find_minima(
      neg_F, std::log(xs[lo]), std::log(xs[hi]), 40, max_iter);
  const double h = 1e-7;
  const double spread = std::max(std::fabs(neg_F(t_opt + h) - neg_max),
                                 std::fabs(neg_F(t_opt - h) - neg_max));
  est.m = std::max(-neg_max, fs[best].value);
  est.attained_at = std::exp(t_opt);
  est.error_bar = spread + worst_tail + 1e-14 * est.m;
  return est;
}

ExistenceReport existence_verdict(const PowerLawParams& params, double alpha,
                                  double r, const ThresholdOptions& opts) {
  if (!(alpha > 0.0) || !(r > 0.0)) {
    throw DomainError("alpha and r must be > 0");
  }
  ExistenceReport report;
  report.regime = classify_regime(params);
  report.alpha_over_r = alpha / r;
  if (report.regime == Regime::AlwaysExists) {
    report.existence = Existence::Exists;
    return report;
  }
  report.threshold = estimate_m(params, opts);
  const double m = report.threshold->m;
  const double t = report.alpha_over_r;
  if (std::fabs(t - m) <= report.threshold->error_bar) {
    report.existence = Existence::AtThreshold;
  } else if (report.regime == Regime::ThresholdStrict) {
    report.existence = t < m ? Existence::Exists : Existence::NotExists;
  } else {
    report.existence = t <= m ? Existence::Exists : Existence::NotExists;
  }
  return report;
}

int heuristic_root_count(const PowerLawParams& params, double alpha_over_r,
                         double x_lo, double x_hi, int points) {
  const auto fam = CoefficientFamily::power_law(params);
  int count = 0;
  // F(0) = 0 < alpha/r, so the scan starts below the level.
  bool above = false;
  for (const auto& s : F_on_log_grid(fam, x_lo, x_hi, points)) {
    const bool now_above = s.value > alpha_over_r;
    if (now_above != above) ++count;
    above = now_above;
  }
  return count;
}

std::vector<GridSample> second_difference_probe(const PowerLawParams& params,
                                                double x_lo, double x_hi,
                                                int points) {
  const auto fam = CoefficientFamily::power_law(params);
  const auto xs = log_grid(x_lo, x_hi, points);
  std::vector<double> h;
  h.reserve(xs.size());
  for (double x : xs) h.push_back(clearance_series(fam, x).value);
  std::vector<GridSample> out;
  for (std::size_t j = 1; j + 1 < xs.size(); ++j) {
    const double s1 = (h[j + 1] - h[j]) / (xs[j + 1] - xs[j]);
    const double s0 = (h[j] - h[j - 1]) / (xs[j] - xs[j - 1]);
    out.push_back({xs[j], 2.0 * (s1 - s0) / (xs[j + 1] - xs[j - 1])});
  }
  return out;
}

}  // namespace silico
