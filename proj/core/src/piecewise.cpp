#include "silico/piecewise.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <cstdint>

#include "silico/errors.hpp"

namespace silico {
namespace {

void validate(const PiecewiseConstantParams& params) {
  if (!(params.k > 0.0) || !std::isfinite(params.k)) {
    throw DomainError("piecewise-constant family requires k > 0");
  }
  if (params.N < 0) throw DomainError("piecewise-constant family requires N >= 0");
}

void require_nondegenerate(const PiecewiseConstantParams& params) {
  validate(params);
  if (params.N == 0) {
    throw DomainError(
        "N = 0 makes F identically zero; there is no stationary point or "
        "root structure to analyse");
  }
}

void require_x(double x) {
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw DomainError("x must be finite and >= 0");
  }
}

template <class F>
std::pair<double, double> bisect_full(F f, double lo, double hi) {
  std::uintmax_t max_iter = 2000;
  return boost::math::tools::bisect(
      f, lo, hi, boost::math::tools::eps_tolerance<double>(), max_iter);
}

}  // namespace

std::string to_string(RootStatus status) {
  return status == RootStatus::Resolved ? "resolved" : "near_threshold";
}

double piecewise_F(const PiecewiseConstantParams& params, double x) {
  validate(params);
  require_x(x);
  if (x == 0.0) return 0.0;
  const double kx = params.k * x;
  const double n1 = static_cast<double>(params.N + 1);
  // log y with y = kx/(kx+1), then y^{N+1} and 1 - y^{N+1} without cancellation.
  const double e = -n1 * std::log1p(1.0 / kx);
  return kx * -std::expm1(e) - n1 * std::exp(e);
}

double piecewise_F_yform(const PiecewiseConstantParams& params, double x) {
  validate(params);
  require_x(x);
  const double kx = params.k * x;
  const double y = kx / (kx + 1.0);
  const double n = static_cast<double>(params.N);
  const double yn = std::pow(y, n);
  return kx * (1.0 - (n + 1.0) * yn + n * yn * y);
}

double stationarity_polynomial(Index N, double y) {
  const double n = static_cast<double>(N);
  const double yn = std::pow(y, n);
  return 1.0 - (n + 1.0) * (n + 1.0) * yn + n * (2.0 * n + 3.0) * yn * y -
         n * (n + 1.0) * yn * y * y;
}

double stationarity_polynomial_u(Index N, double u) {
  const double n = static_cast<double>(N);
  return -std::expm1(n * std::log1p(-u) +
                     std::log1p(n * u + n * (n + 1.0) * u * u));
}

StationaryPoint stationary_point(const PiecewiseConstantParams& params) {
  require_nondegenerate(params);
  const Index N = params.N;
  // y in (0, (N+1)/(N+2)) is u in (1/(N+2), 1); p_N > 0 at u = 1 and < 0 at
  // the left end.
  const double u_lo = 1.0 / static_cast<double>(N + 2);
  const auto p = [N](double u) { return stationarity_polynomial_u(N, u); };
  if (!(p(u_lo) < 0.0)) {
    throw NumericError("p_N does not change sign on the certified bracket");
  }
  const auto [a, b] = bisect_full(p, u_lo, 1.0);
  const double u = 0.5 * (a + b);
  StationaryPoint sp;
  sp.y_star = 1.0 - u;
  sp.x_star = sp.y_star / (params.k * u);
  sp.F_max = piecewise_F(params, sp.x_star);
  return sp;
}

double alpha_star(const PiecewiseConstantParams& params, double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("r must be > 0");
  return r * stationary_point(params).F_max;
}

RootReport solve_roots(const PiecewiseConstantParams& params, double alpha,
                       double r, double tol) {
  require_nondegenerate(params);
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw DomainError("alpha must be finite and > 0");
  }
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("r must be > 0");
  if (!(tol > 0.0)) throw DomainError("tol must be > 0");

  RootReport report;
  report.alpha_over_r = alpha / r;
  report.stationary = stationary_point(params);
  report.threshold_m = report.stationary.F_max;
  report.tol = tol;

  const double target = report.alpha_over_r;
  const double m = report.threshold_m;
  if (std::fabs(target - m) <= 10.0 * tol * std::max(1.0, m)) {
    const double xs = report.stationary.x_star;
    report.count = 1;
    report.status = RootStatus::NearThreshold;
    report.roots.push_back({xs, xs, xs});
    return report;
  }
  if (target > m) return report;

  const auto g = [&](double x) { return piecewise_F(params, x) - target; };
  const double xs = report.stationary.x_star;
  const auto left = bisect_full(g, 0.0, xs);
  report.roots.push_back({left.first, left.second, 0.5 * (left.first + left.second)});

  double hi = 2.0 * xs;
  while (g(hi) >= 0.0) {
    hi *= 2.0;
    if (!std::isfinite(hi)) throw NumericError("failed to bracket the right root");
  }
  const auto right = bisect_full(g, xs, hi);
  report.roots.push_back(
      {right.first, right.second, 0.5 * (right.first + right.second)});
  report.count = 2;
  return report;
}

}  // namespace silico
