#pragma once

#include <string>
#include <vector>

#include "silico/coefficients.hpp"

namespace silico {

/// F_{N,k}(x) = kx(1 - y^{N+1}) - (N+1) y^{N+1} with y = kx/(kx + 1).
double piecewise_F(const PiecewiseConstantParams& params, double x);

/// The same function through y/(1-y) * (1 - (N+1) y^N + N y^{N+1}).
double piecewise_F_yform(const PiecewiseConstantParams& params, double x);

/// p_N(y) = 1 - (N+1)^2 y^N + N(2N+3) y^{N+1} - N(N+1) y^{N+2}, expanded.
double stationarity_polynomial(Index N, double y);

/// p_N in the variable u = 1 - y, free of cancellation near y = 1:
/// p_N = 1 - y^N (1 + N u + N(N+1) u^2).
double stationarity_polynomial_u(Index N, double u);

struct StationaryPoint {
  double y_star = 0.0;
  double x_star = 0.0;
  double F_max = 0.0;
};

/// Unique stationary point of F_{N,k}, from the root of p_N in
/// (0, (N+1)/(N+2)) bracketed by bisection. Rejects N = 0 (F is then
/// identically zero).
StationaryPoint stationary_point(const PiecewiseConstantParams& params);

/// alpha* = r * max F_{N,k}.
double alpha_star(const PiecewiseConstantParams& params, double r);

enum class RootStatus { Resolved, NearThreshold };
std::string to_string(RootStatus status);

struct RootBracket {
  double lo = 0.0;
  double hi = 0.0;
  double root = 0.0;
};

struct RootReport {
  double alpha_over_r = 0.0;
  double threshold_m = 0.0;
  int count = 0;
  std::vector<RootBracket> roots;
  StationaryPoint stationary;
  RootStatus status = RootStatus::Resolved;
  double tol = 0.0;
};

/// Solutions of alpha/r = F_{N,k}(x): two when alpha/r < max F, none when
/// above. Within 10*tol (relative to max(1, F_max)) of the maximum the count
/// is reported as 1 at x_star with status NearThreshold.
RootReport solve_roots(const PiecewiseConstantParams& params, double alpha,
                       double r, double tol = 1e-12);

}  // namespace silico
