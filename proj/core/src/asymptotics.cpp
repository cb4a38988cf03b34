#include "silico/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "silico/compensated_sum.hpp"
#include "silico/errors.hpp"
#include "silico/special_functions.hpp"

namespace silico {
namespace {

void require_positive_a(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("a must be finite and > 0");
}

void require_b_above_minus_two(double b) {
  if (!std::isfinite(b)) throw DomainError("b must be finite");
  if (b <= -2.0) {
    throw DomainError(
        "b must be > -2; at b = -2 K grows like log x (see the log-order "
        "diagnosis)");
  }
}

bool is_integer(double t) { return t == std::floor(t); }

double factorial(int k) {
  double f = 1.0;
  for (int j = 2; j <= k; ++j) f *= j;
  return f;
}

BoundedValue power_series_sum(double a, double b, double x, bool with_b,
                              const SeriesOptions& opts) {
  require_positive_a(a);
  if (!std::isfinite(b)) throw DomainError("b must be finite");
  ProductSeries series{
      [b](Index i) { return std::pow(static_cast<double>(i), b + 1.0); },
      [a, b, with_b](Index j) {
        const double t = static_cast<double>(j);
        return with_b ? std::pow(t, a) + std::pow(t, b) : std::pow(t, a);
      },
      [a, b, with_b](Index n) {
        return with_b ? inf_power_pair(a, b, n)
                      : std::pow(static_cast<double>(n), a);
      },
      GrowthEnvelope{b + 1.0, 1},
  };
  return sum_product_series(series, x, opts);
}

}  // namespace

std::string to_string(ExpansionVariable v) {
  return v == ExpansionVariable::XToInfinity ? "x_to_infinity" : "v_to_zero";
}

double AsymptoticExpansion::evaluate(double t) const {
  if (!(t > 0.0)) throw DomainError("expansion is evaluated at t > 0 only");
  const double lt = std::log(t);
  CompensatedSum sum;
  for (const auto& term : terms) {
    sum += term.coefficient * std::pow(t, term.power) *
           std::pow(lt, term.log_power);
  }
  return sum.value();
}

void AsymptoticExpansion::sort_terms() {
  const bool at_infinity = variable == ExpansionVariable::XToInfinity;
  std::stable_sort(terms.begin(), terms.end(),
                   [at_infinity](const ExpansionTerm& l, const ExpansionTerm& r) {
                     if (l.power != r.power) {
                       return at_infinity ? l.power > r.power : l.power < r.power;
                     }
                     return l.log_power > r.log_power;
                   });
}

BoundedValue r_sum_direct(double a, double A, double v, double tol,
                          Index term_cap) {
  require_positive_a(a);
  if (!std::isfinite(A)) throw DomainError("A must be finite");
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("v must be > 0");
  if (!(tol > 0.0)) throw DomainError("tol must be > 0");

  CompensatedSum sum;
  for (Index i = 1; i <= term_cap; ++i) {
    const double t = static_cast<double>(i);
    const double term = std::exp(-v * std::pow(t, a + 1.0) + A * std::log(t));
    sum += term;
    // (i+1)^{a+1} - i^{a+1} >= (a+1) n^a for i >= n, and ((i+1)/i)^A is
    // bounded by its value at n when A > 0.
    const double q = std::exp(-v * (a + 1.0) * std::pow(t, a)) *
                     std::max(1.0, std::pow((t + 1.0) / t, A));
    if (q >= 1.0) continue;
    const double tail = term * q / (1.0 - q);
    if (tail <= tol * std::fabs(sum.value())) return {sum.value(), tail, i};
  }
  std::ostringstream os;
  os << "R(a, A; v) at v=" << v << " not converged within " << term_cap
     << " terms";
  throw NumericError(os.str());
}

AsymptoticExpansion r_expansion(double a, double A, int depth) {
  require_positive_a(a);
  if (!std::isfinite(A)) throw DomainError("A must be finite");
  if (depth < 0) throw DomainError("depth must be >= 0");

  const double s0 = (A + 1.0) / (a + 1.0);
  const double nearest = std::round(s0);
  int k0 = -1;
  if (nearest <= 0.0) {
    const double gap = std::fabs(s0 - nearest);
    if (gap <= 1e-12) {
      k0 = static_cast<int>(-nearest);
    } else if (gap < 1e-6) {
      std::ostringstream os;
      os << "(A+1)/(a+1) = " << s0 << " is within " << gap
         << " of the pole at " << nearest << ": the Gamma term and the zeta term k="
         << -nearest << " (zeta argument " << -A + nearest * (a + 1.0)
         << ") are both ill-conditioned";
      throw DomainError(os.str());
    }
  }

  AsymptoticExpansion e;
  e.variable = ExpansionVariable::VToZero;
  if (k0 < 0) e.terms.push_back({sf::gamma(s0) / (a + 1.0), -s0, 0});
  for (int k = 0; k <= depth; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    if (k == k0) {
      const double base = sign / ((a + 1.0) * factorial(k));
      // log(1/v) = -log v
      e.terms.push_back({-base, static_cast<double>(k), 1});
      e.terms.push_back({base * (sf::harmonic(k) + a * sf::euler_gamma),
                         static_cast<double>(k), 0});
      continue;
    }
    const double c = sign / factorial(k) * sf::zeta(-A - k * (a + 1.0));
    if (c != 0.0) e.terms.push_back({c, static_cast<double>(k), 0});
  }
  e.remainder = {depth + 0.5, 0};
  e.sort_terms();
  return e;
}

PowerSumValue power_sum(double a, Index n, int depth) {
  if (!std::isfinite(a) || a < 0.0) throw DomainError("power_sum needs a >= 0");
  if (n < 1) throw DomainError("power_sum needs n >= 1");
  if (depth < 0) throw DomainError("depth must be >= 0");

  const long double N = static_cast<long double>(n);
  const long double A = a;
  PowerSumValue out;
  if (is_integer(a)) {
    out.exact = true;
    if (a == 0.0) {
      out.value = static_cast<double>(n);
      return out;
    }
    const int ia = static_cast<int>(a);
    if (ia > 59) throw DomainError("integer power_sum supports a <= 59");
    long double s = std::pow(N, A + 1) / (A + 1) + std::pow(N, A) / 2;
    long double binom = 1;  // C(a+1, 2k), built incrementally
    for (int k = 1; k <= ia / 2; ++k) {
      binom *= (A + 1 - (2 * k - 2)) * (A + 1 - (2 * k - 1)) /
               static_cast<long double>((2 * k - 1) * (2 * k));
      s += sf::bernoulli_2k_long(k) / (A + 1) * binom * std::pow(N, A + 1 - 2 * k);
    }
    out.value = static_cast<double>(s);
    return out;
  }

  if (depth > 29) throw DomainError("power_sum depth must be <= 29");
  long double s = static_cast<long double>(sf::zeta(-a)) +
                  std::pow(N, A + 1) / (A + 1) + std::pow(N, A) / 2;
  long double binom = 1;
  long double next = 0;
  for (int k = 1; k <= depth + 1; ++k) {
    binom *= (A + 1 - (2 * k - 2)) * (A + 1 - (2 * k - 1)) /
             static_cast<long double>((2 * k - 1) * (2 * k));
    const long double term =
        sf::bernoulli_2k_long(k) / (A + 1) * binom * std::pow(N, A + 1 - 2 * k);
    if (k <= depth) {
      s += term;
    } else {
      next = term;
    }
  }
  out.value = static_cast<double>(s);
  out.remainder_estimate = static_cast<double>(std::fabs(next));
  return out;
}

BoundedValue k_direct(double a, double b, double x, const SeriesOptions& opts) {
  return power_series_sum(a, b, x, false, opts);
}

BoundedValue h_direct(double a, double b, double x, const SeriesOptions& opts) {
  return power_series_sum(a, b, x, true, opts);
}

AsymptoticExpansion k_leading_asymptotics(double a, double b) {
  require_positive_a(a);
  require_b_above_minus_two(b);
  const double L = (b + 2.0) / (a + 1.0);
  AsymptoticExpansion e;
  e.variable = ExpansionVariable::XToInfinity;
  e.terms.push_back({sf::gamma(L) / std::pow(a + 1.0, 1.0 - L), L, 0});
  e.remainder = b > -1.0 ? RemainderOrder{(b + 1.0) / (a + 1.0), 0}
                         : RemainderOrder{0.0, 0};
  return e;
}

std::string k_log_order_diagnosis(double a, double b) {
  require_positive_a(a);
  if (b != -2.0) throw DomainError("the log-order diagnosis applies to b = -2 only");
  return "K_{a,-2}(x) is of order log x as x -> infinity; the additive "
         "constant is not determined";
}

TailCutoff tail_cutoff_check(double a, double b, double x) {
  require_positive_a(a);
  if (!std::isfinite(b)) throw DomainError("b must be finite");
  if (!(x >= 1.0) || !std::isfinite(x)) throw DomainError("tail cutoff needs x >= 1");

  TailCutoff out;
  out.cutoff_index =
      static_cast<Index>(std::ceil(std::pow(x, 3.0 / (3.0 * a + 2.0))));
  const auto total = k_direct(a, b, x, SeriesOptions{1e-300, 1'000'000, false});
  const Index cutoff = out.cutoff_index;
  ProductSeries above{
      [b, cutoff](Index i) {
        return i > cutoff ? std::pow(static_cast<double>(i), b + 1.0) : 0.0;
      },
      [a](Index j) { return std::pow(static_cast<double>(j), a); },
      [a](Index n) { return std::pow(static_cast<double>(n), a); },
      GrowthEnvelope{b + 1.0, cutoff + 1},
  };
  const auto tail =
      sum_product_series(above, x, SeriesOptions{1e-300, 1'000'000, false});
  out.tail_sum = tail.value;
  out.total = total.value;
  out.terms_used = tail.terms_used;
  return out;
}

double TailEnvelope::operator()(double a, double x) const {
  return K * std::exp(-c * std::pow(x, 1.0 / (3.0 * a + 1.0)));
}

TailEnvelope fit_tail_envelope(double a, double b,
                               const std::vector<double>& xs) {
  if (xs.size() < 2) throw DomainError("envelope fit needs at least two points");
  std::vector<double> us;
  std::vector<double> logs;
  for (double x : xs) {
    const auto t = tail_cutoff_check(a, b, x);
    if (!(t.tail_sum > 0.0)) throw NumericError("tail sum underflowed in fit");
    us.push_back(std::pow(x, 1.0 / (3.0 * a + 1.0)));
    logs.push_back(std::log(t.tail_sum));
  }
  const double n = static_cast<double>(us.size());
  double su = 0, sy = 0, suu = 0, suy = 0;
  for (std::size_t j = 0; j < us.size(); ++j) {
    su += us[j];
    sy += logs[j];
    suu += us[j] * us[j];
    suy += us[j] * logs[j];
  }
  const double slope = (n * suy - su * sy) / (n * suu - su * su);
  TailEnvelope env;
  env.unconstrained_c = -slope;
  // The envelope must decay: c is held at a positive floor.
  env.c = std::max(env.unconstrained_c, 1e-9);
  double log_k = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < us.size(); ++j) {
    log_k = std::max(log_k, logs[j] + env.c * us[j]);
  }
  env.K = std::exp(log_k);
  return env;
}

}  // namespace silico
