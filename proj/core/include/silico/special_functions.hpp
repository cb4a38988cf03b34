#pragma once

namespace silico::sf {

inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;

/// Gamma function on the real line; DomainError at the poles 0, -1, -2, ...
double gamma(double s);

/// log |Gamma(s)|; DomainError at the poles.
double log_gamma(double s);

/// Riemann zeta on the real line, s != 1. Exact zeros at negative even
/// integers.
double zeta(double s);

/// B_{2k} for 2k <= 60; B_0 = 1.
double bernoulli_2k(int k);
long double bernoulli_2k_long(int k);

/// H_k = 1 + 1/2 + ... + 1/k, H_0 = 0.
double harmonic(int k);

/// Generalised binomial coefficient C(c, k) for real c and integer k >= 0.
double binomial(double c, int k);

/// Regularised lower incomplete gamma P(s, x), s > 0, x >= 0.
double gamma_p(double s, double x);

/// Upper incomplete gamma Gamma(s, x), s > 0, x >= 0. Overflows for large s.
double incomplete_gamma_upper(double s, double x);

/// H_{1,0}(x) = x - e^x (Gamma(x+2) - Gamma(x+2, x)) x^{-x-1}, evaluated in
/// log-scaled form so that it stays finite for large x.
double h10_closed_form(double x);

}  // namespace silico::sf
