#include "silico/special_functions.hpp"

#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/zeta.hpp>
#include <cmath>
#include <string>

#include "silico/errors.hpp"

namespace silico::sf {
namespace {

bool is_nonpositive_integer(double s) {
  return s <= 0.0 && s == std::floor(s);
}

void reject_pole(double s, const char* name) {
  if (is_nonpositive_integer(s)) {
    throw DomainError(std::string(name) + " has a pole at s = " +
                      std::to_string(s));
  }
}

}  // namespace

double gamma(double s) {
  reject_pole(s, "gamma");
  return boost::math::tgamma(s);
}

double log_gamma(double s) {
  reject_pole(s, "log_gamma");
  return boost::math::lgamma(s);
}

double zeta(double s) {
  if (s == 1.0) throw DomainError("zeta has a pole at s = 1");
  if (s < 0.0 && std::fmod(s, 2.0) == 0.0) return 0.0;
  return boost::math::zeta(s);
}

double bernoulli_2k(int k) {
  return static_cast<double>(bernoulli_2k_long(k));
}

long double bernoulli_2k_long(int k) {
  if (k < 0 || k > 30) throw DomainError("bernoulli_2k supports 0 <= k <= 30");
  return boost::math::bernoulli_b2n<long double>(k);
}

double harmonic(int k) {
  if (k < 0) throw DomainError("harmonic number needs k >= 0");
  double h = 0.0;
  for (int j = k; j >= 1; --j) h += 1.0 / j;
  return h;
}

double binomial(double c, int k) {
  if (k < 0) throw DomainError("binomial needs k >= 0");
  double r = 1.0;
  for (int j = 0; j < k; ++j) r *= (c - j) / (j + 1);
  return r;
}

double gamma_p(double s, double x) {
  if (!(s > 0.0) || !(x >= 0.0)) {
    throw DomainError("gamma_p needs s > 0 and x >= 0");
  }
  return boost::math::gamma_p(s, x);
}

double incomplete_gamma_upper(double s, double x) {
  if (!(s > 0.0) || !(x >= 0.0)) {
    throw DomainError("incomplete_gamma_upper needs s > 0 and x >= 0");
  }
  return boost::math::tgamma(s, x);
}

double h10_closed_form(double x) {
  if (!(x > 0.0)) throw DomainError("h10_closed_form needs x > 0");
  // e^x gamma(x+2, x) x^{-x-1} = exp(x + lgamma(x+2) - (x+1) log x) P(x+2, x)
  const double log_scale =
      x + boost::math::lgamma(x + 2.0) - (x + 1.0) * std::log(x);
  return x - std::exp(log_scale) * boost::math::gamma_p(x + 2.0, x);
}

}  // namespace silico::sf
