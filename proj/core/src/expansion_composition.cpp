// Large-x expansion of K_{a,b}(x) = sum_i i^{b+1} exp(-sum_{j<=i} log(1 + j^a/x)).
//
// With eps = 1/x, sum_j log(1 + eps j^a) = sum_l (-1)^{l-1}/l eps^l S_{la}(i)
// where S_c(i) = sum_{j<=i} j^c. Splitting off eps i^{a+1}/(a+1) leaves
// exp(-eps i^{a+1}/(a+1)) * exp(Y), and exp(Y) is expanded into monomials
// c eps^B i^e. Each monomial contributes c x^{-B} R(a, b+1+e; 1/((a+1)x)).
// Monomials are kept while they can reach the requested order.

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "silico/asymptotics.hpp"
#include "silico/errors.hpp"
#include "silico/special_functions.hpp"

namespace silico {
namespace {

constexpr double kPowerMatch = 1e-9;

struct Monomial {
  int B = 0;
  double e = 0.0;
  double c = 0.0;
};

void add_monomial(std::vector<Monomial>& out, int B, double e, double c) {
  for (auto& m : out) {
    if (m.B == B && std::fabs(m.e - e) <= kPowerMatch) {
      m.c += c;
      return;
    }
  }
  out.push_back({B, e, c});
}

struct TermAccumulator {
  struct Entry {
    ExpansionTerm term;
    double scale = 0.0;
  };
  std::vector<Entry> entries;

  void add(double c, double power, int log_power) {
    for (auto& en : entries) {
      if (en.term.log_power == log_power &&
          std::fabs(en.term.power - power) <= kPowerMatch) {
        en.term.coefficient += c;
        en.scale += std::fabs(c);
        return;
      }
    }
    entries.push_back({{c, power, log_power}, std::fabs(c)});
  }
};

double factorial(int k) {
  double f = 1.0;
  for (int j = 2; j <= k; ++j) f *= j;
  return f;
}

}  // namespace

AsymptoticExpansion k_expansion_refined(double a, double b, int depth) {
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("a must be finite and > 0");
  if (!std::isfinite(b) || b <= -2.0) throw DomainError("b must be > -2");
  if (depth < 0) throw DomainError("depth must be >= 0");
  if (depth > 2) {
    throw DomainError("k_expansion_refined supports depth <= 2");
  }

  const double L = (b + 2.0) / (a + 1.0);
  const double target = L - depth / (a + 1.0) - 1e-12;
  const bool integer_a = a == std::floor(a);
  if (!integer_a && target <= -1.0) {
    throw DomainError(
        "orders at or below x^{-1} are not supported for non-integer a");
  }
  const auto keep = [&](int B, double e) {
    return (b + 2.0 + e) / (a + 1.0) - B >= target || -B >= target;
  };

  // Y = -sum_l (-1)^{l-1}/l eps^l (S_{la}(i) - [l == 1] i^{a+1}/(a+1)).
  std::vector<Monomial> pieces;
  for (int l = 1;; ++l) {
    const double c = l * a;
    if (l > 1 && !(keep(l, c + 1.0) || keep(l, c))) break;
    if (l > 60) throw NumericError("log(1+z) composition did not terminate");
    const double sg = ((l % 2 == 1) ? 1.0 : -1.0) / l;
    std::vector<std::pair<double, double>> parts;  // (exponent, coefficient)
    if (l >= 2) parts.emplace_back(c + 1.0, 1.0 / (c + 1.0));
    parts.emplace_back(c, 0.5);
    const bool integer_c = c == std::floor(c);
    for (int k = 1; k <= 30; ++k) {
      const double e = c + 1.0 - 2.0 * k;
      if (integer_c ? (2 * k > static_cast<int>(c)) : !keep(l, e)) break;
      parts.emplace_back(e, sf::bernoulli_2k(k) / (c + 1.0) * sf::binomial(c + 1.0, 2 * k));
    }
    if (!integer_c) parts.emplace_back(0.0, sf::zeta(-c));
    for (const auto& [e, co] : parts) {
      if (keep(l, e)) add_monomial(pieces, l, e, -sg * co);
    }
  }

  // exp(Y) = sum_n Y^n / n!, truncated monomial-wise.
  std::vector<Monomial> total{{0, 0.0, 1.0}};
  std::vector<Monomial> current{{0, 0.0, 1.0}};
  for (int n = 1; !current.empty(); ++n) {
    std::vector<Monomial> next;
    for (const auto& m1 : current) {
      for (const auto& m2 : pieces) {
        const int B = m1.B + m2.B;
        const double e = m1.e + m2.e;
        if (keep(B, e)) add_monomial(next, B, e, m1.c * m2.c / n);
      }
    }
    current = std::move(next);
    for (const auto& m : current) add_monomial(total, m.B, m.e, m.c);
  }

  TermAccumulator acc;
  const double log_a1 = std::log(a + 1.0);
  for (const auto& m : total) {
    const double Ap = b + 1.0 + m.e;
    const double s = (Ap + 1.0) / (a + 1.0);
    int k0 = -1;
    const double nearest = std::round(s);
    if (nearest <= 0.0) {
      const double gap = std::fabs(s - nearest);
      if (gap <= 1e-12) {
        k0 = static_cast<int>(-nearest);
      } else if (gap < 1e-6) {
        std::ostringstream os;
        os << "R-expansion term with A=" << Ap << " is within " << gap
           << " of a Gamma pole";
        throw DomainError(os.str());
      }
    }
    if (k0 < 0 && s - m.B >= target) {
      acc.add(m.c * sf::gamma(s) / (a + 1.0) * std::pow(a + 1.0, s), s - m.B, 0);
    }
    for (int kk = 0; -kk - m.B >= target; ++kk) {
      const double sign = (kk % 2 == 0) ? 1.0 : -1.0;
      const auto power = static_cast<double>(-(kk + m.B));
      const double v_scale = std::pow(a + 1.0, -kk);
      if (kk == k0) {
        // log(1/v) = log(a+1) + log x
        const double base = m.c * sign / ((a + 1.0) * factorial(kk)) * v_scale;
        acc.add(base, power, 1);
        acc.add(base * (log_a1 + sf::harmonic(kk) + a * sf::euler_gamma), power, 0);
      } else {
        acc.add(m.c * sign / factorial(kk) * sf::zeta(-Ap - kk * (a + 1.0)) * v_scale,
                power, 0);
      }
    }
  }

  AsymptoticExpansion e;
  e.variable = ExpansionVariable::XToInfinity;
  for (const auto& en : acc.entries) {
    if (std::fabs(en.term.coefficient) > 64 * std::numeric_limits<double>::epsilon() * en.scale) {
      e.terms.push_back(en.term);
    }
  }
  const double integer_below =
      0.0 - std::max(0.0, std::floor(-target) + 1.0);  // largest -n < target
  e.remainder = {std::max(L - (depth + 1.0) / (a + 1.0), integer_below), 0};
  e.sort_terms();
  return e;
}

}  // namespace silico
