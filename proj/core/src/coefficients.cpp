#include "silico/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "silico/errors.hpp"

namespace silico {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require(bool condition, const std::string& message) {
  if (!condition) throw DomainError(message);
}

void require_index(Index i) { require(i >= 0, "cohort index must be >= 0"); }

double power_law_d(const PowerLawParams& pl, Index i) {
  if (i == 0) return (pl.p0 + pl.q0) / pl.k0;
  const double t = static_cast<double>(i);
  return std::pow(t, pl.a()) + std::pow(t, pl.b());
}

double power_law_d_inf_from(const PowerLawParams& pl, Index n) {
  if (n == 0) {
    return std::min(power_law_d(pl, 0), inf_power_pair(pl.a(), pl.b(), 1));
  }
  return inf_power_pair(pl.a(), pl.b(), n);
}

const std::vector<double>& table_or_throw(const std::vector<double>& v) {
  if (v.empty()) throw DomainError("tabulated family has an empty array");
  return v;
}

double table_at(const std::vector<double>& v, Index i) {
  const auto& t = table_or_throw(v);
  const auto idx = static_cast<std::size_t>(i);
  return idx < t.size() ? t[idx] : t.back();
}

}  // namespace

double inf_power_pair(double a, double b, Index n) {
  require(n >= 1, "inf_power_pair needs n >= 1");
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  auto f = [a, b](double t) { return std::pow(t, a) + std::pow(t, b); };
  if (lo >= 0.0) return f(static_cast<double>(n));  // nondecreasing
  if (hi <= 0.0) {
    // nonincreasing towards the count of zero exponents
    return static_cast<double>(a == 0.0) + static_cast<double>(b == 0.0);
  }
  // t^hi + t^lo with hi > 0 > lo is unimodal, minimiser t* = (-lo/hi)^{1/(hi-lo)}.
  const double t_star = std::pow(-lo / hi, 1.0 / (hi - lo));
  if (static_cast<double>(n) >= t_star) return f(static_cast<double>(n));
  const auto below = static_cast<Index>(std::floor(t_star));
  return std::min(f(static_cast<double>(std::max(n, below))),
                  f(static_cast<double>(below + 1)));
}

std::string to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::PiecewiseConstant:
      return "piecewise_constant";
    case FamilyKind::PowerLaw:
      return "power_law";
    case FamilyKind::Tabulated:
      return "tabulated";
  }
  return "unknown";
}

PowerLawParams PowerLawParams::from_ab(double a, double b, double p0, double q0,
                                       double k0) {
  require(std::isfinite(a) && std::isfinite(b), "exponents must be finite");
  require(a >= 0.0, "power law requires a >= 0");
  require(b <= a,
          "power law with nonnegative p, q, k exponents requires b <= a");
  PowerLawParams pl;
  pl.k_exp = std::max(b, 0.0);
  pl.p_exp = pl.k_exp - b;
  pl.q_exp = a - pl.k_exp;
  pl.p0 = p0;
  pl.q0 = q0;
  pl.k0 = k0;
  return pl;
}

CoefficientFamily::CoefficientFamily(Params params)
    : params_(std::move(params)) {
  std::visit(
      Overloaded{
          [](const PiecewiseConstantParams& pc) {
            require(std::isfinite(pc.k) && pc.k > 0.0,
                    "piecewise-constant family requires k > 0");
            require(pc.N >= 0, "piecewise-constant family requires N >= 0");
          },
          [](const PowerLawParams& pl) {
            require(pl.p_exp >= 0.0 && pl.q_exp >= 0.0 && pl.k_exp >= 0.0,
                    "power-law exponents p, q, k must be nonnegative");
            require(pl.k0 > 0.0, "power-law family requires k0 > 0");
            require(pl.p0 >= 0.0 && pl.q0 >= 0.0,
                    "power-law family requires p0, q0 >= 0");
          },
          [](const TabulatedParams& tb) {
            require(!tb.k.empty(), "tabulated family needs at least one entry");
            require(tb.k.size() == tb.p.size() && tb.k.size() == tb.q.size(),
                    "tabulated arrays k, p, q must have equal length");
            for (std::size_t i = 0; i < tb.k.size(); ++i) {
              require(std::isfinite(tb.k[i]) && tb.k[i] > 0.0,
                      "tabulated k_i must be > 0");
              require(tb.p[i] >= 0.0 && tb.q[i] >= 0.0,
                      "tabulated p_i, q_i must be >= 0");
            }
          },
      },
      params_);
  z_ = d_inf_from(0);
  check_monotonicity();
}

CoefficientFamily CoefficientFamily::piecewise_constant(
    PiecewiseConstantParams params) {
  return CoefficientFamily(params);
}

CoefficientFamily CoefficientFamily::power_law(PowerLawParams params) {
  return CoefficientFamily(params);
}

CoefficientFamily CoefficientFamily::tabulated(TabulatedParams params) {
  return CoefficientFamily(std::move(params));
}

FamilyKind CoefficientFamily::kind() const {
  return std::visit(
      Overloaded{
          [](const PiecewiseConstantParams&) {
            return FamilyKind::PiecewiseConstant;
          },
          [](const PowerLawParams&) { return FamilyKind::PowerLaw; },
          [](const TabulatedParams&) { return FamilyKind::Tabulated; },
      },
      params_);
}

double CoefficientFamily::k(Index i) const {
  require_index(i);
  return std::visit(
      Overloaded{
          [](const PiecewiseConstantParams& pc) { return pc.k; },
          [i](const PowerLawParams& pl) {
            return i == 0 ? pl.k0
                          : std::pow(static_cast<double>(i), -pl.k_exp);
          },
          [i](const TabulatedParams& tb) { return table_at(tb.k, i); },
      },
      params_);
}

double CoefficientFamily::p(Index i) const {
  require_index(i);
  return std::visit(
      Overloaded{
          [i](const PiecewiseConstantParams& pc) {
            return i <= pc.N ? 1.0 : 0.0;
          },
          [i](const PowerLawParams& pl) {
            return i == 0 ? pl.p0
                          : std::pow(static_cast<double>(i), -pl.p_exp);
          },
          [i](const TabulatedParams& tb) { return table_at(tb.p, i); },
      },
      params_);
}

double CoefficientFamily::q(Index i) const {
  require_index(i);
  return std::visit(
      Overloaded{
          [i](const PiecewiseConstantParams& pc) {
            return i <= pc.N ? 0.0 : 1.0;
          },
          [i](const PowerLawParams& pl) {
            return i == 0 ? pl.q0 : std::pow(static_cast<double>(i), pl.q_exp);
          },
          [i](const TabulatedParams& tb) { return table_at(tb.q, i); },
      },
      params_);
}

double CoefficientFamily::d(Index i) const {
  require_index(i);
  return std::visit(
      Overloaded{
          [](const PiecewiseConstantParams& pc) { return 1.0 / pc.k; },
          [i](const PowerLawParams& pl) { return power_law_d(pl, i); },
          [i](const TabulatedParams& tb) {
            return (table_at(tb.p, i) + table_at(tb.q, i)) / table_at(tb.k, i);
          },
      },
      params_);
}

double CoefficientFamily::rho(Index i) const {
  require_index(i);
  if (const auto* pl = std::get_if<PowerLawParams>(&params_); pl && i > 0) {
    return std::pow(static_cast<double>(i), pl->b());
  }
  return p(i) / k(i);
}

double CoefficientFamily::q_over_k(Index i) const {
  require_index(i);
  if (const auto* pl = std::get_if<PowerLawParams>(&params_); pl && i > 0) {
    return std::pow(static_cast<double>(i), pl->a());
  }
  return q(i) / k(i);
}

double CoefficientFamily::d_inf_from(Index n) const {
  require_index(n);
  return std::visit(
      Overloaded{
          [](const PiecewiseConstantParams& pc) { return 1.0 / pc.k; },
          [n](const PowerLawParams& pl) { return power_law_d_inf_from(pl, n); },
          [this, n](const TabulatedParams& tb) {
            const auto size = static_cast<Index>(tb.k.size());
            double best = std::numeric_limits<double>::infinity();
            for (Index j = std::min(n, size - 1); j < size; ++j) {
              best = std::min(best, d(j));
            }
            return best;
          },
      },
      params_);
}

GrowthEnvelope CoefficientFamily::rho_growth() const {
  return std::visit(
      Overloaded{
          // rho_i = 1/k up to N, then 0: non-increasing.
          [](const PiecewiseConstantParams&) { return GrowthEnvelope{0.0, 1}; },
          [](const PowerLawParams& pl) { return GrowthEnvelope{pl.b(), 1}; },
          [](const TabulatedParams& tb) {
            return GrowthEnvelope{
                0.0, std::max<Index>(1, static_cast<Index>(tb.k.size()) - 1)};
          },
      },
      params_);
}

GrowthEnvelope CoefficientFamily::q_over_k_growth() const {
  return std::visit(
      Overloaded{
          [](const PiecewiseConstantParams& pc) {
            return GrowthEnvelope{0.0, pc.N + 1};
          },
          [](const PowerLawParams& pl) { return GrowthEnvelope{pl.a(), 1}; },
          [](const TabulatedParams& tb) {
            return GrowthEnvelope{
                0.0, std::max<Index>(1, static_cast<Index>(tb.k.size()) - 1)};
          },
      },
      params_);
}

GrowthEnvelope CoefficientFamily::inv_k_growth() const {
  return std::visit(
      Overloaded{
          [](const PiecewiseConstantParams&) { return GrowthEnvelope{0.0, 1}; },
          [](const PowerLawParams& pl) { return GrowthEnvelope{pl.k_exp, 1}; },
          [](const TabulatedParams& tb) {
            return GrowthEnvelope{
                0.0, std::max<Index>(1, static_cast<Index>(tb.k.size()) - 1)};
          },
      },
      params_);
}

void CoefficientFamily::check_monotonicity() {
  auto report = [this](const char* name, Index i, double prev, double next) {
    std::ostringstream os;
    os << name << " increases from index " << i - 1 << " (" << prev
       << ") to " << i << " (" << next << ")";
    warnings_.push_back(os.str());
  };
  Index horizon = 2;
  if (const auto* tb = std::get_if<TabulatedParams>(&params_)) {
    horizon = static_cast<Index>(tb->k.size());
  }
  for (Index i = 1; i < horizon; ++i) {
    if (k(i) > k(i - 1)) report("k", i, k(i - 1), k(i));
    if (p(i) > p(i - 1)) report("p", i, p(i - 1), p(i));
  }
}

double infimum_d(const CoefficientFamily& fam, Index probe_limit) {
  require(probe_limit >= 1, "probe_limit must be >= 1");
  const double z = fam.z();
  for (Index i = 0; i <= probe_limit; ++i) {
    if (fam.d(i) < z * (1.0 - 4.0 * std::numeric_limits<double>::epsilon())) {
      throw std::logic_error("analytic infimum of d exceeds a probed d_i");
    }
  }
  if (!(z > 0.0)) {
    throw DomainError("inf d_i must be > 0 for the equilibrium series to converge");
  }
  return z;
}

double ratio_bound(const CoefficientFamily& fam, double x) {
  require(x >= 0.0 && std::isfinite(x), "x must be finite and >= 0");
  const double z = fam.z();
  require(z > 0.0, "inf d_i must be > 0 for the equilibrium series to converge");
  return x / (x + z);
}

}  // namespace silico
