#include "silico/equilibrium_series.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "silico/compensated_sum.hpp"
#include "silico/errors.hpp"

namespace silico {
namespace {

void require_convergent(const CoefficientFamily& fam) {
  if (!(fam.z() > 0.0)) {
    throw DomainError("inf d_i must be > 0 for the equilibrium series to converge");
  }
}

void require_x(double x) {
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw DomainError("quartz level x must be finite and >= 0");
  }
}

void require_r(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw DomainError("recruitment rate r must be finite and > 0");
  }
}

ProductSeries family_series(const CoefficientFamily& fam,
                            std::function<double(Index)> weight,
                            GrowthEnvelope growth) {
  return ProductSeries{
      std::move(weight),
      [&fam](Index j) { return fam.d(j); },
      [&fam](Index n) { return fam.d_inf_from(n); },
      growth,
  };
}

// The series in i * s_i inherit the envelope of s with one extra power.
GrowthEnvelope with_index_factor(GrowthEnvelope g) {
  return {g.exponent + 1.0, g.start};
}

SeriesOptions scaled(SeriesOptions opts, double factor) {
  opts.tol /= factor;
  return opts;
}

}  // namespace

EquilibriumProfile cohort_profile(const CoefficientFamily& fam, double x,
                                  double r, Index n) {
  require_convergent(fam);
  require_x(x);
  require_r(r);
  if (n < 0) throw DomainError("number of cohorts must be >= 0");

  EquilibriumProfile profile;
  profile.x = x;
  profile.r = r;
  profile.M.assign(static_cast<std::size_t>(n) + 1, 0.0);
  profile.M[0] = r / (fam.k(0) * x + fam.p(0) + fam.q(0));

  Index first_omitted = n + 1;
  for (Index i = 1; i <= n; ++i) {
    const double next = profile.M[static_cast<std::size_t>(i - 1)] *
                        (fam.k(i - 1) * x) /
                        (fam.k(i) * x + fam.p(i) + fam.q(i));
    if (next < std::numeric_limits<double>::min()) {
      first_omitted = i;
      break;
    }
    profile.M[static_cast<std::size_t>(i)] = next;
  }

  // M_i = r/(x + d_0) * prod_{j<=i} x/(x+d_j) / k_i.
  const double prefactor = r / (x + fam.d(0));
  GrowthEnvelope growth = fam.inv_k_growth();
  growth.start = std::max(growth.start, first_omitted);
  const auto omitted = sum_product_series(
      family_series(
          fam,
          [&fam, first_omitted](Index i) {
            return i >= first_omitted ? 1.0 / fam.k(i) : 0.0;
          },
          growth),
      x, SeriesOptions{1e-17 / fam.k(0), 1'000'000, false});
  profile.tail_mass_bound = prefactor * (omitted.value + omitted.tail_bound);
  return profile;
}

BoundedValue uptake_sum(const CoefficientFamily& fam, double x, double r,
                        const SeriesOptions& opts) {
  require_convergent(fam);
  require_x(x);
  require_r(r);
  const double prefactor = r / (x + fam.d(0));
  const auto s = sum_product_series(
      family_series(fam, [](Index) { return 1.0; }, GrowthEnvelope{0.0, 1}), x,
      scaled(opts, prefactor));
  return {prefactor * (1.0 + s.value), prefactor * s.tail_bound,
          s.terms_used + 1};
}

BoundedValue release_sum(const CoefficientFamily& fam, double x, double r,
                         const SeriesOptions& opts) {
  require_convergent(fam);
  require_x(x);
  require_r(r);
  const double prefactor = r / (x + fam.d(0));
  const auto s = sum_product_series(
      family_series(
          fam,
          [&fam](Index i) { return static_cast<double>(i) * fam.q_over_k(i); },
          with_index_factor(fam.q_over_k_growth())),
      x, scaled(opts, prefactor));
  return {prefactor * s.value, prefactor * s.tail_bound, s.terms_used + 1};
}

BoundedValue clearance_series(const CoefficientFamily& fam, double x,
                              const SeriesOptions& opts) {
  require_convergent(fam);
  require_x(x);
  return sum_product_series(
      family_series(
          fam, [&fam](Index i) { return static_cast<double>(i) * fam.rho(i); },
          with_index_factor(fam.rho_growth())),
      x, opts);
}

BoundedValue equilibrium_function(const CoefficientFamily& fam, double x,
                                  const SeriesOptions& opts) {
  require_convergent(fam);
  require_x(x);
  const double shift = x + fam.d(0);
  const auto h = clearance_series(fam, x, scaled(opts, 1.0 / shift));
  const BoundedValue f{h.value / shift, h.tail_bound / shift, h.terms_used};
  if (!opts.cross_check || x == 0.0) return f;

  // alpha = x sum k_i M_i - sum i q_i M_i at equilibrium, with r = 1.
  const auto uptake = uptake_sum(fam, x, 1.0, scaled(opts, x));
  const auto release = release_sum(fam, x, 1.0, opts);
  const double raw = x * uptake.value - release.value;
  const double scale = x * uptake.value + release.value + std::fabs(f.value);
  const double allowance = f.tail_bound + x * uptake.tail_bound +
                           release.tail_bound + 1e-10 * scale;
  if (std::fabs(raw - f.value) > allowance) {
    std::ostringstream os;
    os.precision(17);
    os << "equilibrium function cross-check failed at x=" << x
       << ": H/(x+d0)=" << f.value << " vs x*uptake-release=" << raw;
    throw NumericError(os.str());
  }
  return f;
}

IdentityAudit audit_unit_identity(const CoefficientFamily& fam, double x,
                                  Index n_terms) {
  require_convergent(fam);
  require_x(x);
  if (n_terms < 1) throw DomainError("audit needs at least one term");
  if (x == 0.0) return {};

  CompensatedSum sum;
  double product = 1.0;
  for (Index i = 1; i <= n_terms; ++i) {
    const double d = fam.d(i);
    product *= x / (x + d);
    sum += (static_cast<double>(i) * d - x) * product;
  }
  IdentityAudit audit;
  audit.partial_sum = sum.value() / x;
  audit.closed_form = static_cast<double>(n_terms + 1) * product;
  audit.residual = std::fabs(1.0 - audit.partial_sum - audit.closed_form);
  return audit;
}

IdentityAudit audit_x_identity(const CoefficientFamily& fam, double x,
                               Index n_terms) {
  require_convergent(fam);
  require_x(x);
  if (n_terms < 1) throw DomainError("audit needs at least one term");
  if (x == 0.0) return {};

  CompensatedSum sum;
  double product = 1.0;
  for (Index i = 1; i <= n_terms; ++i) {
    const double d = fam.d(i);
    product *= x / (x + d);
    sum += d * product;
  }
  IdentityAudit audit;
  audit.partial_sum = sum.value();
  audit.closed_form = x * product;
  audit.residual = std::fabs(x - audit.partial_sum - audit.closed_form);
  return audit;
}

}  // namespace silico
