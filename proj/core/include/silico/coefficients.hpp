#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace silico {

using Index = std::int64_t;

enum class FamilyKind { PiecewiseConstant, PowerLaw, Tabulated };

std::string to_string(FamilyKind kind);

/// k_i = k for all i; p_i = 1, q_i = 0 up to the cutoff N and p_i = 0,
/// q_i = 1 beyond it. Every cohort then has d_i = 1/k.
struct PiecewiseConstantParams {
  double k = 1.0;
  Index N = 1;
};

/// p_i = i^{-p_exp}, q_i = i^{q_exp}, k_i = i^{-k_exp} for i >= 1, with
/// explicit index-0 values. Then d_i = i^a + i^b and rho_i = i^b where
/// a = q_exp + k_exp and b = k_exp - p_exp.
struct PowerLawParams {
  double p_exp = 0.0;
  double q_exp = 0.0;
  double k_exp = 0.0;
  double p0 = 1.0;
  double q0 = 0.0;
  double k0 = 1.0;

  [[nodiscard]] double a() const { return q_exp + k_exp; }
  [[nodiscard]] double b() const { return k_exp - p_exp; }

  /// Picks nonnegative exponents realising the requested (a, b):
  /// k_exp = max(b, 0), p_exp = k_exp - b, q_exp = a - k_exp.
  /// Requires a >= 0 and b <= a (otherwise q_exp would be negative).
  static PowerLawParams from_ab(double a, double b, double p0 = 1.0,
                                double q0 = 0.0, double k0 = 1.0);
};

/// Beyond the stored entries the last value of every array is repeated.
enum class TailPolicy { ConstantExtension };

/// Finite tables of k, p, q. The polynomial-growth hypothesis on q_i/k_i
/// cannot be checked from finite data; the constant tail satisfies it.
struct TabulatedParams {
  std::vector<double> k;
  std::vector<double> p;
  std::vector<double> q;
  TailPolicy tail = TailPolicy::ConstantExtension;
};

/// Envelope for a nonnegative sequence s: s_i <= s_n * (i/n)^exponent for
/// every i >= n >= start. Drives the certified tail bounds of the series.
struct GrowthEnvelope {
  double exponent = 0.0;
  Index start = 1;
};

/// The model's rate data k_i, p_i, q_i together with derived
/// d_i = (p_i + q_i)/k_i and rho_i = p_i/k_i. Immutable after construction.
class CoefficientFamily {
 public:
  using Params =
      std::variant<PiecewiseConstantParams, PowerLawParams, TabulatedParams>;

  static CoefficientFamily piecewise_constant(PiecewiseConstantParams params);
  static CoefficientFamily power_law(PowerLawParams params);
  static CoefficientFamily tabulated(TabulatedParams params);

  [[nodiscard]] FamilyKind kind() const;
  [[nodiscard]] const Params& params() const { return params_; }

  [[nodiscard]] double k(Index i) const;
  [[nodiscard]] double p(Index i) const;
  [[nodiscard]] double q(Index i) const;
  [[nodiscard]] double d(Index i) const;
  [[nodiscard]] double rho(Index i) const;
  [[nodiscard]] double q_over_k(Index i) const;

  /// inf_{j >= n} d_j, exact for every kind. n >= 0.
  [[nodiscard]] double d_inf_from(Index n) const;

  /// z = inf_i d_i, computed once at construction. May be <= 0 for a
  /// degenerate family; series evaluation rejects such families.
  [[nodiscard]] double z() const { return z_; }

  [[nodiscard]] GrowthEnvelope rho_growth() const;
  [[nodiscard]] GrowthEnvelope q_over_k_growth() const;
  [[nodiscard]] GrowthEnvelope inv_k_growth() const;

  /// Violations of the (non-essential) assumption that k_i and p_i are
  /// non-increasing in i.
  [[nodiscard]] const std::vector<std::string>& warnings() const {
    return warnings_;
  }

 private:
  explicit CoefficientFamily(Params params);
  void check_monotonicity();

  Params params_;
  double z_ = 0.0;
  std::vector<std::string> warnings_;
};

/// inf over integers t >= n of t^a + t^b, for n >= 1 and any real a, b.
double inf_power_pair(double a, double b, Index n);

/// z = inf_i d_i. Exact for the piecewise-constant and power-law kinds;
/// for tables the constant tail makes the minimum over stored entries exact.
/// probe_limit (>= 1) bounds a brute-force scan used to cross-check the
/// analytic value. Throws DomainError when z <= 0.
double infimum_d(const CoefficientFamily& fam, Index probe_limit = 10000);

/// x / (x + z): the uniform geometric ratio bounding every product
/// prod_j x/(x + d_j). Throws DomainError when z <= 0 or x < 0.
double ratio_bound(const CoefficientFamily& fam, double x);

}  // namespace silico
