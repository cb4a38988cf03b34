#include "silico/dynamics.hpp"

#include <algorithm>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <sstream>

#include "silico/compensated_sum.hpp"
#include "silico/errors.hpp"

namespace silico {
namespace {

using Vec = std::vector<double>;

// Flat layout: [x, M_0..M_imax, flux_log, escalator_log].
class TruncatedSystem {
 public:
  TruncatedSystem(const CoefficientFamily& fam, double alpha, double r,
                  Index i_max)
      : alpha_(alpha), r_(r), n_(static_cast<std::size_t>(i_max) + 1) {
    k_.resize(n_);
    p_.resize(n_);
    q_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      k_[i] = fam.k(static_cast<Index>(i));
      p_[i] = fam.p(static_cast<Index>(i));
      q_[i] = fam.q(static_cast<Index>(i));
    }
  }

  void operator()(const Vec& y, Vec& dy, double /*t*/) const {
    const double x = y[0];
    const double* M = y.data() + 1;
    double* dM = dy.data() + 1;
    double uptake = 0.0;
    double release = 0.0;
    double escalator = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      const double inflow = i == 0 ? r_ : k_[i - 1] * x * M[i - 1];
      dM[i] = inflow - (k_[i] * x + p_[i] + q_[i]) * M[i];
      uptake += k_[i] * M[i];
      release += static_cast<double>(i) * q_[i] * M[i];
      escalator += static_cast<double>(i) * p_[i] * M[i];
    }
    dy[0] = alpha_ - x * uptake + release;
    dy[n_ + 1] = static_cast<double>(n_) * k_[n_ - 1] * x * M[n_ - 1];
    dy[n_ + 2] = escalator;
  }

  [[nodiscard]] std::size_t size() const { return n_ + 3; }
  [[nodiscard]] double top_k() const { return k_[n_ - 1]; }

 private:
  double alpha_;
  double r_;
  std::size_t n_;
  Vec k_, p_, q_;
};

void validate(double alpha, double r, const SystemState& s) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be >= 0");
  if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("r must be >= 0");
  if (s.M.size() < 2) throw DomainError("truncated system needs i_max >= 1");
}

Vec pack(const SystemState& s) {
  Vec y;
  y.reserve(s.M.size() + 3);
  y.push_back(s.x);
  y.insert(y.end(), s.M.begin(), s.M.end());
  y.push_back(s.flux_log);
  y.push_back(s.escalator_log);
  return y;
}

SystemState unpack(const Vec& y, double t) {
  SystemState s;
  s.t = t;
  s.x = y[0];
  s.M.assign(y.begin() + 1, y.end() - 2);
  s.flux_log = y[y.size() - 2];
  s.escalator_log = y.back();
  return s;
}

double derivative_norm(const Vec& dy) {
  double norm = 0.0;
  for (std::size_t j = 0; j + 2 < dy.size(); ++j) norm = std::max(norm, std::fabs(dy[j]));
  return norm;
}

double conserved_quantity(const Vec& y, double alpha, double t) {
  CompensatedSum s;
  s += y[0];
  for (std::size_t i = 1; i + 2 < y.size(); ++i) s += static_cast<double>(i - 1) * y[i];
  s += y[y.size() - 2];
  s += y.back();
  s -= alpha * t;
  return s.value();
}

}  // namespace

double SystemState::total_cells() const {
  CompensatedSum s;
  for (double m : M) s += m;
  return s.value();
}

double SystemState::total_load() const {
  CompensatedSum s;
  for (std::size_t i = 1; i < M.size(); ++i) s += static_cast<double>(i) * M[i];
  return s.value();
}

SystemState zero_state(Index i_max) {
  if (i_max < 1) throw DomainError("i_max must be >= 1");
  SystemState s;
  s.M.assign(static_cast<std::size_t>(i_max) + 1, 0.0);
  return s;
}

SystemState rhs(const CoefficientFamily& fam, double alpha, double r,
                const SystemState& state) {
  validate(alpha, r, state);
  const TruncatedSystem sys(fam, alpha, r, state.i_max());
  const Vec y = pack(state);
  Vec dy(y.size());
  sys(y, dy, state.t);
  auto d = unpack(dy, 1.0);
  return d;
}

double rhs_norm(const SystemState& derivative) {
  double norm = std::fabs(derivative.x);
  for (double m : derivative.M) norm = std::max(norm, std::fabs(m));
  return norm;
}

double conservation_residual(const CoefficientFamily& fam, double alpha,
                             double r, const SystemState& state) {
  const auto d = rhs(fam, alpha, r, state);
  CompensatedSum lhs;
  lhs += d.x;
  for (std::size_t i = 1; i < d.M.size(); ++i) lhs += static_cast<double>(i) * d.M[i];
  CompensatedSum expected;
  expected += alpha;
  expected -= d.escalator_log;
  expected -= d.flux_log;
  return std::fabs(lhs.value() - expected.value());
}

TrajectorySummary integrate(const CoefficientFamily& fam, double alpha,
                            double r, const SystemState& initial, double t_end,
                            const IntegrateOptions& opts) {
  validate(alpha, r, initial);
  if (!(t_end > initial.t)) throw DomainError("t_end must exceed the initial time");
  namespace ode = boost::numeric::odeint;

  const TruncatedSystem sys(fam, alpha, r, initial.i_max());
  auto stepper = ode::make_controlled<ode::runge_kutta_dopri5<Vec>>(opts.abs_tol,
                                                                    opts.rel_tol);
  Vec y = pack(initial);
  Vec dy(y.size());
  double t = initial.t;
  double dt = opts.initial_dt;
  const double c0 = conserved_quantity(y, alpha, t);

  TrajectorySummary out;
  const double sample_every =
      (t_end - initial.t) / std::max(1, opts.samples);
  double next_sample = initial.t;
  int quiet_steps = 0;

  auto record = [&](double norm) {
    const auto s = unpack(y, t);
    out.samples.push_back({t, s.x, s.total_cells(), s.total_load(), norm});
  };

  while (t < t_end) {
    if (out.accepted_steps + out.rejected_steps >= opts.max_steps) {
      throw NumericError("integration exceeded the step budget");
    }
    dt = std::min(dt, t_end - t);
    if (dt < 1e-14 * std::max(1.0, std::fabs(t))) {
      std::ostringstream os;
      os << "step size underflow at t=" << t << " (dt=" << dt
         << "); the truncated system looks stiff at this state";
      throw NumericError(os.str());
    }
    if (stepper.try_step(sys, y, t, dt) == ode::fail) {
      ++out.rejected_steps;
      continue;
    }
    ++out.accepted_steps;

    for (std::size_t j = 0; j + 2 < y.size(); ++j) {
      out.min_component = std::min(out.min_component, y[j]);
    }
    if (out.min_component < -1e-12) {
      std::ostringstream os;
      os << "component fell to " << out.min_component << " at t=" << t;
      throw NumericError(os.str());
    }
    const double scale = std::max(1.0, std::fabs(c0) + alpha * t);
    out.max_conservation_drift =
        std::max(out.max_conservation_drift,
                 std::fabs(conserved_quantity(y, alpha, t) - c0) / scale);

    sys(y, dy, t);
    const double norm = derivative_norm(dy);
    out.final_rhs_norm = norm;
    if (t >= next_sample) {
      record(norm);
      next_sample += sample_every;
    }
    quiet_steps = norm <= opts.convergence_threshold ? quiet_steps + 1 : 0;
    if (!out.converged && quiet_steps >= opts.sustain_steps) {
      out.converged = true;
      out.converged_at = t;
      if (opts.stop_on_convergence) break;
    }
  }
  sys(y, dy, t);
  record(derivative_norm(dy));
  out.final_state = unpack(y, t);
  return out;
}

}  // namespace silico
