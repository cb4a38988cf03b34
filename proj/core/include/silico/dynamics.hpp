#pragma once

#include <cstddef>
#include <vector>

#include "silico/coefficients.hpp"

namespace silico {

/// Truncated system with cohorts 0..i_max (i_max = M.size() - 1). flux_log
/// accumulates the quartz carried out of the top cohort by cells that
/// phagocytose once more; escalator_log accumulates sum_i i p_i M_i.
struct SystemState {
  double t = 0.0;
  double x = 0.0;
  std::vector<double> M;
  double flux_log = 0.0;
  double escalator_log = 0.0;

  [[nodiscard]] Index i_max() const { return static_cast<Index>(M.size()) - 1; }
  [[nodiscard]] double total_cells() const;
  [[nodiscard]] double total_load() const;  ///< sum_i i M_i
};

SystemState zero_state(Index i_max);

/// d/dt of (x, M_0..M_imax, flux_log, escalator_log):
///   dM_0/dt = r - (k_0 x + p_0 + q_0) M_0
///   dM_i/dt = k_{i-1} x M_{i-1} - (k_i x + p_i + q_i) M_i
///   dx/dt   = alpha - x sum_i k_i M_i + sum_i i q_i M_i
/// Cells leaving the top cohort are absorbed, carrying i_max + 1 particles.
SystemState rhs(const CoefficientFamily& fam, double alpha, double r,
                const SystemState& state);

/// max(|dx/dt|, |dM_i/dt|).
double rhs_norm(const SystemState& derivative);

/// |d/dt(x + sum_i i M_i) - (alpha - sum_i i p_i M_i - (i_max+1) k_{i_max} x M_{i_max})|
/// evaluated from rhs(); zero up to rounding.
double conservation_residual(const CoefficientFamily& fam, double alpha,
                             double r, const SystemState& state);

struct IntegrateOptions {
  double abs_tol = 1e-14;
  double rel_tol = 1e-10;
  double initial_dt = 1e-3;
  double convergence_threshold = 1e-10;
  int sustain_steps = 100;
  bool stop_on_convergence = true;
  std::size_t max_steps = 20'000'000;
  int samples = 400;
};

struct TrajectorySample {
  double t = 0.0;
  double x = 0.0;
  double total_cells = 0.0;
  double total_load = 0.0;
  double rhs_norm = 0.0;
};

struct TrajectorySummary {
  SystemState final_state;
  bool converged = false;
  double converged_at = 0.0;
  double final_rhs_norm = 0.0;
  /// Most negative component seen (0 if none).
  double min_component = 0.0;
  /// max |x + sum i M_i + flux_log + escalator_log - alpha t - initial|.
  double max_conservation_drift = 0.0;
  std::size_t accepted_steps = 0;
  std::size_t rejected_steps = 0;
  std::vector<TrajectorySample> samples;
};

/// Adaptive Dormand-Prince integration up to t_end. Throws NumericError on
/// step-size underflow (stiffness diagnostic) or on components below -1e-12.
TrajectorySummary integrate(const CoefficientFamily& fam, double alpha,
                            double r, const SystemState& initial, double t_end,
                            const IntegrateOptions& opts = {});

}  // namespace silico
