#pragma once

#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "nls/field.hpp"
#include "nls/observables.hpp"

namespace nls {

/// Physical description of i u_t + (1/2) Lap u = lambda t^beta |u|^{p-1} u.
/// beta = 0 is the autonomous equation; beta = (n(p-1)-4)/2 is the
/// lens-transformed one, which requires t > 0 throughout the evolution.
struct NlsParams {
  int dim = 1;
  double p = 3.0;
  double lambda = 1.0;
  double beta = 0.0;

  void validate() const;
  /// Coefficient exponent of the lens-transformed equation.
  static double lens_beta(int n, double p) { return 0.5 * (n * (p - 1.0) - 4.0); }
};

/// Time stepping plan; (t_end - t_start)/dt must be a whole number of steps.
struct StepSchedule {
  double t_start = 0.0;
  double t_end = 1.0;
  double dt = 1e-3;
  long samples_every = 1;

  long num_steps() const;
  void validate(const NlsParams& params) const;
};

struct BlowUpError : std::runtime_error {
  BlowUpError(double t, double amplitude);
  double time;
  double amplitude;
};

using Observer = std::function<void(const ObservableRecord&, const Field&)>;

struct EvolveOptions {
  double blowup_ceiling = 1e6;
  bool store_fields = false;  // keep a Field copy at every sampled time
};

/// Result of evolve: sampled observables, the per-step ||u||_{p+1}^{p+1}
/// series backing the balance quadratures, and the final state.
struct Trajectory {
  NlsParams params;
  StepSchedule schedule;
  std::vector<ObservableRecord> records;
  std::vector<std::pair<double, double>> lp1_series;
  std::vector<Field> stored_fields;
  Field final_field;
};

/// Pointwise gauge-invariant phase rotation
/// u -> e^{-i lambda c(t_mid) |u|^{p-1} dt} u with c(t) = t^beta.
/// Leaves |u| unchanged; whence the exact mass conservation of the split step.
Field nonlinear_phase_step(const Field& f, double dt, const NlsParams& params,
                           double t_mid);

/// Symmetric composition: half free propagation, full nonlinear phase at the
/// interval midpoint, dealiasing, half free propagation. Second order in dt;
/// dt may be negative (the step is time-reversible).
Field strang_step(const Field& f, double t, double dt, const NlsParams& params);

/// Repeated strang_step over the schedule. Observables are recorded every
/// samples_every steps (always including both endpoints); the observer, when
/// given, is invoked at those times. Aborts with BlowUpError when max|u|
/// exceeds the ceiling or turns non-finite.
Trajectory evolve(const Field& phi, const NlsParams& params,
                  const StepSchedule& schedule, const Observer& observer = {},
                  const EvolveOptions& options = {});

namespace detail {
/// Precomputed diagonal factors reused across steps of one run.
struct StrangWorkspace {
  StrangWorkspace(const Grid& grid, double dt);
  ComplexArray half_kinetic;  // e^{-i |k|^2 dt/4}
  Eigen::ArrayXd mask;        // 2/3-rule
  double dt;
};
Field strang_step(const Field& f, double t, double dt, const NlsParams& params,
                  const StrangWorkspace& ws);
}  // namespace detail

}  // namespace nls
