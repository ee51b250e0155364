#include "nls/integrator.hpp"

#include <cmath>

#include "nls/spectral.hpp"

namespace nls {

void NlsParams::validate() const {
  if (dim != 1 && dim != 2) throw std::invalid_argument("NlsParams: dim must be 1 or 2");
  if (!(p > 1.0)) throw std::invalid_argument("NlsParams: requires p > 1");
  if (!std::isfinite(lambda) || !std::isfinite(beta))
    throw std::invalid_argument("NlsParams: lambda and beta must be finite");
}

long StepSchedule::num_steps() const {
  return std::lround((t_end - t_start) / dt);
}

void StepSchedule::validate(const NlsParams& params) const {
  if (!(t_end > t_start)) throw std::invalid_argument("StepSchedule: t_end <= t_start");
  if (!(dt > 0.0)) throw std::invalid_argument("StepSchedule: dt must be positive");
  if (samples_every < 1)
    throw std::invalid_argument("StepSchedule: samples_every must be >= 1");
  const long n = num_steps();
  if (n < 1 || std::abs(n * dt - (t_end - t_start)) > 1e-9 * (t_end - t_start))
    throw std::invalid_argument("StepSchedule: (t_end - t_start)/dt must be integral");
  if (params.beta != 0.0 && !(t_start > 0.0))
    throw std::invalid_argument("StepSchedule: beta != 0 requires t_start > 0");
}

BlowUpError::BlowUpError(double t, double amplitude)
    : std::runtime_error("numerical blow-up at t = " + std::to_string(t) +
                         " (max|u| = " + std::to_string(amplitude) + ")"),
      time(t),
      amplitude(amplitude) {}

Field nonlinear_phase_step(const Field& f, double dt, const NlsParams& params,
                           double t_mid) {
  require_finite(f, "nonlinear_phase_step");
  if (params.beta != 0.0 && !(t_mid > 0.0))
    throw std::invalid_argument("nonlinear_phase_step: beta != 0 requires t_mid > 0");
  if (params.lambda == 0.0) return f;
  const double coeff = params.beta == 0.0 ? 1.0 : std::pow(t_mid, params.beta);
  const double strength = -params.lambda * coeff * dt;

  Eigen::ArrayXd a2 = f.values.abs2();
  Eigen::ArrayXd theta;
  if (params.p == 3.0)
    theta = strength * a2;
  else if (params.p == 5.0)
    theta = strength * a2.square();
  else if (params.p == 2.0)
    theta = strength * a2.sqrt();
  else
    theta = strength * a2.pow(0.5 * (params.p - 1.0));

  ComplexArray rot(theta.size());
  rot.real() = theta.cos();
  rot.imag() = theta.sin();
  return Field(f.grid, f.values * rot, f.time);
}

namespace detail {

StrangWorkspace::StrangWorkspace(const Grid& grid, double dt_)
    : mask(dealias_mask(grid)), dt(dt_) {
  const Eigen::ArrayXd phase = grid.wavenumber_sq() * (-0.25 * dt_);
  half_kinetic.resize(phase.size());
  half_kinetic.real() = phase.cos();
  half_kinetic.imag() = phase.sin();
}

Field strang_step(const Field& f, double t, double dt, const NlsParams& params,
                  const StrangWorkspace& ws) {
  ComplexArray a = f.values;
  dft_forward(f.grid, a);
  a *= ws.half_kinetic;
  dft_backward(f.grid, a);

  Field mid(f.grid, std::move(a), t);
  mid = nonlinear_phase_step(mid, dt, params, t + 0.5 * dt);

  a = std::move(mid.values);
  dft_forward(f.grid, a);
  a *= ws.mask;
  a *= ws.half_kinetic;
  dft_backward(f.grid, a);
  return Field(f.grid, std::move(a), t + dt);
}

}  // namespace detail

Field strang_step(const Field& f, double t, double dt, const NlsParams& params) {
  require_finite(f, "strang_step");
  params.validate();
  detail::StrangWorkspace ws(f.grid, dt);
  return detail::strang_step(f, t, dt, params, ws);
}

Trajectory evolve(const Field& phi, const NlsParams& params,
                  const StepSchedule& schedule, const Observer& observer,
                  const EvolveOptions& options) {
  params.validate();
  schedule.validate(params);
  require_finite(phi, "evolve");
  if (phi.grid.dim() != params.dim)
    throw std::invalid_argument("evolve: grid and params dimension mismatch");

  Trajectory traj{params, schedule, {}, {}, {}, Field(phi.grid, phi.values, schedule.t_start)};
  const long n_steps = schedule.num_steps();
  traj.records.reserve(static_cast<size_t>(n_steps / schedule.samples_every) + 2);
  traj.lp1_series.reserve(static_cast<size_t>(n_steps) + 1);

  detail::StrangWorkspace ws(phi.grid, schedule.dt);
  Field u(phi.grid, phi.values, schedule.t_start);

  auto sample = [&](const Field& state) {
    ObservableRecord rec = observe(state, params.lambda, params.p);
    traj.records.push_back(rec);
    if (options.store_fields) traj.stored_fields.push_back(state);
    if (observer) observer(rec, state);
  };

  for (long j = 0; j < n_steps; ++j) {
    const double t_j = schedule.t_start + j * schedule.dt;
    u.time = t_j;
    if (j % schedule.samples_every == 0) sample(u);
    traj.lp1_series.emplace_back(t_j, lp1_norm_p1(u, params.p));

    u = detail::strang_step(u, t_j, schedule.dt, params, ws);

    const double peak = u.values.abs2().maxCoeff();
    if (!std::isfinite(peak) || peak > options.blowup_ceiling * options.blowup_ceiling)
      throw BlowUpError(t_j + schedule.dt, std::sqrt(peak));
  }
  u.time = schedule.t_end;
  sample(u);
  traj.lp1_series.emplace_back(schedule.t_end, lp1_norm_p1(u, params.p));
  traj.final_field = std::move(u);
  return traj;
}

}  // namespace nls
