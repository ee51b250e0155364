#include "nls/lens.hpp"

#include <cmath>
#include <numbers>

#include "nls/spectral.hpp"

namespace nls {

namespace {

Grid rescaled_grid(const Grid& g, double s) {
  std::array<int, 2> n{g.points(0), g.dim() == 2 ? g.points(1) : 1};
  std::array<double, 2> len{g.length(0) / s, g.dim() == 2 ? g.length(1) / s : 1.0};
  return Grid(g.dim(), n, len);
}

// Effective radius: largest |coordinate| where |a| >= threshold * max|a|.
double effective_radius(const Eigen::ArrayXd& coord, const Eigen::ArrayXd& magnitude,
                        double threshold) {
  const double cut = threshold * magnitude.maxCoeff();
  double radius = 0.0;
  for (Eigen::Index j = 0; j < coord.size(); ++j)
    if (magnitude[j] >= cut) radius = std::max(radius, std::abs(coord[j]));
  return radius;
}

void resolution_guard(const Field& u, double s, double threshold) {
  const Eigen::ArrayXd mag = u.values.abs();
  const SpectralField hat = analyze(u);
  const Eigen::ArrayXd cmag = hat.coeffs.abs();
  for (int a = 0; a < u.grid.dim(); ++a) {
    const double x_eff = effective_radius(u.grid.coordinate(a), mag, threshold);
    const double k_eff = effective_radius(u.grid.wavenumber(a), cmag, threshold);
    const double image_nyquist = u.grid.max_wavenumber(a) * s;
    if (x_eff + s * k_eff > image_nyquist)
      throw std::domain_error(
          "lens: quadratic phase unresolved on the rescaled grid (axis " +
          std::to_string(a) + ": " + std::to_string(x_eff + s * k_eff) + " > " +
          std::to_string(image_nyquist) + "); s too small for this field");
  }
}

// e^{+-i s |y|^2 / 2} on the image grid.
ComplexArray quadratic_phase(const Grid& image, double s, double sign) {
  Eigen::ArrayXd ysq = image.coordinate(0).square();
  for (int a = 1; a < image.dim(); ++a) ysq += image.coordinate(a).square();
  const Eigen::ArrayXd theta = sign * 0.5 * s * ysq;
  ComplexArray phase(theta.size());
  phase.real() = theta.cos();
  phase.imag() = theta.sin();
  return phase;
}

}  // namespace

LensImage lens_forward(const Field& u, double support_threshold) {
  require_finite(u, "lens_forward");
  const double s = u.time;
  if (!(s > 0.0)) throw std::domain_error("lens_forward: requires time > 0");
  resolution_guard(u, s, support_threshold);

  const int n = u.grid.dim();
  const Grid image = rescaled_grid(u.grid, s);
  const Complex amp = std::polar(std::pow(s, 0.5 * n), std::numbers::pi * n / 4.0);
  ComplexArray values =
      (amp * quadratic_phase(image, s, -1.0) * u.values).conjugate();
  LensImage v{Field(image, std::move(values), 1.0 / s), s};

  const double mu = mass(u), mv = mass(v.field);
  if (std::abs(mu - mv) > 1e-12 * std::max(mu, mv))
    throw std::runtime_error("lens_forward: L2 isometry violated");
  return v;
}

Field lens_inverse(const LensImage& v) {
  require_finite(v.field, "lens_inverse");
  const double t = v.image_time();
  if (!(t > 0.0)) throw std::domain_error("lens_inverse: requires image time > 0");
  const double s = 1.0 / t;
  const int n = v.field.grid.dim();
  const Grid source = rescaled_grid(v.field.grid, t);  // spacing * s
  const Complex amp = std::polar(std::pow(s, -0.5 * n), -std::numbers::pi * n / 4.0);
  // u(s, x_j) = (is)^{-n/2} e^{i s |y_j|^2 / 2} conj(v_j) with x_j = s y_j.
  ComplexArray values =
      amp * quadratic_phase(v.field.grid, s, 1.0) * v.field.values.conjugate();
  return Field(source, std::move(values), s);
}

std::pair<BalanceReport, BalanceReport> verify_tran01(const Field& u,
                                                      const LensImage& v,
                                                      double p) {
  const double s = u.time;
  if (std::abs(v.source_time - s) > 1e-12 * (1.0 + std::abs(s)))
    throw std::invalid_argument("verify_tran01: image does not belong to this field");
  BalanceReport gradient_identity{std::sqrt(grad_norm_sq(v.field)),
                                  std::sqrt(weighted_j_norm_sq(u, s))};
  const double scale = std::pow(s, u.grid.dim() * (p - 1.0) / (2.0 * (p + 1.0)));
  BalanceReport lp1_identity{std::pow(lp1_norm_p1(v.field, p), 1.0 / (p + 1.0)),
                             scale * std::pow(lp1_norm_p1(u, p), 1.0 / (p + 1.0))};
  return {gradient_identity, lp1_identity};
}

BalanceReport equivalence_experiment(const Field& phi, const NlsParams& params,
                                     double t_tilde, double t_upper, double dt,
                                     const Observer& u_observer) {
  if (!(0.0 < t_tilde && t_tilde < t_upper))
    throw std::invalid_argument("equivalence_experiment: requires 0 < T_tilde < T");
  params.validate();

  NlsParams u_params = params;
  u_params.beta = 0.0;
  Field u0(phi.grid, phi.values, t_tilde);
  StepSchedule u_schedule{t_tilde, t_upper, dt, std::max<long>(1, std::lround(0.1 / dt))};
  Trajectory u_traj = evolve(u0, u_params, u_schedule, u_observer);

  // March the image of u(T) forward over [1/T, 1/T_tilde]; this keeps the
  // evolution on the finest of the image grids, where the chirped spectrum
  // stays resolved all the way down to source time T_tilde.
  LensImage v_start = lens_forward(u_traj.final_field);
  NlsParams v_params = params;
  v_params.beta = NlsParams::lens_beta(params.dim, params.p);
  const double v_lo = 1.0 / t_upper, v_hi = 1.0 / t_tilde;
  const long v_steps = std::max<long>(1, std::lround((v_hi - v_lo) / dt));
  StepSchedule v_schedule{v_lo, v_hi, (v_hi - v_lo) / v_steps,
                          std::max<long>(1, v_steps / 16)};
  Trajectory v_traj = evolve(v_start.field, v_params, v_schedule);

  LensImage reference = lens_forward(u0);
  Field reference_on_march_grid =
      evaluate_on_grid(reference.field, v_traj.final_field.grid);
  const double mismatch =
      std::sqrt((v_traj.final_field.values - reference_on_march_grid.values)
                    .abs2()
                    .sum() *
                v_traj.final_field.grid.cell_volume());
  return BalanceReport{mismatch, 0.0};
}

}  // namespace nls
