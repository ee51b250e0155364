#include "nls/observables.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include "nls/integrator.hpp"
#include "nls/spectral.hpp"

namespace nls {

namespace {

// |u|^e computed as (|u|^2)^(e/2); integer e short-circuits avoid pow.
Eigen::ArrayXd abs_power(const ComplexArray& values, double e) {
  Eigen::ArrayXd a2 = values.abs2();
  if (e == 2.0) return a2;
  if (e == 4.0) return a2.square();
  if (e == 6.0) return a2.cube();
  if (e == 1.0) return a2.sqrt();
  return a2.pow(0.5 * e);
}

double checked(double value, const char* context) {
  if (!std::isfinite(value))
    throw std::runtime_error(std::string(context) + ": non-finite result");
  return value;
}

}  // namespace

double mass(const Field& f) {
  require_finite(f, "mass");
  return f.values.abs2().sum() * f.grid.cell_volume();
}

double lp1_norm_p1(const Field& f, double p) {
  require_finite(f, "lp1_norm_p1");
  if (!(p > 1.0)) throw std::invalid_argument("lp1_norm_p1: requires p > 1");
  return abs_power(f.values, p + 1.0).sum() * f.grid.cell_volume();
}

double lr_norm(const Field& f, double r) {
  require_finite(f, "lr_norm");
  if (std::isinf(r)) return f.values.abs().maxCoeff();
  if (!(r >= 1.0)) throw std::invalid_argument("lr_norm: requires r >= 1");
  return std::pow(abs_power(f.values, r).sum() * f.grid.cell_volume(), 1.0 / r);
}

double variance(const Field& f) {
  require_finite(f, "variance");
  double out = 0.0;
  for (int a = 0; a < f.grid.dim(); ++a)
    out += (f.grid.coordinate(a).square() * f.values.abs2()).sum();
  return out * f.grid.cell_volume();
}

double boundary_leak(const Field& f) {
  require_finite(f, "boundary_leak");
  const int nx = f.grid.points(0);
  if (f.grid.dim() == 1)
    return std::max(std::abs(f.values[0]), std::abs(f.values[nx - 1]));
  const int ny = f.grid.points(1);
  double leak = 0.0;
  for (int iy = 0; iy < ny; ++iy) {
    leak = std::max(leak, std::abs(f.values[iy]));
    leak = std::max(leak, std::abs(f.values[static_cast<Eigen::Index>(nx - 1) * ny + iy]));
  }
  for (int ix = 0; ix < nx; ++ix) {
    leak = std::max(leak, std::abs(f.values[static_cast<Eigen::Index>(ix) * ny]));
    leak = std::max(leak, std::abs(f.values[static_cast<Eigen::Index>(ix) * ny + ny - 1]));
  }
  return leak;
}

namespace {

// Momentum component from the field and one gradient component:
// Im sum u conj(du) vol. The real part of the pairing is a pure total
// derivative and must sit at roundoff; asserted before being discarded.
double momentum_component(const Field& f, const Field& grad_a, double vol) {
  const Complex pairing = (f.values * grad_a.values.conjugate()).sum() * vol;
  const double scale = std::max(1.0, std::abs(pairing.imag()));
  if (std::abs(pairing.real()) > 1e-12 * scale)
    throw std::runtime_error("momentum: non-vanishing real residue");
  return pairing.imag();
}

}  // namespace

Eigen::VectorXd momentum(const Field& f) {
  require_finite(f, "momentum");
  const auto grads = gradient(f);
  const double vol = f.grid.cell_volume();
  Eigen::VectorXd out(f.grid.dim());
  for (int a = 0; a < f.grid.dim(); ++a)
    out[a] = momentum_component(f, grads[a], vol);
  return out;
}

double grad_norm_sq(const Field& f) {
  require_finite(f, "grad_norm_sq");
  const auto grads = gradient(f);
  double out = 0.0;
  for (const auto& g : grads) out += g.values.abs2().sum();
  return out * f.grid.cell_volume();
}

double energy(const Field& f, double lambda, double p) {
  return 0.5 * grad_norm_sq(f) + (2.0 * lambda / (p + 1.0)) * lp1_norm_p1(f, p);
}

double weighted_j_norm_sq(const Field& f, double t) {
  require_finite(f, "weighted_j_norm_sq");
  const auto grads = gradient(f);
  double out = 0.0;
  for (int a = 0; a < f.grid.dim(); ++a) {
    const Eigen::ArrayXd x = f.grid.coordinate(a);
    out += (x * f.values + Complex(0.0, t) * grads[a].values).abs2().sum();
  }
  return out * f.grid.cell_volume();
}

ObservableRecord observe(const Field& f, double lambda, double p) {
  require_finite(f, "observe");
  ObservableRecord rec;
  rec.time = f.time;
  rec.dim = f.grid.dim();
  const double vol = f.grid.cell_volume();
  rec.mass = checked(f.values.abs2().sum() * vol, "observe.mass");
  rec.lp1_norm_p1 = abs_power(f.values, p + 1.0).sum() * vol;
  rec.boundary_leak = boundary_leak(f);

  const auto grads = gradient(f);
  double gns = 0.0, jsq = 0.0, var = 0.0;
  for (int a = 0; a < f.grid.dim(); ++a) {
    rec.momentum[a] = momentum_component(f, grads[a], vol);
    gns += grads[a].values.abs2().sum();
    const Eigen::ArrayXd x = f.grid.coordinate(a);
    var += (x.square() * f.values.abs2()).sum();
    jsq += (x * f.values + Complex(0.0, f.time) * grads[a].values).abs2().sum();
  }
  rec.grad_norm_sq = gns * vol;
  rec.variance = var * vol;
  rec.weighted_J_sq = jsq * vol;
  rec.energy = 0.5 * rec.grad_norm_sq + (2.0 * lambda / (p + 1.0)) * rec.lp1_norm_p1;
  checked(rec.energy, "observe.energy");
  return rec;
}

double source_integral(std::span<const std::pair<double, double>> series,
                       double weight_exponent) {
  if (series.size() < 2)
    throw std::invalid_argument("source_integral: needs at least two samples");
  auto weighted = [&](const std::pair<double, double>& s) {
    if (weight_exponent == 0.0) return s.second;
    if (weight_exponent == 1.0) return s.first * s.second;
    if (s.first < 0.0 || (s.first == 0.0 && weight_exponent < 0.0))
      throw std::invalid_argument("source_integral: negative weight needs t > 0");
    return std::pow(s.first, weight_exponent) * s.second;
  };
  double acc = 0.0;
  double prev_t = series[0].first, prev_f = weighted(series[0]);
  for (size_t i = 1; i < series.size(); ++i) {
    const double t = series[i].first;
    if (!(t > prev_t))
      throw std::invalid_argument("source_integral: times must strictly increase");
    const double fi = weighted(series[i]);
    acc += 0.5 * (prev_f + fi) * (t - prev_t);
    prev_t = t;
    prev_f = fi;
  }
  return checked(acc, "source_integral");
}

namespace {

const ObservableRecord& record_at(const Trajectory& traj, double t) {
  const double tol = 1e-9 * (1.0 + std::abs(t));
  for (const auto& rec : traj.records)
    if (std::abs(rec.time - t) <= tol) return rec;
  throw std::invalid_argument("balance: time not among sampled records");
}

std::span<const std::pair<double, double>> series_up_to(const Trajectory& traj,
                                                        double t) {
  const double tol = 1e-9 * (1.0 + std::abs(t));
  size_t count = 0;
  while (count < traj.lp1_series.size() && traj.lp1_series[count].first <= t + tol)
    ++count;
  if (count < 2) throw std::invalid_argument("balance: series too short");
  return {traj.lp1_series.data(), count};
}

}  // namespace

BalanceReport pc_balance(const Trajectory& traj, double t) {
  const auto& params = traj.params;
  if (params.beta != 0.0)
    throw std::invalid_argument("pc_balance: requires a beta = 0 trajectory");
  if (traj.records.empty() || std::abs(traj.records.front().time) > 1e-12)
    throw std::invalid_argument("pc_balance: trajectory must start at t = 0");
  const auto& rec = record_at(traj, t);
  const double factor = 2.0 * params.lambda / (params.p + 1.0);
  const double lhs = 0.5 * rec.weighted_J_sq + t * t * factor * rec.lp1_norm_p1;
  const double coeff =
      params.lambda * (params.dim * (params.p - 1.0) - 4.0) / (params.p + 1.0);
  const double rhs = 0.5 * traj.records.front().variance -
                     coeff * source_integral(series_up_to(traj, t), 1.0);
  return BalanceReport{lhs, rhs};
}

BalanceReport e1_balance(const Trajectory& traj, double t) {
  const auto& params = traj.params;
  const double beta = params.beta;
  auto e1 = [&](const ObservableRecord& rec) {
    const double coeff = beta == 0.0 ? 1.0 : std::pow(rec.time, beta);
    return 0.5 * rec.grad_norm_sq +
           coeff * (2.0 * params.lambda / (params.p + 1.0)) * rec.lp1_norm_p1;
  };
  const auto& rec = record_at(traj, t);
  const double lhs = e1(rec);
  double rhs = e1(traj.records.front());
  if (beta != 0.0) {
    const double coeff = 2.0 * beta * params.lambda / (params.p + 1.0);
    rhs += coeff * source_integral(series_up_to(traj, t), beta - 1.0);
  }
  return BalanceReport{lhs, rhs};
}

double decay_fit(std::span<const std::pair<double, double>> samples, double t_lo,
                 double t_hi) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  long n = 0;
  for (const auto& [t, norm] : samples) {
    if (t < t_lo || t > t_hi) continue;
    if (!(t > 0.0) || !(norm > 0.0))
      throw std::invalid_argument("decay_fit: needs positive times and norms");
    const double x = std::log(t), y = std::log(norm);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 8) throw std::invalid_argument("decay_fit: needs >= 8 samples in window");
  const double denom = n * sxx - sx * sx;
  return (n * sxy - sx * sy) / denom;
}

namespace {

std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string csv_header(int dim) {
  std::string h = "time,mass,momentum_x";
  if (dim == 2) h += ",momentum_y";
  h += ",grad_norm_sq,lp1_norm_p1,energy,weighted_J_sq,variance,boundary_leak";
  return h;
}

std::string csv_row(const ObservableRecord& rec) {
  std::string row = format_double(rec.time) + "," + format_double(rec.mass) + "," +
                    format_double(rec.momentum[0]);
  if (rec.dim == 2) row += "," + format_double(rec.momentum[1]);
  row += "," + format_double(rec.grad_norm_sq) + "," +
         format_double(rec.lp1_norm_p1) + "," + format_double(rec.energy) + "," +
         format_double(rec.weighted_J_sq) + "," + format_double(rec.variance) +
         "," + format_double(rec.boundary_leak);
  return row;
}

}  // namespace nls
