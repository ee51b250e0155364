#pragma once

#include <span>
#include <utility>
#include <vector>

#include "nls/field.hpp"

namespace nls {

struct Trajectory;  // integrator.hpp

/// One time sample of every monitored functional. energy is definitionally
/// grad_norm_sq/2 + (2 lambda/(p+1)) lp1_norm_p1.
struct ObservableRecord {
  double time = 0.0;
  int dim = 1;
  double mass = 0.0;                    // ||u||_{L2}^2
  Eigen::Vector2d momentum{0.0, 0.0};   // Im int u grad(conj u), per axis
  double grad_norm_sq = 0.0;
  double lp1_norm_p1 = 0.0;             // ||u||_{L^{p+1}}^{p+1}
  double energy = 0.0;
  double weighted_J_sq = 0.0;           // ||(x + i t grad) u||^2
  double variance = 0.0;                // ||x u||^2
  double boundary_leak = 0.0;           // max |u| on the outermost shell
};

/// Two sides of a conservation identity.
struct BalanceReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual() const { return lhs - rhs; }
  double relative_residual() const {
    return std::abs(residual()) /
           std::max({std::abs(lhs), std::abs(rhs), 1e-300});
  }
};

double mass(const Field& f);
Eigen::VectorXd momentum(const Field& f);
double grad_norm_sq(const Field& f);
double lp1_norm_p1(const Field& f, double p);
double energy(const Field& f, double lambda, double p);
double variance(const Field& f);
double weighted_j_norm_sq(const Field& f, double t);
double boundary_leak(const Field& f);
/// Grid L^r norm with volume weights; r = infinity gives the grid max.
double lr_norm(const Field& f, double r);

/// All functionals in one pass (one analysis + one synthesis per axis).
ObservableRecord observe(const Field& f, double lambda, double p);

/// Trapezoidal quadrature of int s^w y(s) ds over a sampled series.
/// Requires >= 2 strictly increasing times, and times > 0 when w < 0.
double source_integral(std::span<const std::pair<double, double>> series,
                       double weight_exponent);

/// Pseudo-conformal balance at time t for a beta = 0 trajectory started at 0:
///   lhs = 1/2 ||(x+it grad)u||^2 + t^2 (2l/(p+1)) ||u||_{p+1}^{p+1}
///   rhs = 1/2 ||x phi||^2 - (l (n(p-1)-4)/(p+1)) int_0^t s ||u(s)||_{p+1}^{p+1} ds
BalanceReport pc_balance(const Trajectory& trajectory, double t);

/// E1 balance at time t for a coefficient-t^beta trajectory on [T1, T2]:
///   E1(t) = E1(T1) + (2 beta l/(p+1)) int_{T1}^t s^{beta-1} ||v||_{p+1}^{p+1} ds
/// with E1(t) = 1/2 ||grad v||^2 + t^beta (2l/(p+1)) ||v||_{p+1}^{p+1}.
/// The source coefficient 2 beta equals the lens exponent factor n(p-1)-4.
BalanceReport e1_balance(const Trajectory& trajectory, double t);

/// Least-squares slope of log(norm) against log(time) over [t_lo, t_hi].
/// Requires >= 8 samples inside the window with positive times and norms.
double decay_fit(std::span<const std::pair<double, double>> samples, double t_lo,
                 double t_hi);

/// CSV row/, header in the fixed column order
/// time,mass,momentum_x[,momentum_y],grad_norm_sq,lp1_norm_p1,energy,
/// weighted_J_sq,variance,boundary_leak.
std::string csv_header(int dim);
std::string csv_row(const ObservableRecord& rec);

}  // namespace nls
