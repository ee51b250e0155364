#pragma once

#include <utility>

#include "nls/field.hpp"
#include "nls/integrator.hpp"
#include "nls/observables.hpp"

namespace nls {

/// Lens image of u(s, .): the state v(1/s, y) on the rescaled lattice
/// y_j = x_j / s (same point count, box length L/s). No resampling happens
/// anywhere, so the transform is exactly invertible and L2-isometric.
struct LensImage {
  Field field;         // carries time = 1/s and the rescaled grid
  double source_time;  // s

  double image_time() const { return field.time; }
};

/// v(1/s, y) = conj( (is)^{n/2} e^{-i s |y|^2 / 2} u(s, s y) ), s = u.time > 0,
/// with the principal branch (is)^{n/2} = s^{n/2} e^{i pi n / 4}.
/// Applying it twice is the identity (the conjugation makes it an involution).
///
/// A resolution guard rejects transforms whose quadratic phase would push the
/// image spectrum past the rescaled grid's Nyquist wavenumber: per axis,
/// x_eff + s k_eff <= pi N s / L, where x_eff and k_eff are the radii where
/// |u| and |u_hat| fall below `support_threshold` times their peak. Small s
/// fails this test long before the formula degenerates.
LensImage lens_forward(const Field& u, double support_threshold = 1e-10);

/// Exact algebraic inverse of lens_forward.
Field lens_inverse(const LensImage& v);

/// The two norm identities tying the image to the source at s = u.time:
///   first:  || grad v ||_{L2}    = || (x + i s grad) u ||_{L2}
///   second: || v ||_{L^{p+1}}    = s^{n(p-1)/(2(p+1))} || u ||_{L^{p+1}}
std::pair<BalanceReport, BalanceReport> verify_tran01(const Field& u,
                                                      const LensImage& v,
                                                      double p);

/// Dynamical equivalence of the two flows conjugated by the lens.
/// Evolves u under the beta = 0 equation on [T_tilde, T]; evolves the image
/// of u(T) under the t^{(n(p-1)-4)/2}-coefficient equation over the matching
/// interval [1/T, 1/T_tilde]; compares the marched image at 1/T_tilde against
/// lens_forward(u(T_tilde)) in L2 (evaluated on the marched grid). Returns
/// lhs = L2 mismatch, rhs = 0.
BalanceReport equivalence_experiment(const Field& phi, const NlsParams& params,
                                     double t_tilde, double t_upper, double dt,
                                     const Observer& u_observer = {});

}  // namespace nls
