#pragma once

#include <vector>

#include "nls/field.hpp"

namespace nls {

/// Discrete Fourier analysis. Round-trips with synthesize to roundoff and
/// satisfies Parseval: sum |u_j|^2 h^n = prod(L) * sum |c_m|^2.
SpectralField analyze(const Field& f);
Field synthesize(const SpectralField& F);

/// Spectral gradient, one Field per axis. The Nyquist mode is zeroed so real
/// inputs keep conjugate-symmetric (real) derivatives.
std::vector<Field> gradient(const Field& f);

Field laplacian(const Field& f);

/// Exact free propagator U(dt) = e^{(i dt/2) Laplacian}: coefficients are
/// multiplied by e^{-i |k|^2 dt / 2}. Unitary one-parameter group; dt may be
/// negative. Advances the field's time stamp by dt.
Field free_propagate(const Field& f, double dt);

/// 2/3-rule: zeroes every coefficient with any axis index |m| > N/3.
/// Idempotent.
SpectralField dealias(SpectralField F);

/// Evaluates the trigonometric interpolant of `f` at the nodes of `target`.
/// Exact for fields whose spectrum is resolved on their own grid; used for
/// comparisons across lens-rescaled grids, never inside the transforms.
Field evaluate_on_grid(const Field& f, const Grid& target);

namespace detail {
/// Unscaled forward DFT along every axis, in place (flat layout ix*Ny+iy).
void dft_forward(const Grid& grid, ComplexArray& a);
/// Backward DFT along every axis with 1/total scaling, in place.
void dft_backward(const Grid& grid, ComplexArray& a);
/// Applies a diagonal spectral multiplier (DFT index order) to a field.
ComplexArray apply_multiplier(const Grid& grid, const ComplexArray& values,
                              const ComplexArray& multiplier);
/// (-1)^(mx+my) pattern converting raw DFT coefficients to box-centered ones.
Eigen::ArrayXd centering_signs(const Grid& grid);
/// Per-axis gradient multiplier ik with the Nyquist mode zeroed.
ComplexArray gradient_multiplier(const Grid& grid, int axis);
/// 0/1 mask of the 2/3-rule.
Eigen::ArrayXd dealias_mask(const Grid& grid);
}  // namespace detail

}  // namespace nls
