#pragma once

#include <complex>
#include <random>

#include "nls/field.hpp"

namespace nls::testing {

inline Field random_field(const Grid& grid, unsigned seed, double amplitude = 1.0) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  ComplexArray values(grid.total_points());
  for (Eigen::Index j = 0; j < values.size(); ++j)
    values[j] = amplitude * Complex(dist(rng), dist(rng));
  return Field(grid, std::move(values), 0.0);
}

inline double max_abs_diff(const ComplexArray& a, const ComplexArray& b) {
  return (a - b).abs().maxCoeff();
}

inline double l2_diff(const Field& a, const Field& b) {
  return std::sqrt((a.values - b.values).abs2().sum() * a.grid.cell_volume());
}

inline Field gaussian_1d(const Grid& grid, double width = 1.0, double boost = 0.0) {
  const Eigen::ArrayXd x = grid.coordinate(0);
  const Eigen::ArrayXd envelope = (-x.square() / (2.0 * width * width)).exp();
  ComplexArray values(grid.total_points());
  values.real() = envelope * (boost * x).cos();
  values.imag() = envelope * (boost * x).sin();
  return Field(grid, std::move(values), 0.0);
}

/// Free-flow closed form for e^{-x^2/2} data under i u_t + u_xx/2 = 0:
/// u(t, x) = (1 + i t)^{-1/2} e^{-x^2 / (2 (1 + i t))}.
inline Complex free_gaussian_1d(double t, double x) {
  const Complex denom(1.0, t);
  return std::exp(-x * x / (2.0 * denom)) / std::sqrt(denom);
}

}  // namespace nls::testing
