#include "nls/grid.hpp"

#include <numbers>
#include <stdexcept>

namespace nls {

Grid::Grid(int dim, std::array<int, 2> points, std::array<double, 2> lengths)
    : dim_(dim), points_(points), lengths_(lengths) {
  if (dim != 1 && dim != 2) throw std::invalid_argument("Grid: dim must be 1 or 2");
  total_ = 1;
  for (int a = 0; a < dim_; ++a) {
    if (points_[a] < 8 || points_[a] % 2 != 0)
      throw std::invalid_argument("Grid: points per axis must be even and >= 8");
    if (!(lengths_[a] > 0.0))
      throw std::invalid_argument("Grid: box length must be positive");
    total_ *= points_[a];
  }
  if (dim_ == 1) {
    points_[1] = 1;
    lengths_[1] = 1.0;
  }
}

double Grid::cell_volume() const {
  double v = 1.0;
  for (int a = 0; a < dim_; ++a) v *= spacing(a);
  return v;
}

double Grid::max_wavenumber(int axis) const {
  return std::numbers::pi * points_[axis] / lengths_[axis];
}

Eigen::ArrayXd Grid::axis_coordinate(int axis) const {
  const int n = points_[axis];
  const double h = spacing(axis);
  Eigen::ArrayXd x(n);
  for (int j = 0; j < n; ++j) x[j] = -0.5 * lengths_[axis] + j * h;
  return x;
}

Eigen::ArrayXd Grid::axis_wavenumber(int axis) const {
  const int n = points_[axis];
  const double base = 2.0 * std::numbers::pi / lengths_[axis];
  Eigen::ArrayXd k(n);
  for (int m = 0; m < n; ++m) {
    const int m_signed = m < n / 2 ? m : m - n;
    k[m] = base * m_signed;
  }
  return k;
}

namespace {

// Broadcasts a per-axis array over the flat layout (flat = ix * Ny + iy).
Eigen::ArrayXd broadcast(const Eigen::ArrayXd& along, int axis, int nx, int ny) {
  Eigen::ArrayXd out(static_cast<Eigen::Index>(nx) * ny);
  Eigen::Index f = 0;
  for (int ix = 0; ix < nx; ++ix)
    for (int iy = 0; iy < ny; ++iy, ++f) out[f] = along[axis == 0 ? ix : iy];
  return out;
}

}  // namespace

Eigen::ArrayXd Grid::coordinate(int axis) const {
  if (dim_ == 1) return axis_coordinate(0);
  return broadcast(axis_coordinate(axis), axis, points_[0], points_[1]);
}

Eigen::ArrayXd Grid::wavenumber(int axis) const {
  if (dim_ == 1) return axis_wavenumber(0);
  return broadcast(axis_wavenumber(axis), axis, points_[0], points_[1]);
}

Eigen::ArrayXd Grid::wavenumber_sq() const {
  Eigen::ArrayXd ksq = wavenumber(0).square();
  for (int a = 1; a < dim_; ++a) ksq += wavenumber(a).square();
  return ksq;
}

}  // namespace nls
