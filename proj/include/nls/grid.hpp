#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>

namespace nls {

/// Uniform periodic box [-L/2, L/2)^dim sampled at N points per axis.
///
/// Sample j along an axis sits at x_j = -L/2 + j L/N; the wavenumber lattice
/// is k_m = 2 pi m / L for integer m in [-N/2, N/2). Spectral arrays use DFT
/// index order (m = 0..N/2-1, then -N/2..-1).
class Grid {
 public:
  Grid(int dim, std::array<int, 2> points, std::array<double, 2> lengths);

  static Grid line(int points, double length) {
    return Grid(1, {points, 1}, {length, 1.0});
  }
  static Grid box(int nx, int ny, double lx, double ly) {
    return Grid(2, {nx, ny}, {lx, ly});
  }

  int dim() const { return dim_; }
  int points(int axis) const { return points_[axis]; }
  double length(int axis) const { return lengths_[axis]; }
  double spacing(int axis) const { return lengths_[axis] / points_[axis]; }
  Eigen::Index total_points() const { return total_; }
  double cell_volume() const;

  /// Nyquist wavenumber pi N / L of an axis.
  double max_wavenumber(int axis) const;

  /// x_j along one axis, natural order.
  Eigen::ArrayXd axis_coordinate(int axis) const;
  /// k_m along one axis, DFT index order.
  Eigen::ArrayXd axis_wavenumber(int axis) const;

  /// Coordinate of one axis broadcast over the flattened grid
  /// (flat index = ix * Ny + iy in 2D).
  Eigen::ArrayXd coordinate(int axis) const;
  /// Wavenumber of one axis broadcast over the flattened spectral array.
  Eigen::ArrayXd wavenumber(int axis) const;
  /// |k|^2 over the flattened spectral array.
  Eigen::ArrayXd wavenumber_sq() const;

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.dim_ == b.dim_ && a.points_ == b.points_ && a.lengths_ == b.lengths_;
  }
  friend bool operator!=(const Grid& a, const Grid& b) { return !(a == b); }

 private:
  int dim_;
  std::array<int, 2> points_;
  std::array<double, 2> lengths_;
  Eigen::Index total_;
};

}  // namespace nls
