#pragma once

#include <Eigen/Dense>
#include <complex>
#include <filesystem>

#include "nls/grid.hpp"

namespace nls {

using Complex = std::complex<double>;
using ComplexArray = Eigen::ArrayXcd;

/// Complex-valued state sampled on a Grid at one instant.
struct Field {
  Grid grid;
  ComplexArray values;
  double time = 0.0;

  Field(Grid g, ComplexArray v, double t = 0.0);
};

/// Fourier coefficients c_m of a Field: values(x_j) = sum_m c_m e^{i k_m x_j}
/// with k in DFT index order. Coefficients refer to box-centered coordinates,
/// so a single mode e^{ikx} has exactly one nonzero entry.
struct SpectralField {
  Grid grid;
  ComplexArray coeffs;
  double time = 0.0;

  SpectralField(Grid g, ComplexArray c, double t = 0.0);
};

bool all_finite(const ComplexArray& values);
void require_finite(const Field& f, const char* context);

/// Text snapshot: header "# nls-field v1 dim=<n> N=<...> L=<...> t=<t>",
/// then one "re im" line per grid point in row-major order.
void save_snapshot(const std::filesystem::path& path, const Field& f);
Field load_snapshot(const std::filesystem::path& path);

}  // namespace nls
