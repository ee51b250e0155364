#include "nls/spectral.hpp"

#include <unsupported/Eigen/FFT>

namespace nls {
namespace detail {

namespace {

Eigen::FFT<double>& fft_engine() {
  thread_local Eigen::FFT<double> fft;
  return fft;
}

// In-place 1D pass along the chosen axis of the flat layout.
void axis_pass(const Grid& grid, ComplexArray& a, int axis, bool forward) {
  auto& fft = fft_engine();
  if (grid.dim() == 1) {
    Eigen::VectorXcd in = a.matrix(), out(a.size());
    if (forward)
      fft.fwd(out, in);
    else
      fft.inv(out, in);
    a = out.array();
    return;
  }
  const int nx = grid.points(0), ny = grid.points(1);
  Eigen::Map<Eigen::MatrixXcd> m(a.data(), ny, nx);  // column ix is contiguous in y
  Eigen::VectorXcd in(axis == 1 ? ny : nx), out(in.size());
  if (axis == 1) {
    for (int ix = 0; ix < nx; ++ix) {
      in = m.col(ix);
      if (forward)
        fft.fwd(out, in);
      else
        fft.inv(out, in);
      m.col(ix) = out;
    }
  } else {
    for (int iy = 0; iy < ny; ++iy) {
      in = m.row(iy).transpose();
      if (forward)
        fft.fwd(out, in);
      else
        fft.inv(out, in);
      m.row(iy) = out.transpose();
    }
  }
}

}  // namespace

void dft_forward(const Grid& grid, ComplexArray& a) {
  for (int axis = 0; axis < grid.dim(); ++axis) axis_pass(grid, a, axis, true);
}

void dft_backward(const Grid& grid, ComplexArray& a) {
  for (int axis = 0; axis < grid.dim(); ++axis) axis_pass(grid, a, axis, false);
}

ComplexArray apply_multiplier(const Grid& grid, const ComplexArray& values,
                              const ComplexArray& multiplier) {
  ComplexArray a = values;
  dft_forward(grid, a);
  a *= multiplier;
  dft_backward(grid, a);
  return a;
}

Eigen::ArrayXd centering_signs(const Grid& grid) {
  Eigen::ArrayXd signs(grid.total_points());
  if (grid.dim() == 1) {
    for (int m = 0; m < grid.points(0); ++m) signs[m] = m % 2 == 0 ? 1.0 : -1.0;
    return signs;
  }
  const int nx = grid.points(0), ny = grid.points(1);
  Eigen::Index f = 0;
  for (int mx = 0; mx < nx; ++mx)
    for (int my = 0; my < ny; ++my, ++f) signs[f] = (mx + my) % 2 == 0 ? 1.0 : -1.0;
  return signs;
}

ComplexArray gradient_multiplier(const Grid& grid, int axis) {
  const Eigen::ArrayXd k = grid.wavenumber(axis);
  const double nyquist = grid.max_wavenumber(axis);
  ComplexArray mult(k.size());
  for (Eigen::Index m = 0; m < k.size(); ++m)
    mult[m] = k[m] == -nyquist ? Complex(0, 0) : Complex(0, k[m]);
  return mult;
}

Eigen::ArrayXd dealias_mask(const Grid& grid) {
  Eigen::ArrayXd mask(grid.total_points());
  auto keep = [](int m, int n) {
    const int m_signed = m < n / 2 ? m : m - n;
    return 3 * std::abs(m_signed) <= n;
  };
  if (grid.dim() == 1) {
    const int n = grid.points(0);
    for (int m = 0; m < n; ++m) mask[m] = keep(m, n) ? 1.0 : 0.0;
    return mask;
  }
  const int nx = grid.points(0), ny = grid.points(1);
  Eigen::Index f = 0;
  for (int mx = 0; mx < nx; ++mx)
    for (int my = 0; my < ny; ++my, ++f)
      mask[f] = keep(mx, nx) && keep(my, ny) ? 1.0 : 0.0;
  return mask;
}

}  // namespace detail

SpectralField analyze(const Field& f) {
  require_finite(f, "analyze");
  ComplexArray a = f.values;
  detail::dft_forward(f.grid, a);
  a *= (detail::centering_signs(f.grid) / static_cast<double>(f.grid.total_points()));
  return SpectralField(f.grid, std::move(a), f.time);
}

Field synthesize(const SpectralField& F) {
  if (!all_finite(F.coeffs))
    throw std::runtime_error("synthesize: non-finite coefficients");
  ComplexArray a = F.coeffs;
  a *= (detail::centering_signs(F.grid) * static_cast<double>(F.grid.total_points()));
  detail::dft_backward(F.grid, a);
  return Field(F.grid, std::move(a), F.time);
}

std::vector<Field> gradient(const Field& f) {
  require_finite(f, "gradient");
  ComplexArray hat = f.values;
  detail::dft_forward(f.grid, hat);
  std::vector<Field> out;
  out.reserve(f.grid.dim());
  for (int axis = 0; axis < f.grid.dim(); ++axis) {
    ComplexArray g = hat * detail::gradient_multiplier(f.grid, axis);
    detail::dft_backward(f.grid, g);
    out.emplace_back(f.grid, std::move(g), f.time);
  }
  return out;
}

Field laplacian(const Field& f) {
  require_finite(f, "laplacian");
  ComplexArray mult = (-f.grid.wavenumber_sq()).cast<Complex>();
  return Field(f.grid, detail::apply_multiplier(f.grid, f.values, mult), f.time);
}

Field free_propagate(const Field& f, double dt) {
  require_finite(f, "free_propagate");
  const Eigen::ArrayXd phase = f.grid.wavenumber_sq() * (-0.5 * dt);
  ComplexArray mult(phase.size());
  mult.real() = phase.cos();
  mult.imag() = phase.sin();
  Field out(f.grid, detail::apply_multiplier(f.grid, f.values, mult), f.time + dt);
  return out;
}

SpectralField dealias(SpectralField F) {
  F.coeffs *= detail::dealias_mask(F.grid);
  return F;
}

Field evaluate_on_grid(const Field& f, const Grid& target) {
  if (target.dim() != f.grid.dim())
    throw std::invalid_argument("evaluate_on_grid: dimension mismatch");
  const SpectralField F = analyze(f);
  auto mode_matrix = [&](int axis) {
    const Eigen::ArrayXd k = f.grid.axis_wavenumber(axis);
    const Eigen::ArrayXd x = target.axis_coordinate(axis);
    Eigen::MatrixXcd e(x.size(), k.size());
    for (Eigen::Index t = 0; t < x.size(); ++t)
      for (Eigen::Index m = 0; m < k.size(); ++m)
        e(t, m) = std::polar(1.0, k[m] * x[t]);
    return e;
  };
  if (f.grid.dim() == 1) {
    Eigen::VectorXcd vals = mode_matrix(0) * F.coeffs.matrix();
    return Field(target, vals.array(), f.time);
  }
  const int nx = f.grid.points(0), ny = f.grid.points(1);
  Eigen::Map<const Eigen::MatrixXcd> c(F.coeffs.data(), ny, nx);
  Eigen::MatrixXcd vals = mode_matrix(1) * c * mode_matrix(0).transpose();
  ComplexArray flat(target.total_points());
  Eigen::Map<Eigen::MatrixXcd>(flat.data(), target.points(1), target.points(0)) = vals;
  return Field(target, std::move(flat), f.time);
}

}  // namespace nls
