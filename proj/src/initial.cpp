#include "nls/initial.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nls {

namespace {

void require_on_lattice(double k, double length, const char* what) {
  const double mode = k * length / (2.0 * std::numbers::pi);
  if (std::abs(mode - std::round(mode)) > 1e-9 * (1.0 + std::abs(mode)))
    throw std::invalid_argument(std::string(what) +
                                " wavevector off the grid lattice: k = " +
                                std::to_string(k));
}

}  // namespace

Field make_initial(const InitialCondition& spec, const Grid& grid, double t0) {
  ComplexArray values(grid.total_points());
  switch (spec.kind) {
    case InitialCondition::Kind::Gaussian: {
      if (!(spec.width > 0.0))
        throw std::invalid_argument("make_initial: gaussian width must be positive");
      Eigen::ArrayXd r2 = Eigen::ArrayXd::Zero(grid.total_points());
      Eigen::ArrayXd phase = Eigen::ArrayXd::Zero(grid.total_points());
      for (int a = 0; a < grid.dim(); ++a) {
        require_on_lattice(spec.boost[a], grid.length(a), "boost");
        const Eigen::ArrayXd x = grid.coordinate(a);
        r2 += (x - spec.center[a]).square();
        phase += spec.boost[a] * x;
      }
      const Eigen::ArrayXd envelope = (-r2 / (2.0 * spec.width * spec.width)).exp();
      values.real() = envelope * phase.cos();
      values.imag() = envelope * phase.sin();
      break;
    }
    case InitialCondition::Kind::SechSoliton: {
      if (grid.dim() != 1)
        throw std::invalid_argument("make_initial: sech soliton is 1D only");
      if (!(spec.sech_scale > 0.0))
        throw std::invalid_argument("make_initial: sech scale must be positive");
      const double a = spec.sech_scale;
      const Eigen::ArrayXd x = grid.coordinate(0);
      values.real() = a / (a * x).cosh();
      values.imag().setZero();
      break;
    }
    case InitialCondition::Kind::PlaneModulated: {
      Eigen::ArrayXd phase = Eigen::ArrayXd::Zero(grid.total_points());
      for (int a = 0; a < grid.dim(); ++a) {
        require_on_lattice(spec.carrier[a], grid.length(a), "carrier");
        phase += spec.carrier[a] * grid.coordinate(a);
      }
      const Eigen::ArrayXd envelope =
          1.0 + spec.mod_depth *
                    (2.0 * std::numbers::pi * spec.mod_mode / grid.length(0) *
                     grid.coordinate(0))
                        .cos();
      values.real() = envelope * phase.cos();
      values.imag() = envelope * phase.sin();
      break;
    }
  }
  return Field(grid, std::move(values), t0);
}

}  // namespace nls
