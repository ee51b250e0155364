#pragma once

#include <array>

#include "nls/field.hpp"

namespace nls {

/// Initial data menu. Boost and carrier wavevectors must lie on the grid's
/// wavenumber lattice (k L / 2 pi integral) so the data is exactly periodic.
struct InitialCondition {
  enum class Kind { Gaussian, SechSoliton, PlaneModulated };
  Kind kind = Kind::Gaussian;

  // gaussian: e^{i k.x} e^{-|x - center|^2 / (2 width^2)}
  double width = 1.0;
  std::array<double, 2> center{0.0, 0.0};
  std::array<double, 2> boost{0.0, 0.0};

  // sech-soliton (1D only): a sech(a x); the exact soliton of the cubic
  // focusing equation with u(t, x) = a sech(a x) e^{i a^2 t / 2}.
  double sech_scale = 1.0;

  // plane-modulated: (1 + depth cos(2 pi mode x / L)) e^{i k.x}
  std::array<double, 2> carrier{0.0, 0.0};
  int mod_mode = 1;
  double mod_depth = 0.1;
};

Field make_initial(const InitialCondition& spec, const Grid& grid, double t0 = 0.0);

}  // namespace nls
