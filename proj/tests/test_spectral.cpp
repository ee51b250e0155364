#include "nls/spectral.hpp"

#include <numbers>

#include "doctest.h"
#include "test_util.hpp"

using namespace nls;
using nls::testing::gaussian_1d;
using nls::testing::max_abs_diff;
using nls::testing::random_field;

namespace {

Field single_mode(const Grid& grid, int mode, Complex amplitude = {1.0, 0.0}) {
  const double k = 2.0 * std::numbers::pi * mode / grid.length(0);
  const Eigen::ArrayXd x = grid.coordinate(0);
  ComplexArray values(grid.total_points());
  for (Eigen::Index j = 0; j < values.size(); ++j)
    values[j] = amplitude * std::polar(1.0, k * x[j]);
  return Field(grid, std::move(values), 0.0);
}

}  // namespace

TEST_SUITE("grid") {
  TEST_CASE("construction guards") {
    CHECK_THROWS(Grid::line(7, 10.0));   // odd
    CHECK_THROWS(Grid::line(6, 10.0));   // < 8
    CHECK_THROWS(Grid::line(16, -1.0));  // bad box
    CHECK_THROWS(Grid(3, {16, 16}, {1.0, 1.0}));
  }

  TEST_CASE("coordinates and wavenumbers") {
    const Grid g = Grid::line(16, 8.0);
    const auto x = g.axis_coordinate(0);
    CHECK(x[0] == doctest::Approx(-4.0));
    CHECK(x[8] == doctest::Approx(0.0));
    CHECK(g.spacing(0) == doctest::Approx(0.5));
    const auto k = g.axis_wavenumber(0);
    CHECK(k[0] == 0.0);
    CHECK(k[1] == doctest::Approx(2.0 * std::numbers::pi / 8.0));
    CHECK(k[8] == doctest::Approx(-g.max_wavenumber(0)));
    CHECK(k[15] == doctest::Approx(-2.0 * std::numbers::pi / 8.0));
  }
}

TEST_SUITE("spectral") {
  TEST_CASE("constant field analyzes to the zero mode") {
    const Grid g = Grid::line(32, 10.0);
    const Complex c{0.7, -0.2};
    Field f(g, ComplexArray::Constant(g.total_points(), c), 0.0);
    const SpectralField F = analyze(f);
    CHECK(std::abs(F.coeffs[0] - c) < 1e-14);
    for (Eigen::Index m = 1; m < F.coeffs.size(); ++m)
      CHECK(std::abs(F.coeffs[m]) < 1e-14);
  }

  TEST_CASE("a lattice mode analyzes to a single coefficient") {
    const Grid g = Grid::line(32, 10.0);
    const Field f = single_mode(g, 5, {0.3, 0.4});
    const SpectralField F = analyze(f);
    for (Eigen::Index m = 0; m < F.coeffs.size(); ++m) {
      if (m == 5)
        CHECK(std::abs(F.coeffs[m] - Complex(0.3, 0.4)) < 1e-13);
      else
        CHECK(std::abs(F.coeffs[m]) < 1e-13);
    }
    // negative mode lands at the wrapped index
    const SpectralField Fneg = analyze(single_mode(g, -3));
    CHECK(std::abs(Fneg.coeffs[32 - 3] - Complex(1.0, 0.0)) < 1e-13);
  }

  TEST_CASE("round-trip and Parseval on random fields") {
    for (const Grid& g : {Grid::line(64, 20.0), Grid::box(16, 24, 5.0, 7.0)}) {
      const Field f = random_field(g, 7);
      const Field back = synthesize(analyze(f));
      CHECK(max_abs_diff(f.values, back.values) < 1e-12);

      double box = 1.0;
      for (int a = 0; a < g.dim(); ++a) box *= g.length(a);
      const double physical = f.values.abs2().sum() * g.cell_volume();
      const double spectral = analyze(f).coeffs.abs2().sum() * box;
      CHECK(physical == doctest::Approx(spectral).epsilon(1e-12));
    }
  }

  TEST_CASE("non-finite input is rejected") {
    const Grid g = Grid::line(16, 4.0);
    Field f = random_field(g, 3);
    f.values[5] = Complex(std::nan(""), 0.0);
    CHECK_THROWS_AS(analyze(f), std::runtime_error);
    CHECK_THROWS_AS(gradient(f), std::runtime_error);
    CHECK_THROWS_AS(free_propagate(f, 0.1), std::runtime_error);
  }
}

TEST_SUITE("derivatives") {
  TEST_CASE("constant has zero gradient and laplacian") {
    const Grid g = Grid::line(32, 12.0);
    const Field f(g, ComplexArray::Constant(g.total_points(), Complex(2.0, 1.0)), 0.0);
    CHECK(gradient(f)[0].values.abs().maxCoeff() < 1e-13);
    CHECK(laplacian(f).values.abs().maxCoeff() < 1e-13);
  }

  TEST_CASE("sin(2 pi x / L) differentiates exactly") {
    const Grid g = Grid::line(64, 14.0);
    const double k = 2.0 * std::numbers::pi / g.length(0);
    const Eigen::ArrayXd x = g.coordinate(0);
    ComplexArray values(g.total_points());
    values.real() = (k * x).sin();
    values.imag().setZero();
    const Field f(g, std::move(values), 0.0);
    const Field df = gradient(f)[0];
    const Eigen::ArrayXd expected = k * (k * x).cos();
    CHECK((df.values.real() - expected).abs().maxCoeff() < 1e-12);
    CHECK(df.values.imag().abs().maxCoeff() < 1e-13);
  }

  TEST_CASE("matches 4th-order finite differences on a narrow gaussian") {
    const Grid g = Grid::line(256, 40.0);
    const Field f = gaussian_1d(g, 0.8);
    const Field df = gradient(f)[0];
    const Field ddf = laplacian(f);
    const int n = g.points(0);
    const double h = g.spacing(0);
    auto at = [&](int j) { return f.values[(j % n + n) % n]; };
    double grad_err = 0.0, lap_err = 0.0;
    for (int j = 0; j < n; ++j) {
      const Complex fd1 =
          (-at(j + 2) + 8.0 * at(j + 1) - 8.0 * at(j - 1) + at(j - 2)) / (12.0 * h);
      const Complex fd2 = (-at(j + 2) + 16.0 * at(j + 1) - 30.0 * at(j) +
                           16.0 * at(j - 1) - at(j - 2)) /
                          (12.0 * h * h);
      grad_err = std::max(grad_err, std::abs(df.values[j] - fd1));
      lap_err = std::max(lap_err, std::abs(ddf.values[j] - fd2));
    }
    CHECK(grad_err < 1e-6);
    CHECK(lap_err < 1e-5);
  }

  TEST_CASE("2D gradient picks the right axis") {
    const Grid g = Grid::box(16, 16, 8.0, 8.0);
    const double kx = 2.0 * std::numbers::pi * 2 / g.length(0);
    ComplexArray values(g.total_points());
    const Eigen::ArrayXd x = g.coordinate(0);
    for (Eigen::Index j = 0; j < values.size(); ++j)
      values[j] = std::polar(1.0, kx * x[j]);
    const Field f(g, std::move(values), 0.0);
    const auto grads = gradient(f);
    CHECK(max_abs_diff(grads[0].values, (Complex(0, kx) * f.values).eval()) < 1e-12);
    CHECK(grads[1].values.abs().maxCoeff() < 1e-12);
  }
}

TEST_SUITE("free propagator") {
  TEST_CASE("dt = 0 is the identity") {
    const Grid g = Grid::line(64, 20.0);
    const Field f = random_field(g, 11);
    CHECK(max_abs_diff(free_propagate(f, 0.0).values, f.values) < 1e-14);
  }

  TEST_CASE("single mode picks the eigenphase") {
    const Grid g = Grid::line(32, 10.0);
    const Field f = single_mode(g, 4);
    const double k = 2.0 * std::numbers::pi * 4 / g.length(0);
    const double dt = 0.37;
    const Field out = free_propagate(f, dt);
    const ComplexArray expected = f.values * std::polar(1.0, -k * k * dt / 2.0);
    CHECK(max_abs_diff(out.values, expected) < 1e-13);
  }

  TEST_CASE("gaussian matches the closed-form free solution") {
    const Grid g = Grid::line(512, 60.0);
    const Field f = gaussian_1d(g);
    const double t = 1.0;
    const Field out = free_propagate(f, t);
    const Eigen::ArrayXd x = g.coordinate(0);
    double err = 0.0;
    for (Eigen::Index j = 0; j < x.size(); ++j)
      err = std::max(err, std::abs(out.values[j] - testing::free_gaussian_1d(t, x[j])));
    CHECK(err < 1e-8);
    CHECK(out.time == doctest::Approx(1.0));
  }

  TEST_CASE("unitary group: norm, inverse, composition") {
    const Grid g = Grid::box(16, 16, 9.0, 9.0);
    const Field f = random_field(g, 23);
    const Field fwd = free_propagate(f, 0.4);
    CHECK(fwd.values.abs2().sum() ==
          doctest::Approx(f.values.abs2().sum()).epsilon(1e-13));
    CHECK(max_abs_diff(free_propagate(fwd, -0.4).values, f.values) < 1e-12);
    const Field two = free_propagate(free_propagate(f, 0.15), 0.25);
    CHECK(max_abs_diff(two.values, fwd.values) < 1e-12);
  }

  TEST_CASE("commutes with gradient and laplacian") {
    const Grid g = Grid::line(64, 16.0);
    const Field f = random_field(g, 31);
    const Field a = gradient(free_propagate(f, 0.3))[0];
    const Field b = free_propagate(gradient(f)[0], 0.3);
    CHECK(max_abs_diff(a.values, b.values) < 1e-10);
    const Field c = laplacian(free_propagate(f, 0.3));
    const Field d = free_propagate(laplacian(f), 0.3);
    CHECK(max_abs_diff(c.values, d.values) < 1e-9);
  }
}

TEST_SUITE("dealias") {
  TEST_CASE("band-limited fields pass through") {
    const Grid g = Grid::line(48, 12.0);
    const Field f = single_mode(g, 16);  // |m| = N/3 exactly, kept
    const SpectralField F = dealias(analyze(f));
    CHECK(std::abs(F.coeffs[16] - Complex(1.0, 0.0)) < 1e-13);
  }

  TEST_CASE("top-third mode is zeroed") {
    const Grid g = Grid::line(48, 12.0);
    const Field f = single_mode(g, 23);  // N/2 - 1
    const SpectralField F = dealias(analyze(f));
    CHECK(F.coeffs.abs().maxCoeff() < 1e-13);
  }

  TEST_CASE("idempotent on random data") {
    const Grid g = Grid::box(24, 24, 6.0, 6.0);
    const SpectralField F = analyze(random_field(g, 41));
    const SpectralField once = dealias(F);
    const SpectralField twice = dealias(once);
    CHECK(max_abs_diff(once.coeffs, twice.coeffs) == 0.0);
  }
}

TEST_SUITE("evaluate_on_grid") {
  TEST_CASE("recovers a band-limited field on a shifted finer lattice") {
    const Grid g = Grid::line(64, 16.0);
    const Field f = gaussian_1d(g, 1.2);
    const Grid fine = Grid::line(96, 12.0);
    const Field out = evaluate_on_grid(f, fine);
    const Eigen::ArrayXd x = fine.coordinate(0);
    double err = 0.0;
    for (Eigen::Index j = 0; j < x.size(); ++j)
      err = std::max(err,
                     std::abs(out.values[j] - std::exp(-x[j] * x[j] / (2.0 * 1.44))));
    CHECK(err < 1e-10);
  }

  TEST_CASE("2D tensor evaluation") {
    const Grid g = Grid::box(32, 32, 10.0, 10.0);
    ComplexArray values(g.total_points());
    const Eigen::ArrayXd x = g.coordinate(0), y = g.coordinate(1);
    for (Eigen::Index j = 0; j < values.size(); ++j)
      values[j] = std::exp(-(x[j] * x[j] + 0.5 * y[j] * y[j]));
    const Field f(g, std::move(values), 0.0);
    const Grid target = Grid::box(16, 24, 6.0, 8.0);
    const Field out = evaluate_on_grid(f, target);
    const Eigen::ArrayXd tx = target.coordinate(0), ty = target.coordinate(1);
    double err = 0.0;
    for (Eigen::Index j = 0; j < out.values.size(); ++j)
      err = std::max(err, std::abs(out.values[j] -
                                   std::exp(-(tx[j] * tx[j] + 0.5 * ty[j] * ty[j]))));
    CHECK(err < 1e-9);
  }
}

TEST_SUITE("snapshots") {
  TEST_CASE("snapshot round-trip is exact") {
    const Grid g = Grid::box(16, 24, 5.0, 7.5);
    const Field f = random_field(g, 99);
    const auto path = std::filesystem::temp_directory_path() / "nls_snap_test.snap";
    Field stamped(f.grid, f.values, 1.25);
    save_snapshot(path, stamped);
    const Field back = load_snapshot(path);
    CHECK(back.grid == stamped.grid);
    CHECK(back.time == 1.25);
    CHECK(max_abs_diff(back.values, stamped.values) == 0.0);
    std::filesystem::remove(path);
  }
}
