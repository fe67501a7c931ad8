#include "entim/errors.hpp"
#include "entim/optics.hpp"
#include "entim/rng.hpp"

#include "../support/helpers.hpp"
#include "../support/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

using namespace entim;

namespace {

ImagingSetup make_setup(const GridPtr& grid, ArmGeometry z, double a = 17e-6,
                        double d = 104e-6) {
  ImagingSetup s;
  s.scheme = Scheme::a;
  s.z_config = z;
  s.focal_length = 5e-2;
  s.lambda = 702e-9;
  s.grid = grid;
  s.object = double_slit(*grid, a, d);
  s.fixed_point = 0.0;
  s.validate();
  return s;
}

} // namespace

TEST_CASE("double slit point values and symmetry") {
  const GridPtr grid = make_grid(1024, 2e-6, 1, 1.0);
  const auto t = double_slit(*grid, 17e-6, 104e-6);
  const auto at = [&](double x) {
    return t[static_cast<std::size_t>(Grid::index_of(x, 2e-6, 1024))].real();
  };
  CHECK(at(0.0) == 0.0);
  CHECK(at(52e-6) == 1.0);
  CHECK(at(-52e-6) == 1.0);
  CHECK(at(62e-6) == 0.0);
  for (int j = 0; j < 1024; ++j)
    CHECK(t[static_cast<std::size_t>(j)] ==
          t[static_cast<std::size_t>(Grid::mirror_index(j, 1024))]);
}

TEST_CASE("double slit open fraction within one pixel on a fine lattice") {
  const GridPtr grid = make_grid(1024, 1e-6, 1, 1.0);
  const auto t = double_slit(*grid, 17e-6, 104e-6);
  double open = 0.0;
  for (const auto& v : t) open += v.real() * grid->dx();
  CHECK(std::abs(open - 2.0 * 17e-6) <= grid->dx());
}

TEST_CASE("double slit geometry errors") {
  const GridPtr grid = make_grid(64, 4e-6, 1, 1.0);
  CHECK_THROWS_AS(double_slit(*grid, 20e-6, 10e-6), ConfigError);  // a >= d
  CHECK_THROWS_AS(double_slit(*grid, 0.0, 10e-6), ConfigError);
  CHECK_THROWS_AS(double_slit(*grid, 100e-6, 200e-6), ConfigError); // window
}

TEST_CASE("f-f map sends a plane wave to a single bright pixel") {
  const GridPtr grid = make_grid(256, 4e-6, 1, 1.0);
  const int k0 = 17;
  Field f = make_field(grid);
  for (int j = 0; j < 256; ++j) {
    const double phase = grid->q(k0) * grid->x(j);
    f.at(0, j) = std::complex<double>{std::cos(phase), std::sin(phase)};
  }
  const Field out = propagate_f_f(f, 5e-2, 702e-9);
  // All power lands on pixel k0, i.e. focal coordinate lambda f q0/(2 pi).
  for (int j = 0; j < 256; ++j) {
    if (j == k0)
      CHECK(std::norm(out.at(0, j)) == doctest::Approx(256.0).epsilon(1e-9));
    else
      CHECK(std::norm(out.at(0, j)) < 1e-18);
  }
}

TEST_CASE("f-f map of a gaussian has the conjugate waist") {
  const int n = 512;
  const double dx = 2e-6, f_len = 5e-2, lambda = 702e-9;
  const GridPtr grid = make_grid(n, dx, 1, 1.0);
  const double waist = 36e-6;
  Field f = make_field(grid);
  for (int j = 0; j < n; ++j) {
    const double x = grid->x(j);
    f.at(0, j) = std::exp(-(x * x) / (waist * waist));
  }
  const Field out = propagate_f_f(f, f_len, lambda);
  // Focal-plane waist lambda f/(pi w): intensity falls to 1/e^2 at that
  // radius. Check the amplitude ratio against the continuous transform.
  const double pitch = lambda * f_len / (n * dx);
  const double w_focal = lambda * f_len / (M_PI * waist);
  const int j_waist = static_cast<int>(std::round(w_focal / pitch));
  const double q_at = grid->q(j_waist);
  const double expected =
      std::abs(oracles::gaussian_quadrature_ft(q_at, waist, dx, n)) /
      std::abs(oracles::gaussian_quadrature_ft(0.0, waist, dx, n));
  const double actual = std::abs(out.at(0, j_waist)) / std::abs(out.at(0, 0));
  CHECK(actual == doctest::Approx(expected).epsilon(1e-9));
  CHECK(expected == doctest::Approx(std::exp(-1.0)).epsilon(0.05));
}

TEST_CASE("coherently lit double slit produces lambda f/d fringes") {
  const GridPtr grid = make_grid(1024, 4e-6, 1, 1.0);
  Field f = make_field(grid);
  for (auto& v : f.values) v = 1.0;
  const auto slit = double_slit(*grid, 17e-6, 104e-6);
  apply_object(f, slit);
  const Field out = propagate_f_f(f, 5e-2, 702e-9);
  // Fringe maxima every lambda f/d in focal coordinates; compare the
  // intensity against the direct slit-spectrum oracle at several pixels.
  for (int j : {0, 5, 13, 20, 39, 60, 100}) {
    const double q = grid->q(j);
    const double expected = std::norm(oracles::profile_spectrum_direct(slit, q, 4e-6));
    CHECK(std::norm(out.at(0, j)) == doctest::Approx(expected).epsilon(1e-9));
  }
  // Adjacent intensity zeros around the center sit lambda f/d apart:
  // q_zero = pi/d -> focal offset lambda f/(2d); full fringe lambda f/d.
  const double pitch = 702e-9 * 5e-2 / (1024 * 4e-6);
  const double fringe = 702e-9 * 5e-2 / 104e-6;
  CHECK(fringe / pitch == doctest::Approx(39.38).epsilon(1e-3));
}

TEST_CASE("2f-2f map is an inverted unit-magnification image") {
  const GridPtr grid = make_grid(128, 4e-6, 2, 1e-12);
  Rng rng(41);
  Field f = make_field(grid);
  for (auto& v : f.values) v = rng.complex_normal(1.0);
  const Field img = propagate_2f_2f(f, 5e-2, 702e-9);
  for (int it = 0; it < 2; ++it)
    for (int j = 0; j < 128; ++j)
      CHECK(std::norm(img.at(it, j)) ==
            doctest::Approx(std::norm(f.at(it, Grid::mirror_index(j, 128)))));
  // Double application restores the original intensity (and field, up to
  // the squared global phase (-1)^2).
  const Field twice = propagate_2f_2f(img, 5e-2, 702e-9);
  for (std::size_t k = 0; k < f.values.size(); ++k)
    CHECK(std::abs(twice.values[k] - f.values[k]) < 1e-14);
}

TEST_CASE("lossless elements conserve power; the object masks exactly") {
  const GridPtr grid = make_grid(256, 4e-6, 4, 1e-13);
  Rng rng(42);
  Field f = make_field(grid);
  for (auto& v : f.values) v = rng.complex_normal(1.0);
  const double before = f.total_power();

  const Field focal = propagate_f_f(f, 5e-2, 702e-9);
  CHECK(std::abs(focal.total_power() - before) / before < 1e-10);
  const Field image = propagate_2f_2f(f, 5e-2, 702e-9);
  CHECK(std::abs(image.total_power() - before) / before < 1e-10);

  // Uniform field through the slit: transmitted power = open fraction.
  Field uniform = make_field(grid);
  for (auto& v : uniform.values) v = 1.0;
  const double total = uniform.total_power();
  const auto slit = double_slit(*grid, 16e-6, 96e-6);
  double open_pixels = 0.0;
  for (const auto& t : slit) open_pixels += std::norm(t);
  apply_object(uniform, slit);
  CHECK(uniform.total_power() ==
        doctest::Approx(total * open_pixels / 256.0).epsilon(1e-12));
}

TEST_CASE("kernel/propagator equivalence on random fields") {
  const GridPtr grid = make_grid(128, 4e-6, 1, 1.0);
  Rng rng(43);

  for (ArmGeometry z : {ArmGeometry::focal, ArmGeometry::image}) {
    const ImagingSetup setup = make_setup(grid, z, 16e-6, 64e-6);
    Field in = make_field(grid);
    for (auto& v : in.values) v = rng.complex_normal(1.0);
    Field spec = transform(in, Axis::space, Direction::forward);

    // Signal arm: object then f-f.
    Field sig = in;
    apply_object(sig, setup.object);
    const Field sig_out = propagate_f_f(sig, setup.focal_length, setup.lambda);
    for (int det : {0, 7, 40, 100}) {
      std::complex<double> acc = 0.0;
      for (int kq = 0; kq < 128; ++kq)
        acc += kernel_spectrum(setup, Beam::signal, det, kq) * spec.at(0, kq);
      CHECK(std::abs(acc - sig_out.at(0, det)) < 1e-10);
    }

    // Idler arm: z-dependent map.
    const Field idl_out = z == ArmGeometry::focal
                              ? propagate_f_f(in, setup.focal_length, setup.lambda)
                              : propagate_2f_2f(in, setup.focal_length, setup.lambda);
    for (int det : {0, 3, 64, 90}) {
      std::complex<double> acc = 0.0;
      for (int kq = 0; kq < 128; ++kq)
        acc += kernel_spectrum(setup, Beam::idler, det, kq) * spec.at(0, kq);
      CHECK(std::abs(acc - idl_out.at(0, det)) < 1e-10);
    }

    // Position kernels agree with the spectral ones through the DFT.
    for (int det : {0, 11, 70}) {
      for (Beam arm : {Beam::signal, Beam::idler}) {
        std::complex<double> via_x = 0.0, via_q = 0.0;
        for (int jx = 0; jx < 128; ++jx)
          via_x += kernel_position(setup, arm, det, jx) * in.at(0, jx);
        for (int kq = 0; kq < 128; ++kq)
          via_q += kernel_spectrum(setup, arm, det, kq) * spec.at(0, kq);
        CHECK(std::abs(via_x - via_q) < 1e-10);
      }
    }
  }
}

TEST_CASE("setup validation") {
  const GridPtr grid = make_grid(64, 4e-6, 1, 1.0);
  ImagingSetup s = make_setup(grid, ArmGeometry::focal, 16e-6, 64e-6);
  s.fixed_point = 1.2345e-6; // off the focal lattice
  CHECK_THROWS_AS(s.validate(), ConfigError);
  s = make_setup(grid, ArmGeometry::focal, 16e-6, 64e-6);
  s.object[3] = 1.5;
  CHECK_THROWS_AS(s.validate(), ConfigError);
}

TEST_CASE("object profile file loading") {
  const GridPtr grid = make_grid(8, 4e-6, 1, 1.0);
  const std::string path = "test_object_profile.txt";
  {
    std::ofstream out(path);
    out << "# comment line\n";
    for (int j = 0; j < 8; ++j) out << (j % 2 ? 1.0 : 0.25) << "\n";
  }
  const auto profile = load_object_profile(path, *grid);
  CHECK(profile.size() == 8);
  CHECK(profile[0].real() == doctest::Approx(0.25));
  CHECK(profile[1].real() == doctest::Approx(1.0));
  {
    std::ofstream out(path);
    out << "0.5\n0.5\n"; // wrong count
  }
  CHECK_THROWS_AS(load_object_profile(path, *grid), ConfigError);
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_object_profile(path, *grid), ConfigError);
}
