#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "optfbp/errors.hpp"
#include "optfbp/geometry.hpp"
#include "oracles.hpp"

using namespace optfbp;

TEST_CASE("geometry from angles couples M, L and h") {
  const auto g360 = geometry_from_angles(360, 1.0);
  CHECK(g360.radial_half_count == 114);
  CHECK(g360.bandwidth == doctest::Approx(114 * std::numbers::pi).epsilon(1e-15));
  CHECK(g360.radial_step == doctest::Approx(1.0 / 114).epsilon(1e-15));
  CHECK(g360.n_angles == 360);

  const auto g90 = geometry_from_angles(90, 1.0);
  CHECK(g90.radial_half_count == 28);
  CHECK(g90.bandwidth == doctest::Approx(28 * std::numbers::pi).epsilon(1e-15));
  CHECK(g90.radial_step == doctest::Approx(1.0 / 28).epsilon(1e-15));

  CHECK_THROWS_AS(geometry_from_angles(3, 1.0), GeometryError);
  CHECK_THROWS_AS(geometry_from_angles(90, 0.0), GeometryError);

  for (std::int64_t n : {4, 7, 90, 180, 181, 360, 1000}) {
    for (double R : {0.5, 1.0, 3.7}) {
      const auto g = geometry_from_angles(n, R);
      CHECK(g.radial_half_count * g.radial_step == doctest::Approx(R).epsilon(1e-14));
      CHECK(g.radial_position(g.radial_half_count) == doctest::Approx(R).epsilon(1e-14));
      CHECK(g.angle(n - 1) < std::numbers::pi);
    }
  }
}

TEST_CASE("sinogram storage is angle-major with signed radial index") {
  const auto geo = geometry_from_angles(10, 1.0);  // M = 3
  Sinogram g(geo);
  CHECK(g.values().size() == 7u * 10u);
  g(-3, 0) = 1.0;
  g(3, 1) = 2.0;
  CHECK(g.values()[0] == 1.0);
  CHECK(g.values()[7 + 6] == 2.0);
  CHECK(g.row(1)[6] == 2.0);
  CHECK_THROWS_AS(Sinogram(geo, std::vector<double>(5)), DimensionError);
}

TEST_CASE("frequency grid layout") {
  const auto geo = geometry_from_angles(360, 1.0);
  const FrequencyGrid grid(geo);
  const auto M = geo.radial_half_count;
  const auto P = grid.pad_length();
  CHECK(P >= 2 * (2 * extended_half_count(M) + 1));
  CHECK((P & (P - 1)) == 0);
  CHECK(P / 2 < 2 * (2 * extended_half_count(M) + 1));
  CHECK(grid.size() == static_cast<std::size_t>(P + 1));
  CHECK(grid.spacing() == doctest::Approx(2 * std::numbers::pi / (P * geo.radial_step)));
  CHECK(grid.frequency(static_cast<std::size_t>(P / 2)) == 0.0);
  CHECK(grid.frequency(0) == doctest::Approx(-geo.bandwidth).epsilon(1e-13));
  CHECK(grid.frequency(grid.size() - 1) == doctest::Approx(geo.bandwidth).epsilon(1e-13));
  for (std::size_t k = 0; k < grid.size(); ++k) CHECK(grid.frequency(grid.mirror(k)) == -grid.frequency(k));
  CHECK(grid.matches(geo));
  CHECK_FALSE(grid.matches(geometry_from_angles(90, 1.0)));
}

TEST_CASE("dft_radial small cases") {
  ParallelGeometry geo{.n_angles = 1, .radial_half_count = 1, .radial_step = 0.5, .support_radius = 0.5,
                       .bandwidth = 2 * std::numbers::pi};
  Sinogram ones(geo, {1.0, 1.0, 1.0});
  CHECK(dft_radial(ones, 0.0, 0).real() == doctest::Approx(1.5));
  CHECK(dft_radial(ones, 0.0, 0).imag() == 0.0);

  Sinogram delta(geo, {0.0, 1.0, 0.0});
  for (double sigma : {-3.0, 0.0, 0.7, 11.0}) {
    CHECK(std::abs(dft_radial(delta, sigma, 0) - std::complex<double>(0.5, 0.0)) < 1e-15);
  }
  CHECK_THROWS_AS(dft_radial(ones, 0.0, 1), IndexError);
  CHECK_THROWS_AS(dft_radial(ones, 0.0, -1), IndexError);
}

TEST_CASE("dft_radial matches extended-precision summation") {
  const auto geo = geometry_from_angles(180, 1.0);
  const auto g = oracle::random_sinogram(geo, 11);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> freq(-geo.bandwidth, geo.bandwidth);
  std::uniform_int_distribution<std::int64_t> angle(0, geo.n_angles - 1);
  for (int t = 0; t < 50; ++t) {
    const double sigma = freq(rng);
    const auto j = angle(rng);
    const auto expected = oracle::dft(g, sigma, j);
    const auto got = dft_radial(g, sigma, j);
    const double scale = static_cast<double>(std::abs(expected));
    CHECK(std::abs(got - std::complex<double>(expected)) <= 1e-12 * scale);
  }
}

TEST_CASE("dft_radial is conjugate symmetric") {
  const auto geo = geometry_from_angles(90, 1.0);
  const auto g = oracle::random_sinogram(geo, 3);
  for (double sigma : {0.1, 3.3, 40.0, 87.0}) {
    const auto plus = dft_radial(g, sigma, 2);
    const auto minus = dft_radial(g, -sigma, 2);
    CHECK(minus == std::conj(plus));
  }
}

TEST_CASE("dft_radial_grid agrees with the direct transform") {
  const auto geo = geometry_from_angles(120, 1.0);
  const FrequencyGrid grid(geo);
  const auto g = oracle::random_sinogram(geo, 17);
  const auto spectrum = dft_radial_grid(g, grid);
  double worst = 0.0;
  for (std::int64_t j = 0; j < geo.n_angles; j += 7) {
    double peak = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) peak = std::max(peak, std::abs(dft_radial(g, grid.frequency(k), j)));
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const auto direct = dft_radial(g, grid.frequency(k), j);
      worst = std::max(worst, std::abs(spectrum(k, j) - direct) / std::max(std::abs(direct), 1e-3 * peak));
      CHECK(spectrum(grid.mirror(k), j) == std::conj(spectrum(k, j)));
    }
  }
  CHECK(worst < 1e-10);

  const Sinogram zero(geo);
  const auto empty = dft_radial_grid(zero, grid);
  for (std::size_t k = 0; k < grid.size(); ++k) CHECK(empty(k, 0) == std::complex<double>(0.0, 0.0));

  Sinogram delta(geo);
  delta(0, 4) = 1.0;
  const auto flat = dft_radial_grid(delta, grid);
  for (std::size_t k = 0; k < grid.size(); ++k) CHECK(std::abs(flat(k, 4)) == doctest::Approx(geo.radial_step));

  CHECK_THROWS_AS(dft_radial_grid(g, FrequencyGrid(geometry_from_angles(90, 1.0))), DimensionError);
}

TEST_CASE("discrete Rayleigh-Plancherel on the grid") {
  // Endpoint-halved trapezoid over one period is exact for |F_D g|^2.
  const auto geo = geometry_from_angles(200, 1.0);
  const FrequencyGrid grid(geo);
  const auto g = oracle::random_sinogram(geo, 23);
  const auto spectrum = dft_radial_grid(g, grid);
  for (std::int64_t j : {0, 50, 199}) {
    double lhs = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const double w = (k == 0 || k + 1 == grid.size()) ? 0.5 : 1.0;
      lhs += w * std::norm(spectrum(k, j)) * grid.spacing();
    }
    lhs /= 2 * std::numbers::pi;
    double rhs = 0.0;
    for (double v : g.row(j)) rhs += v * v;
    rhs *= geo.radial_step;
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-6));
  }
}
