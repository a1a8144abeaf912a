#include <doctest.h>

#include <cmath>
#include <numbers>

#include "optfbp/errors.hpp"
#include "optfbp/noise.hpp"
#include "optfbp/phantoms.hpp"
#include "optfbp/random.hpp"
#include "oracles.hpp"

using namespace optfbp;

TEST_CASE("noise level is relative to the sinogram mean") {
  const auto geo = geometry_from_angles(90, 1.0);
  Sinogram two(geo);
  for (auto& v : two.values()) v = 2.0;
  CHECK(noise_level(0.1, two) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(noise_level(0.0, two) == 0.0);
  CHECK_THROWS_AS(noise_level(-0.1, two), ParameterError);

  const auto g360 = geometry_from_angles(360, 1.0);
  const auto sl = radon_sample(shepp_logan(), g360);
  double sum = 0.0;
  for (double v : sl.values()) sum += std::abs(v);
  const double m = sum / static_cast<double>(sl.values().size());
  CHECK(noise_level(0.05, sl) == doctest::Approx(0.05 * m).epsilon(1e-13));
}

TEST_CASE("uniform and normal streams") {
  for (std::uint64_t c = 0; c < 10000; ++c) {
    const double u = random::uniform(42, c);
    CHECK(u > 0.0);
    CHECK(u < 1.0);
  }
  CHECK(random::normal(1, 2, 3, 4) == random::normal(1, 2, 3, 4));
  CHECK(random::normal(1, 2, 3, 4) != random::normal(2, 2, 3, 4));
  CHECK(random::normal(1, 2, 3, 4) != random::normal(1, 2, 4, 3));
}

TEST_CASE("white noise") {
  const auto geo = geometry_from_angles(90, 1.0);
  const auto clean = radon_sample(shepp_logan(), geo);

  const auto same = add_white_noise(clean, NoiseSpec{0.0, 0.0, 9});
  CHECK(std::equal(same.values().begin(), same.values().end(), clean.values().begin()));

  const auto a = add_white_noise(clean, NoiseSpec{0.3, 0.1, 9});
  const auto b = add_white_noise(clean, NoiseSpec{0.3, 0.1, 9});
  const auto c = add_white_noise(clean, NoiseSpec{0.3, 0.1, 10});
  CHECK(std::equal(a.values().begin(), a.values().end(), b.values().begin()));
  CHECK_FALSE(std::equal(a.values().begin(), a.values().end(), c.values().begin()));

  // 1001 x 1571 = 1.57e6 unit-variance samples.
  const auto big = geometry_from_angles(1571, 1.0);
  REQUIRE(big.radial_half_count == 500);
  const auto xi = add_white_noise(Sinogram(big), NoiseSpec{1.0, 0.0, 2024});
  double mean = 0.0;
  for (double v : xi.values()) mean += v;
  mean /= static_cast<double>(xi.values().size());
  double var = 0.0;
  for (double v : xi.values()) var += (v - mean) * (v - mean);
  var /= static_cast<double>(xi.values().size() - 1);
  CHECK(std::abs(mean) < 4e-3);
  CHECK(std::abs(var - 1.0) < 0.01);
}

TEST_CASE("discrete noise power") {
  ParallelGeometry geo{.n_angles = 1, .radial_half_count = 100, .radial_step = 0.01, .support_radius = 1.0,
                       .bandwidth = std::numbers::pi / 0.01};
  CHECK(expected_discrete_noise_power(geo, 1.0) == doctest::Approx(0.0201).epsilon(1e-13));
  CHECK(expected_discrete_noise_power(geo, 0.0) == 0.0);
  CHECK(expected_discrete_noise_power(geo, 2.0, 0.5) == doctest::Approx(0.0402).epsilon(1e-13));
}

TEST_CASE("white-noise spectrum is flat with zero mean") {
  const auto geo = geometry_from_angles(100, 1.0);  // M = 31
  const double eps = 0.7;
  const double expected = expected_discrete_noise_power(geo, eps);
  const std::vector<double> freqs = {0.0, 0.13 * geo.bandwidth, 0.4 * geo.bandwidth, 0.77 * geo.bandwidth,
                                     geo.bandwidth};
  std::vector<double> power(freqs.size(), 0.0);
  std::vector<std::complex<double>> mean(freqs.size());
  const int rows = 10000;
  for (int r = 0; r < rows / geo.n_angles; ++r) {
    const auto xi = add_white_noise(Sinogram(geo), NoiseSpec{eps, 0.0, 500u + static_cast<std::uint64_t>(r)});
    for (std::int64_t j = 0; j < geo.n_angles; ++j) {
      for (std::size_t k = 0; k < freqs.size(); ++k) {
        const auto f = dft_radial(xi, freqs[k], j);
        power[k] += std::norm(f);
        mean[k] += f;
      }
    }
  }
  for (std::size_t k = 0; k < freqs.size(); ++k) {
    CHECK(power[k] / rows == doctest::Approx(expected).epsilon(0.03));
    CHECK(std::abs(mean[k] / static_cast<double>(rows)) < 4.0 * std::sqrt(expected / rows));
  }
}

TEST_CASE("OU spectrum closed form") {
  const OUCovariance unit{1.0, 1.0};
  CHECK(ou_spectrum_expectation(0.0, unit) == doctest::Approx(1.0 + (std::exp(-2.0) - 1.0) / 2).epsilon(1e-14));
  CHECK(ou_spectrum_expectation(0.0, unit) == doctest::Approx(0.5676676416183064).epsilon(1e-12));

  for (auto [sigma, a, R] : {std::tuple{0.0, 1.0, 1.0}, {3.0, 2.0, 1.0}, {5.0, 0.5, 2.0}, {0.7, 4.0, 0.3},
                             {20.0, 3.0, 1.5}}) {
    const double oracle = oracle::ou_spectrum(sigma, a, R);
    CHECK(ou_spectrum_expectation(sigma, OUCovariance{a, R}) == doctest::Approx(oracle).epsilon(1e-6));
  }
  // Frozen from the quadrature oracle; the printed a^4 + 2a^2 sigma^2 + sigma^2
  // denominator would give 0.718 here.
  CHECK(ou_spectrum_expectation(3.0, OUCovariance{2.0, 1.0}) == doctest::Approx(0.674240).epsilon(1e-5));

  for (double sigma : {0.3, 2.0, 17.0, 400.0}) {
    CHECK(ou_spectrum_expectation(sigma, unit) == ou_spectrum_expectation(-sigma, unit));
  }
  CHECK(ou_spectrum_expectation(1e3, unit) <= 1e-4 * ou_spectrum_expectation(0.0, unit));
  CHECK(ou_spectrum_expectation(2.0, OUCovariance{1e4, 1.0}) > ou_spectrum_expectation(2.0, OUCovariance{1e2, 1.0}));
  CHECK_THROWS_AS(ou_spectrum_expectation(1.0, OUCovariance{0.0, 1.0}), ParameterError);
}

TEST_CASE("OU kernel mass approaches 2R") {
  const double R = 1.0;
  double previous_gap = 1e9;
  for (double a : {10.0, 100.0, 1000.0}) {
    const double mass = oracle::lag_integral(0.0, a, R);
    const double gap = 2 * R - mass;
    CHECK(gap > 0.0);
    CHECK(gap < previous_gap);
    CHECK(gap <= 1.0 / a + 1e-12);
    previous_gap = gap;
  }
}

TEST_CASE("OU field moments, exact sampler") {
  const auto geo = geometry_from_angles(12, 1.0);  // 7 x 12 lattice
  const OUCovariance cov{2.0, 1.0};
  const int n = 10000;
  double mean = 0.0, var = 0.0, adjacent = 0.0;
  std::int64_t pairs = 0;
  for (int r = 0; r < n; ++r) {
    const auto x = sample_ou_field(geo, cov, static_cast<std::uint64_t>(r));
    mean += x(0, 5);
    var += x(0, 5) * x(0, 5);
    for (std::int64_t j = 0; j < geo.n_angles; ++j) {
      for (std::int64_t i = -3; i < 3; ++i) {
        adjacent += x(i, j) * x(i + 1, j);
        ++pairs;
      }
    }
  }
  mean /= n;
  var /= n;
  adjacent /= static_cast<double>(pairs);
  CHECK(std::abs(mean) < 4.0 * std::sqrt(cov.peak() / n));
  CHECK(var == doctest::Approx(cov.peak()).epsilon(0.05));
  CHECK(adjacent == doctest::Approx(cov.factor(geo.radial_step) * cov.factor(0.0)).epsilon(0.05));
}

TEST_CASE("OU field moments, recursive sampler") {
  const auto geo = geometry_from_angles(200, 1.0);  // 127 x 200 > 4096 points
  REQUIRE(geo.radial_count() * geo.n_angles > kExactSamplingLimit);
  const OUCovariance cov{30.0, 1.0};
  double var = 0.0, radial = 0.0, angular = 0.0;
  std::int64_t count = 0;
  for (int r = 0; r < 20; ++r) {
    const auto x = sample_ou_field(geo, cov, 77u + static_cast<std::uint64_t>(r));
    for (std::int64_t j = 0; j + 1 < geo.n_angles; ++j) {
      for (std::int64_t i = -geo.radial_half_count; i < geo.radial_half_count; ++i) {
        var += x(i, j) * x(i, j);
        radial += x(i, j) * x(i + 1, j);
        angular += x(i, j) * x(i, j + 1);
        ++count;
      }
    }
  }
  var /= static_cast<double>(count);
  radial /= static_cast<double>(count);
  angular /= static_cast<double>(count);
  CHECK(var == doctest::Approx(cov.peak()).epsilon(0.05));
  CHECK(radial == doctest::Approx(cov.factor(geo.radial_step) * cov.factor(0.0)).epsilon(0.05));
  CHECK(angular == doctest::Approx(cov.factor(0.0) * cov.factor(geo.angle(1))).epsilon(0.05));
}

TEST_CASE("box covariance narrower than the spacing decorrelates samples") {
  const auto geo = geometry_from_angles(12, 1.0);
  const OUCovariance cov{100.0, 1.0, CovarianceKind::box};
  REQUIRE(cov.factor(geo.radial_step) == 0.0);
  const int n = 10000;
  double cross = 0.0, var = 0.0;
  for (int r = 0; r < n; ++r) {
    const auto x = sample_ou_field(geo, cov, 900u + static_cast<std::uint64_t>(r));
    cross += x(0, 3) * x(1, 3);
    var += x(0, 3) * x(0, 3);
  }
  cross /= n;
  var /= n;
  CHECK(var == doctest::Approx(cov.peak()).epsilon(0.05));
  CHECK(std::abs(cross) < 4.0 * cov.peak() / std::sqrt(n));

  const OUCovariance wide{1.0, 1.0, CovarianceKind::box};
  CHECK_THROWS_AS(sample_ou_field(geometry_from_angles(200, 1.0), wide, 1), FactorizationError);
  CHECK_THROWS_AS(sample_ou_field(geo, OUCovariance{-1.0, 1.0}, 1), ParameterError);
}
