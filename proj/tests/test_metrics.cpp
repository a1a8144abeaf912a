#include <doctest.h>

#include <cmath>
#include <random>

#include "optfbp/errors.hpp"
#include "optfbp/metrics.hpp"

using namespace optfbp;

namespace {

Image random_image(std::int64_t n, std::uint64_t seed, double offset = 0.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  Image img(n, 1.0);
  for (auto& v : img.values()) v = dist(rng) + offset;
  return img;
}

// Wang et al. SSIM with an explicit 2-D Gaussian window and biased moments.
double ssim_oracle(const Image& a, const Image& b) {
  const std::int64_t n = a.n_pixels();
  long double w[11][11];
  long double wsum = 0;
  for (int u = 0; u < 11; ++u)
    for (int v = 0; v < 11; ++v) wsum += w[u][v] = std::exp(-((u - 5) * (u - 5) + (v - 5) * (v - 5)) / 4.5L);
  double lo = 1e300, hi = -1e300;
  for (double v : b.values()) lo = std::min(lo, v), hi = std::max(hi, v);
  const long double c1 = std::pow(0.01L * (hi - lo), 2), c2 = std::pow(0.03L * (hi - lo), 2);
  long double total = 0;
  std::int64_t count = 0;
  for (std::int64_t p = 0; p + 11 <= n; ++p) {
    for (std::int64_t q = 0; q + 11 <= n; ++q) {
      long double mx = 0, my = 0, xx = 0, yy = 0, xy = 0;
      for (int u = 0; u < 11; ++u) {
        for (int v = 0; v < 11; ++v) {
          const long double wt = w[u][v] / wsum, x = a(p + u, q + v), y = b(p + u, q + v);
          mx += wt * x, my += wt * y, xx += wt * x * x, yy += wt * y * y, xy += wt * x * y;
        }
      }
      const long double vx = xx - mx * mx, vy = yy - my * my, cxy = xy - mx * my;
      total += (2 * mx * my + c1) * (2 * cxy + c2) / ((mx * mx + my * my + c1) * (vx + vy + c2));
      ++count;
    }
  }
  return static_cast<double>(total / count);
}

}  // namespace

TEST_CASE("mse") {
  const auto a = random_image(37, 1);
  const auto b = random_image(37, 2);
  CHECK(mse(a, a) == 0.0);

  Image shifted = a;
  for (auto& v : shifted.values()) v += 0.3;
  CHECK(mse(a, shifted) == doctest::Approx(0.09).epsilon(1e-12));

  long double sum = 0;
  for (std::int64_t p = 0; p < 37; ++p)
    for (std::int64_t q = 0; q < 37; ++q) sum += std::pow(static_cast<long double>(a(p, q)) - b(p, q), 2);
  CHECK(std::abs(mse(a, b) - static_cast<double>(sum / (37 * 37))) <= 1e-12);
  CHECK(mse(a, b) == mse(b, a));

  long double masked = 0;
  std::int64_t inside = 0;
  for (std::int64_t p = 0; p < 37; ++p) {
    for (std::int64_t q = 0; q < 37; ++q) {
      if (std::hypot(a.center(q), a.center(p)) <= 1.0) {
        masked += std::pow(static_cast<long double>(a(p, q)) - b(p, q), 2);
        ++inside;
      }
    }
  }
  CHECK(std::abs(mse(a, b, true) - static_cast<double>(masked / inside)) <= 1e-12);

  CHECK_THROWS_AS(mse(a, random_image(36, 1)), DimensionError);
}

TEST_CASE("ssim") {
  const auto a = random_image(40, 5);
  const auto b = random_image(40, 6);
  CHECK(ssim(a, a) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(ssim(a, b) == doctest::Approx(ssim_oracle(a, b)).epsilon(1e-10));

  Image blurred = a;
  for (std::int64_t p = 1; p < 39; ++p)
    for (std::int64_t q = 1; q < 39; ++q) blurred(p, q) = 0.5 * a(p, q) + 0.125 * (a(p - 1, q) + a(p + 1, q) + a(p, q - 1) + a(p, q + 1));
  CHECK(ssim(blurred, a) == doctest::Approx(ssim_oracle(blurred, a)).epsilon(1e-10));

  CHECK(ssim(a, b, SsimRange::pooled) == ssim(b, a, SsimRange::pooled));

  Image checker(32, 1.0), inverted(32, 1.0);
  for (std::int64_t p = 0; p < 32; ++p) {
    for (std::int64_t q = 0; q < 32; ++q) {
      checker(p, q) = (p + q) % 2 == 0 ? 1.0 : -1.0;
      inverted(p, q) = -checker(p, q);
    }
  }
  CHECK(ssim(inverted, checker) < 0.0);

  Image bright = a;
  for (auto& v : bright.values()) v += 5.0;
  CHECK(ssim(bright, a) < 1.0);

  CHECK_THROWS_AS(ssim(random_image(10, 1), random_image(10, 2)), DimensionError);
  CHECK_THROWS_AS(ssim(a, random_image(41, 2)), DimensionError);
}

TEST_CASE("evaluate bundles both metrics") {
  const auto a = random_image(20, 7);
  const auto b = random_image(20, 8);
  const auto report = evaluate(a, b, true);
  CHECK(report.mse == mse(a, b, true));
  CHECK(report.ssim == ssim(a, b));
  CHECK(report.n_pixels == 20);
  CHECK(report.masked);
  CHECK(report.ssim <= 1.0);
}
