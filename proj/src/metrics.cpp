#include "optfbp/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "optfbp/errors.hpp"

namespace optfbp {
namespace {

void require_same_shape(const Image& a, const Image& b) {
  if (a.n_pixels() != b.n_pixels()) {
    throw DimensionError("image sizes differ: " + std::to_string(a.n_pixels()) + " vs " +
                         std::to_string(b.n_pixels()));
  }
}

constexpr int kWindow = 11;

std::array<double, kWindow> gaussian_taps() {
  std::array<double, kWindow> taps{};
  double sum = 0.0;
  for (int k = 0; k < kWindow; ++k) {
    const double d = k - kWindow / 2;
    taps[static_cast<std::size_t>(k)] = std::exp(-d * d / (2.0 * 1.5 * 1.5));
    sum += taps[static_cast<std::size_t>(k)];
  }
  for (auto& t : taps) t /= sum;
  return taps;
}

// Separable 'valid' Gaussian filtering of an n x n field, output (n-10)^2.
std::vector<double> blur_valid(const std::vector<double>& field, std::int64_t n) {
  static const auto taps = gaussian_taps();
  const std::int64_t m = n - kWindow + 1;
  std::vector<double> rows(static_cast<std::size_t>(n * m));
  for (std::int64_t p = 0; p < n; ++p)
    for (std::int64_t q = 0; q < m; ++q) {
      double s = 0.0;
      for (int k = 0; k < kWindow; ++k) s += taps[static_cast<std::size_t>(k)] * field[static_cast<std::size_t>(p * n + q + k)];
      rows[static_cast<std::size_t>(p * m + q)] = s;
    }
  std::vector<double> out(static_cast<std::size_t>(m * m));
  for (std::int64_t p = 0; p < m; ++p)
    for (std::int64_t q = 0; q < m; ++q) {
      double s = 0.0;
      for (int k = 0; k < kWindow; ++k) s += taps[static_cast<std::size_t>(k)] * rows[static_cast<std::size_t>((p + k) * m + q)];
      out[static_cast<std::size_t>(p * m + q)] = s;
    }
  return out;
}

}  // namespace

double mse(const Image& a, const Image& b, bool mask_to_support) {
  require_same_shape(a, b);
  const std::int64_t n = a.n_pixels();
  const double r2 = a.extent() * a.extent();
  double sum = 0.0;
  std::int64_t counted = 0;
  for (std::int64_t p = 0; p < n; ++p) {
    const double y = a.center(p);
    for (std::int64_t q = 0; q < n; ++q) {
      if (mask_to_support) {
        const double x = a.center(q);
        if (x * x + y * y > r2) continue;
      }
      const double d = a(p, q) - b(p, q);
      sum += d * d;
      ++counted;
    }
  }
  return counted > 0 ? sum / static_cast<double>(counted) : 0.0;
}

double ssim(const Image& a, const Image& b, SsimRange range) {
  require_same_shape(a, b);
  const std::int64_t n = a.n_pixels();
  if (n < kWindow) throw DimensionError("ssim needs at least 11x11 pixels");

  const auto av = a.values();
  const auto bv = b.values();
  auto [bmin, bmax] = std::minmax_element(bv.begin(), bv.end());
  double lo = *bmin;
  double hi = *bmax;
  if (range == SsimRange::pooled) {
    auto [amin, amax] = std::minmax_element(av.begin(), av.end());
    lo = std::min(lo, *amin);
    hi = std::max(hi, *amax);
  }
  const double dynamic = hi - lo;
  const double c1 = (0.01 * dynamic) * (0.01 * dynamic);
  const double c2 = (0.03 * dynamic) * (0.03 * dynamic);

  const std::size_t size = av.size();
  std::vector<double> x(av.begin(), av.end()), y(bv.begin(), bv.end());
  std::vector<double> xx(size), yy(size), xy(size);
  for (std::size_t k = 0; k < size; ++k) {
    xx[k] = x[k] * x[k];
    yy[k] = y[k] * y[k];
    xy[k] = x[k] * y[k];
  }
  const auto mu_x = blur_valid(x, n);
  const auto mu_y = blur_valid(y, n);
  const auto e_xx = blur_valid(xx, n);
  const auto e_yy = blur_valid(yy, n);
  const auto e_xy = blur_valid(xy, n);

  double total = 0.0;
  for (std::size_t k = 0; k < mu_x.size(); ++k) {
    const double mx = mu_x[k];
    const double my = mu_y[k];
    const double vx = e_xx[k] - mx * mx;
    const double vy = e_yy[k] - my * my;
    const double cxy = e_xy[k] - mx * my;
    const double num = (2.0 * (mx * my) + c1) * (2.0 * cxy + c2);
    const double den = (mx * mx + my * my + c1) * (vx + vy + c2);
    total += num / den;
  }
  return total / static_cast<double>(mu_x.size());
}

MetricReport evaluate(const Image& reconstruction, const Image& truth, bool mask_to_support) {
  MetricReport report;
  report.mse = mse(reconstruction, truth, mask_to_support);
  report.ssim = ssim(reconstruction, truth);
  report.n_pixels = truth.n_pixels();
  report.masked = mask_to_support;
  return report;
}

}  // namespace optfbp
