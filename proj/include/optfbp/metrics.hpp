#pragma once

#include <cstdint>

#include "optfbp/image.hpp"

namespace optfbp {

struct MetricReport {
  double mse = 0.0;
  double ssim = 0.0;
  std::int64_t n_pixels = 0;
  bool masked = false;
};

/// Mean of (a - b)^2 over all pixels, or only over pixels whose center lies
/// in B_R(0) when mask_to_support is set.
double mse(const Image& a, const Image& b, bool mask_to_support = false);

enum class SsimRange {
  reference,  // D = max(b) - min(b)
  pooled,     // D = max(a, b) - min(a, b)
};

/// Single-scale SSIM: 11x11 Gaussian window (sigma 1.5), C1 = (0.01 D)^2,
/// C2 = (0.03 D)^2, averaged over all fully contained windows. b is the reference.
double ssim(const Image& a, const Image& b, SsimRange range = SsimRange::reference);

MetricReport evaluate(const Image& reconstruction, const Image& truth, bool mask_to_support = false);

}  // namespace optfbp
