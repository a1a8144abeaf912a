#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace optfbp {

/// Square n x n grid covering [-R, R]^2, row-major.
///
/// Pixel (p, q) has its center at (x, y) = R*((2q+1-n)/n, (2p+1-n)/n):
/// q runs along x, p along y, so row p increases downward when the grid is
/// written out top to bottom.
class Image {
 public:
  Image() = default;
  Image(std::int64_t n_pixels, double extent);
  Image(std::int64_t n_pixels, double extent, std::vector<double> values);

  std::int64_t n_pixels() const { return n_; }
  double extent() const { return extent_; }

  double operator()(std::int64_t p, std::int64_t q) const { return values_[static_cast<std::size_t>(p * n_ + q)]; }
  double& operator()(std::int64_t p, std::int64_t q) { return values_[static_cast<std::size_t>(p * n_ + q)]; }

  /// Physical coordinate of pixel center index (same map for x from q and y from p).
  double center(std::int64_t index) const {
    return extent_ * static_cast<double>(2 * index + 1 - n_) / static_cast<double>(n_);
  }

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

 private:
  std::int64_t n_ = 0;
  double extent_ = 0.0;
  std::vector<double> values_;
};

}  // namespace optfbp
