#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "optfbp/filters.hpp"
#include "optfbp/geometry.hpp"
#include "optfbp/image.hpp"

namespace optfbp {

/// Filtered rows (F^{-1}A_L *_D g)(s_l, phi_j) on the extended radial range
/// l in [-M_ext, M_ext], angle-major.
class FilteredSinogram {
 public:
  explicit FilteredSinogram(const ParallelGeometry& geometry);

  const ParallelGeometry& geometry() const { return geometry_; }
  std::int64_t extended_half_count() const { return half_; }
  std::int64_t row_length() const { return 2 * half_ + 1; }

  double operator()(std::int64_t l, std::int64_t j) const { return values_[offset(l, j)]; }
  double& operator()(std::int64_t l, std::int64_t j) { return values_[offset(l, j)]; }

  std::span<const double> row(std::int64_t j) const {
    return std::span<const double>(values_).subspan(static_cast<std::size_t>(j * row_length()),
                                                    static_cast<std::size_t>(row_length()));
  }
  std::span<double> row(std::int64_t j) {
    return std::span<double>(values_).subspan(static_cast<std::size_t>(j * row_length()),
                                              static_cast<std::size_t>(row_length()));
  }

 private:
  std::size_t offset(std::int64_t l, std::int64_t j) const {
    return static_cast<std::size_t>(j * row_length() + (l + half_));
  }

  ParallelGeometry geometry_;
  std::int64_t half_;
  std::vector<double> values_;
};

enum class Interpolation { linear, cubic_spline };

/// h * sum_i K(l - i) g(i, j) with K the trapezoid-rule inverse Fourier
/// transform of the filter samples on the grid; one padded FFT per row.
FilteredSinogram filter_rows(const Sinogram& sinogram, const FilterSpec& filter, const FrequencyGrid& grid);

/// (1/2) (1/N_phi) sum_j I[row_j](x cos phi_j + y sin phi_j) at every pixel
/// center of an n x n grid over [-R, R]^2. Points outside the extended
/// radial range contribute 0.
Image back_project(const FilteredSinogram& filtered, std::int64_t n_pixels, Interpolation interpolation);

/// back_project(filter_rows(sinogram, filter, grid), n_pixels, interpolation).
Image reconstruct(const Sinogram& sinogram, const FilterSpec& filter, const FrequencyGrid& grid,
                  std::int64_t n_pixels, Interpolation interpolation);

/// Second derivatives of the natural cubic spline through unit-spaced samples.
std::vector<double> natural_spline_moments(std::span<const double> samples);

}  // namespace optfbp
