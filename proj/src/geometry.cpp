#include "optfbp/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "optfbp/errors.hpp"
#include "optfbp/fft.hpp"

namespace optfbp {

using std::numbers::pi;

double ParallelGeometry::angle(std::int64_t j) const {
  return static_cast<double>(j) * pi / static_cast<double>(n_angles);
}

void ParallelGeometry::validate() const {
  if (n_angles < 1) throw GeometryError("n_angles must be positive, got " + std::to_string(n_angles));
  if (radial_half_count < 1)
    throw GeometryError("radial half count M must be positive, got " + std::to_string(radial_half_count));
  if (!(radial_step > 0.0)) throw GeometryError("radial step h must be positive");
  if (!(support_radius > 0.0)) throw GeometryError("support radius R must be positive");
  if (!(bandwidth > 0.0)) throw GeometryError("bandwidth L must be positive");
  // M*h >= R up to the rounding of h = pi/L.
  if (static_cast<double>(radial_half_count) * radial_step < support_radius * (1.0 - 1e-12))
    throw GeometryError("radial samples do not cover the support: M*h < R");
}

ParallelGeometry geometry_from_angles(std::int64_t n_angles, double support_radius) {
  if (!(support_radius > 0.0)) throw GeometryError("support radius must be positive");
  const auto half = static_cast<std::int64_t>(std::floor(static_cast<double>(n_angles) / pi));
  if (half < 1) {
    throw GeometryError("n_angles = " + std::to_string(n_angles) +
                        " gives M = floor(n_angles/pi) = 0; need at least 4 angles");
  }
  ParallelGeometry g;
  g.n_angles = n_angles;
  g.radial_half_count = half;
  g.support_radius = support_radius;
  g.bandwidth = pi * static_cast<double>(half) / support_radius;
  g.radial_step = pi / g.bandwidth;
  g.validate();
  return g;
}

Sinogram::Sinogram(const ParallelGeometry& geometry)
    : geometry_(geometry),
      values_(static_cast<std::size_t>(geometry.radial_count() * geometry.n_angles), 0.0) {}

Sinogram::Sinogram(const ParallelGeometry& geometry, std::vector<double> values)
    : geometry_(geometry), values_(std::move(values)) {
  const auto expected = static_cast<std::size_t>(geometry.radial_count() * geometry.n_angles);
  if (values_.size() != expected) {
    throw DimensionError("sinogram needs " + std::to_string(expected) + " values, got " +
                         std::to_string(values_.size()));
  }
}

std::span<const double> Sinogram::row(std::int64_t j) const {
  const auto n = static_cast<std::size_t>(geometry_.radial_count());
  return std::span<const double>(values_).subspan(static_cast<std::size_t>(j) * n, n);
}

std::span<double> Sinogram::row(std::int64_t j) {
  const auto n = static_cast<std::size_t>(geometry_.radial_count());
  return std::span<double>(values_).subspan(static_cast<std::size_t>(j) * n, n);
}

std::int64_t extended_half_count(std::int64_t radial_half_count) {
  return static_cast<std::int64_t>(std::ceil(std::sqrt(2.0) * static_cast<double>(radial_half_count))) + 2;
}

std::int64_t pad_length_for(std::int64_t radial_half_count) {
  const std::int64_t needed = 2 * (2 * extended_half_count(radial_half_count) + 1);
  std::int64_t p = 1;
  while (p < needed) p *= 2;
  return p;
}

FrequencyGrid::FrequencyGrid(const ParallelGeometry& geometry)
    : pad_length_(pad_length_for(geometry.radial_half_count)),
      radial_half_count_(geometry.radial_half_count),
      radial_step_(geometry.radial_step) {
  spacing_ = 2.0 * pi / (static_cast<double>(pad_length_) * radial_step_);
  const std::int64_t half = pad_length_ / 2;
  frequencies_.reserve(static_cast<std::size_t>(pad_length_ + 1));
  for (std::int64_t k = -half; k <= half; ++k) frequencies_.push_back(static_cast<double>(k) * spacing_);
}

bool FrequencyGrid::matches(const ParallelGeometry& geometry) const {
  return radial_half_count_ == geometry.radial_half_count && radial_step_ == geometry.radial_step &&
         pad_length_ == pad_length_for(geometry.radial_half_count);
}

std::complex<double> dft_radial(const Sinogram& sinogram, double frequency, std::int64_t angle_index) {
  const auto& g = sinogram.geometry();
  if (angle_index < 0 || angle_index >= g.n_angles) {
    throw IndexError("angle index " + std::to_string(angle_index) + " outside [0, " +
                     std::to_string(g.n_angles) + ")");
  }
  std::complex<double> sum = 0.0;
  const auto row = sinogram.row(angle_index);
  for (std::int64_t i = -g.radial_half_count; i <= g.radial_half_count; ++i) {
    const double phase = -g.radial_position(i) * frequency;
    sum += row[static_cast<std::size_t>(i + g.radial_half_count)] * std::polar(1.0, phase);
  }
  return g.radial_step * sum;
}

RadialSpectrum dft_radial_grid(const Sinogram& sinogram, const FrequencyGrid& grid) {
  const auto& g = sinogram.geometry();
  if (!grid.matches(g)) throw DimensionError("frequency grid was built for a different lattice");
  const std::int64_t pad = grid.pad_length();
  const std::int64_t half = pad / 2;
  RadialSpectrum out(grid.size(), g.n_angles);

#pragma omp parallel for schedule(static)
  for (std::int64_t j = 0; j < g.n_angles; ++j) {
    std::vector<std::complex<double>> buffer(static_cast<std::size_t>(pad));
    const auto row = sinogram.row(j);
    for (std::int64_t i = -g.radial_half_count; i <= g.radial_half_count; ++i) {
      buffer[static_cast<std::size_t>((i + pad) % pad)] = row[static_cast<std::size_t>(i + g.radial_half_count)];
    }
    fft::forward(buffer);
    // Real input: fill sigma >= 0 and mirror, so F_D(-sigma) = conj(F_D(sigma)) holds bit-exactly.
    for (std::int64_t k = 0; k <= half; ++k) {
      const auto value = g.radial_step * buffer[static_cast<std::size_t>(k % pad)];
      out(static_cast<std::size_t>(half + k), j) = value;
      out(static_cast<std::size_t>(half - k), j) = std::conj(value);
    }
    out(static_cast<std::size_t>(half), j) = out(static_cast<std::size_t>(half), j).real();
    out(0, j) = out(0, j).real();
    out(static_cast<std::size_t>(2 * half), j) = out(0, j);
  }
  return out;
}

}  // namespace optfbp
