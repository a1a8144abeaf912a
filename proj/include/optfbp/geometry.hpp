#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace optfbp {

/// Parallel-beam sampling lattice.
///
/// Radial samples s_i = i*h for i in [-M, M], angles phi_j = j*pi/N_phi for
/// j in [0, N_phi). The bandwidth L couples the filter cutoff to the lattice.
struct ParallelGeometry {
  std::int64_t n_angles = 0;
  std::int64_t radial_half_count = 0;  // M
  double radial_step = 0.0;            // h
  double support_radius = 0.0;         // R
  double bandwidth = 0.0;              // L

  std::int64_t radial_count() const { return 2 * radial_half_count + 1; }
  double radial_position(std::int64_t i) const { return static_cast<double>(i) * radial_step; }
  double angle(std::int64_t j) const;

  /// Throws GeometryError unless all fields are positive and M*h >= R.
  void validate() const;

  bool operator==(const ParallelGeometry&) const = default;
};

/// Builds the lattice from the number of angles using
/// M = floor(N_phi/pi), L = pi*M/R, h = pi/L.
ParallelGeometry geometry_from_angles(std::int64_t n_angles, double support_radius);

/// Real sample matrix on a ParallelGeometry lattice.
///
/// Storage is angle-major: values()[j*(2M+1) + (i+M)]. All accessors take the
/// signed radial index i.
class Sinogram {
 public:
  Sinogram() = default;
  explicit Sinogram(const ParallelGeometry& geometry);
  Sinogram(const ParallelGeometry& geometry, std::vector<double> values);

  const ParallelGeometry& geometry() const { return geometry_; }

  double operator()(std::int64_t i, std::int64_t j) const { return values_[offset(i, j)]; }
  double& operator()(std::int64_t i, std::int64_t j) { return values_[offset(i, j)]; }

  /// Radial row for angle j, indexed by i+M.
  std::span<const double> row(std::int64_t j) const;
  std::span<double> row(std::int64_t j);

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

 private:
  std::size_t offset(std::int64_t i, std::int64_t j) const {
    return static_cast<std::size_t>(j * geometry_.radial_count() + (i + geometry_.radial_half_count));
  }

  ParallelGeometry geometry_{};
  std::vector<double> values_;
};

/// Equispaced frequency samples sigma_k = k * 2*pi/(P*h), k = -P/2..P/2.
///
/// The two end points coincide modulo the FFT period; they are kept so that
/// the grid is symmetric about 0. Index 0 of frequencies() is k = -P/2.
class FrequencyGrid {
 public:
  FrequencyGrid() = default;
  explicit FrequencyGrid(const ParallelGeometry& geometry);

  std::int64_t pad_length() const { return pad_length_; }
  double spacing() const { return spacing_; }
  double radial_step() const { return radial_step_; }
  std::int64_t radial_half_count() const { return radial_half_count_; }
  std::size_t size() const { return frequencies_.size(); }
  std::span<const double> frequencies() const { return frequencies_; }
  double frequency(std::size_t k) const { return frequencies_[k]; }

  /// Position of sigma_k's mirror image -sigma_k.
  std::size_t mirror(std::size_t k) const { return size() - 1 - k; }

  /// Whether this grid was built for the given lattice.
  bool matches(const ParallelGeometry& geometry) const;

 private:
  std::int64_t pad_length_ = 0;
  std::int64_t radial_half_count_ = 0;
  double radial_step_ = 0.0;
  double spacing_ = 0.0;
  std::vector<double> frequencies_;
};

/// Half-width of the extended radial index range used after filtering:
/// ceil(sqrt(2)*M) + 2.
std::int64_t extended_half_count(std::int64_t radial_half_count);

/// Smallest power of two >= 2*(2*M_ext + 1).
std::int64_t pad_length_for(std::int64_t radial_half_count);

/// F_D g(sigma, j) = h * sum_i g(i,j) exp(-i s_i sigma), by direct summation.
std::complex<double> dft_radial(const Sinogram& sinogram, double frequency, std::int64_t angle_index);

/// F_D on every grid frequency and angle, via one zero-padded FFT per angle.
///
/// Result is angle-major: out[j*grid.size() + k].
class RadialSpectrum {
 public:
  RadialSpectrum(std::size_t n_frequencies, std::int64_t n_angles)
      : n_frequencies_(n_frequencies), n_angles_(n_angles),
        values_(n_frequencies * static_cast<std::size_t>(n_angles)) {}

  std::complex<double> operator()(std::size_t k, std::int64_t j) const {
    return values_[static_cast<std::size_t>(j) * n_frequencies_ + k];
  }
  std::complex<double>& operator()(std::size_t k, std::int64_t j) {
    return values_[static_cast<std::size_t>(j) * n_frequencies_ + k];
  }
  std::size_t n_frequencies() const { return n_frequencies_; }
  std::int64_t n_angles() const { return n_angles_; }

 private:
  std::size_t n_frequencies_;
  std::int64_t n_angles_;
  std::vector<std::complex<double>> values_;
};

RadialSpectrum dft_radial_grid(const Sinogram& sinogram, const FrequencyGrid& grid);

}  // namespace optfbp
