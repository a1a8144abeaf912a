#pragma once

#include <cstdint>

#include "optfbp/geometry.hpp"

namespace optfbp {

/// Measurement noise: iid Normal(0, level^2) per lattice sample.
struct NoiseSpec {
  double level = 0.0;           // epsilon (standard deviation)
  double relative_level = 0.0;  // p_noise, epsilon = p_noise * mean |R f|
  std::uint64_t seed = 0;
};

enum class CovarianceKind {
  exponential,  // delta_a(t) = (a/2) exp(-a|t|), Ornstein-Uhlenbeck
  box,          // delta_a(t) = a on |t| <= 1/(2a), 0 elsewhere
};

/// Separable covariance delta_a(s, phi) = delta_a(s) * delta_a(phi) of an
/// approximate white noise field; each 1-D factor integrates to one.
struct OUCovariance {
  double rate = 1.0;            // a
  double support_radius = 1.0;  // R
  CovarianceKind kind = CovarianceKind::exponential;

  /// 1-D factor delta_a(t).
  double factor(double t) const;
  /// delta_a(s, phi).
  double operator()(double s, double phi) const { return factor(s) * factor(phi); }
  /// delta_a(0, 0).
  double peak() const { return factor(0.0) * factor(0.0); }
};

/// epsilon = p_noise * sinogram_mean(sinogram).
double noise_level(double relative_level, const Sinogram& sinogram);

/// Adds epsilon * xi_{i,j}, xi drawn from the counter stream keyed by (seed, i, j).
Sinogram add_white_noise(const Sinogram& sinogram, const NoiseSpec& spec);

/// Lattice points at or below which sample_ou_field factorizes exactly.
inline constexpr std::int64_t kExactSamplingLimit = 4096;

/// One zero-mean Gaussian realization with covariance delta_a(s_i - s_k, phi_j - phi_l).
/// The angular factor is not periodized.
Sinogram sample_ou_field(const ParallelGeometry& geometry, const OUCovariance& covariance, std::uint64_t seed);

/// E|F h_a(sigma, 0, .)|^2 = int_{-R}^{R} int_{-R}^{R} delta_a(s - s', 0) exp(-i (s - s') sigma) ds ds'
/// for the exponential covariance, in closed form.
double ou_spectrum_expectation(double frequency, const OUCovariance& covariance);

/// E|F_D xi(sigma, j)|^2 = h^2 epsilon^2 (2M+1) delta0 for uncorrelated lattice noise.
double expected_discrete_noise_power(const ParallelGeometry& geometry, double level, double delta0 = 1.0);

}  // namespace optfbp
