#include "optfbp/noise.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <cmath>
#include <vector>

#include "optfbp/errors.hpp"
#include "optfbp/phantoms.hpp"
#include "optfbp/random.hpp"

namespace optfbp {
namespace {

// Stream tags keep white noise and OU fields from sharing counters.
constexpr std::uint64_t kWhiteStream = 0x57484954ULL;
constexpr std::uint64_t kFieldStream = 0x4f554649ULL;

Eigen::MatrixXd axis_covariance(const OUCovariance& cov, std::int64_t n, double spacing) {
  Eigen::MatrixXd c(n, n);
  for (std::int64_t r = 0; r < n; ++r)
    for (std::int64_t k = 0; k < n; ++k) c(r, k) = cov.factor(static_cast<double>(r - k) * spacing);
  return c;
}

Eigen::MatrixXd cholesky_factor(Eigen::MatrixXd c, const char* axis) {
  c.diagonal().array() += 1e-12 * c.diagonal().maxCoeff();
  Eigen::LLT<Eigen::MatrixXd> llt(c);
  if (llt.info() != Eigen::Success) {
    throw FactorizationError(std::string(axis) + " covariance is not positive definite");
  }
  return llt.matrixL();
}

// x <- L x for the AR(1) Cholesky factor L of (peak * rho^{|r-k|}), along a strided line.
void ar_filter(double* x, std::int64_t n, std::int64_t stride, double rho, double peak) {
  const double innovation = std::sqrt(1.0 - rho * rho);
  const double scale = std::sqrt(peak);
  double previous = scale * x[0];
  x[0] = previous;
  for (std::int64_t k = 1; k < n; ++k) {
    previous = rho * previous + scale * innovation * x[k * stride];
    x[k * stride] = previous;
  }
}

}  // namespace

double OUCovariance::factor(double t) const {
  const double at = std::abs(t);
  if (kind == CovarianceKind::exponential) return 0.5 * rate * std::exp(-rate * at);
  return at <= 0.5 / rate ? rate : 0.0;
}

double noise_level(double relative_level, const Sinogram& sinogram) {
  if (relative_level < 0.0) throw ParameterError("p_noise must be non-negative");
  return relative_level * sinogram_mean(sinogram);
}

Sinogram add_white_noise(const Sinogram& sinogram, const NoiseSpec& spec) {
  if (spec.level < 0.0) throw ParameterError("noise level must be non-negative");
  Sinogram out = sinogram;
  if (spec.level == 0.0) return out;
  const auto& g = sinogram.geometry();
#pragma omp parallel for schedule(static)
  for (std::int64_t j = 0; j < g.n_angles; ++j) {
    for (std::int64_t i = -g.radial_half_count; i <= g.radial_half_count; ++i) {
      out(i, j) += spec.level * random::normal(spec.seed, kWhiteStream, random::index_counter(i),
                                               random::index_counter(j));
    }
  }
  return out;
}

Sinogram sample_ou_field(const ParallelGeometry& geometry, const OUCovariance& covariance, std::uint64_t seed) {
  if (!(covariance.rate > 0.0)) throw ParameterError("covariance rate a must be positive");
  geometry.validate();
  const std::int64_t n_radial = geometry.radial_count();
  const std::int64_t n_angles = geometry.n_angles;
  const double angle_step = geometry.angle(1);

  // White field Z, radial index fastest (same layout as Sinogram storage).
  Eigen::MatrixXd z(n_radial, n_angles);
  for (std::int64_t j = 0; j < n_angles; ++j)
    for (std::int64_t u = 0; u < n_radial; ++u)
      z(u, j) = random::normal(seed, kFieldStream, static_cast<std::uint64_t>(u), static_cast<std::uint64_t>(j));

  // Covariance = C_s (x) C_phi, so X = L_s Z L_phi^T has exactly that covariance.
  Eigen::MatrixXd x;
  if (n_radial * n_angles <= kExactSamplingLimit) {
    const auto l_radial = cholesky_factor(axis_covariance(covariance, n_radial, geometry.radial_step), "radial");
    const auto l_angular = cholesky_factor(axis_covariance(covariance, n_angles, angle_step), "angular");
    x = l_radial * z * l_angular.transpose();
  } else if (covariance.kind == CovarianceKind::exponential) {
    x = std::move(z);
    const double peak = covariance.factor(0.0);
    const double rho_radial = std::exp(-covariance.rate * geometry.radial_step);
    const double rho_angular = std::exp(-covariance.rate * angle_step);
    for (std::int64_t j = 0; j < n_angles; ++j) ar_filter(x.col(j).data(), n_radial, 1, rho_radial, peak);
    for (std::int64_t u = 0; u < n_radial; ++u) ar_filter(x.data() + u, n_angles, n_radial, rho_angular, peak);
  } else {
    // Box covariance: exact only when neighbours are uncorrelated.
    if (covariance.factor(geometry.radial_step) != 0.0 || covariance.factor(angle_step) != 0.0) {
      throw FactorizationError("box covariance wider than the lattice spacing needs the exact path (<= 4096 points)");
    }
    x = std::sqrt(covariance.peak()) * z;
  }

  std::vector<double> values(x.data(), x.data() + x.size());
  return Sinogram(geometry, std::move(values));
}

double ou_spectrum_expectation(double frequency, const OUCovariance& covariance) {
  if (covariance.kind != CovarianceKind::exponential) {
    throw ParameterError("closed-form spectrum is only available for the exponential covariance");
  }
  const double a = covariance.rate;
  const double r = covariance.support_radius;
  if (!(a > 0.0) || !(r > 0.0)) throw ParameterError("need a > 0 and R > 0");
  const double s = std::abs(frequency);
  const double a2 = a * a;
  const double s2 = s * s;
  const double decay = std::exp(-2.0 * a * r);
  const double denominator = (a2 + s2) * (a2 + s2);
  const double oscillating =
      0.5 * (decay * std::cos(2.0 * r * s) - 1.0) * (a2 - s2) - a * s * decay * std::sin(2.0 * r * s);
  return a2 * (a * r / (a2 + s2) + oscillating / denominator);
}

double expected_discrete_noise_power(const ParallelGeometry& geometry, double level, double delta0) {
  if (level < 0.0) throw ParameterError("noise level must be non-negative");
  if (!(delta0 > 0.0)) throw ParameterError("delta0 must be positive");
  const double h = geometry.radial_step;
  return h * h * level * level * static_cast<double>(geometry.radial_count()) * delta0;
}

}  // namespace optfbp
