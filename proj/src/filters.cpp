#include "optfbp/filters.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "optfbp/errors.hpp"
#include "optfbp/io.hpp"

namespace optfbp {

using std::numbers::pi;

std::string Window::name() const {
  switch (kind) {
    case WindowKind::ram_lak: return "ram_lak";
    case WindowKind::shepp_logan: return "shepp_logan";
    case WindowKind::cosine: return "cosine";
    case WindowKind::hamming: return "hamming";
  }
  return "unknown";
}

double classical_window(const Window& window, double sigma) {
  if (window.kind == WindowKind::hamming && !(window.beta >= 0.5 && window.beta <= 1.0)) {
    throw ParameterError("hamming beta must lie in [1/2, 1], got " + std::to_string(window.beta));
  }
  const double a = std::abs(sigma);
  if (a > 1.0) return 0.0;
  switch (window.kind) {
    case WindowKind::ram_lak: return 1.0;
    case WindowKind::shepp_logan: {
      const double x = pi * a / 2.0;
      return x == 0.0 ? 1.0 : std::sin(x) / x;
    }
    case WindowKind::cosine: return std::cos(pi * a / 2.0);
    case WindowKind::hamming: return window.beta + (1.0 - window.beta) * std::cos(pi * a);
  }
  return 0.0;
}

FilterSpec filter_from_window(const Window& window, const FrequencyGrid& grid, double bandwidth) {
  if (!(bandwidth > 0.0)) throw ParameterError("bandwidth L must be positive");
  FilterSpec filter;
  filter.bandwidth = bandwidth;
  filter.provenance = FilterProvenance::classical;
  filter.window = window;
  filter.samples.reserve(grid.size());
  for (double sigma : grid.frequencies()) {
    filter.samples.push_back(std::abs(sigma) * classical_window(window, sigma / bandwidth));
  }
  return filter;
}

namespace {

FilterSpec optimized_from_data(const Sinogram& data, const ParallelGeometry& geometry, const FrequencyGrid& grid,
                               double level, FilterProvenance provenance) {
  if (level < 0.0) throw ParameterError("noise level must be non-negative");
  if (!(data.geometry() == geometry)) throw DimensionError("sinogram lattice differs from the given geometry");
  if (!grid.matches(geometry)) throw DimensionError("frequency grid was built for a different lattice");

  const double bandwidth = geometry.bandwidth;
  const double h = geometry.radial_step;
  const double noise_power = h * h * level * level * static_cast<double>(geometry.radial_count());

  FilterSpec filter;
  filter.bandwidth = bandwidth;
  filter.provenance = provenance;
  filter.samples.assign(grid.size(), 0.0);

  if (level == 0.0) {
    // No noise: the optimum is the ramp on [-L, L], including zero-spectrum bins.
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const double sigma = std::abs(grid.frequency(k));
      filter.samples[k] = sigma <= bandwidth ? sigma : 0.0;
    }
    return filter;
  }

  const auto spectrum = dft_radial_grid(data, grid);
  const double inv_angles = 1.0 / static_cast<double>(geometry.n_angles);
#pragma omp parallel for schedule(static)
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double sigma = std::abs(grid.frequency(k));
    if (sigma > bandwidth) continue;
    double power = 0.0;
    for (std::int64_t j = 0; j < geometry.n_angles; ++j) power += std::norm(spectrum(k, j));
    power *= inv_angles;
    filter.samples[k] = sigma * power / (power + noise_power);
  }
  return filter;
}

std::int64_t mirror_index(std::int64_t index, std::int64_t n) {
  const std::int64_t period = 2 * n;
  std::int64_t m = index % period;
  if (m < 0) m += period;
  return m < n ? m : period - 1 - m;
}

}  // namespace

FilterSpec optimized_filter_reference(const Sinogram& reference, const ParallelGeometry& geometry,
                                      const FrequencyGrid& grid, double level) {
  return optimized_from_data(reference, geometry, grid, level, FilterProvenance::optimized_reference);
}

FilterSpec optimized_filter_measured(const Sinogram& measurements, const ParallelGeometry& geometry,
                                     const FrequencyGrid& grid, double level) {
  return optimized_from_data(measurements, geometry, grid, level, FilterProvenance::optimized_measured);
}

Sinogram wiener_denoise(const Sinogram& sinogram, int kernel, std::optional<double> noise_variance) {
  if (kernel < 1 || kernel % 2 == 0) {
    throw ParameterError("wiener kernel must be odd and positive, got " + std::to_string(kernel));
  }
  if (noise_variance && *noise_variance < 0.0) throw ParameterError("noise variance must be non-negative");

  const auto& g = sinogram.geometry();
  const std::int64_t n_radial = g.radial_count();
  const std::int64_t n_angles = g.n_angles;
  const std::int64_t r = kernel / 2;
  const double count = static_cast<double>(kernel) * kernel;
  const auto in = sinogram.values();

  std::vector<double> mean(in.size());
  std::vector<double> variance(in.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t j = 0; j < n_angles; ++j) {
    for (std::int64_t u = 0; u < n_radial; ++u) {
      double sum = 0.0;
      for (std::int64_t dj = -r; dj <= r; ++dj) {
        const auto row = mirror_index(j + dj, n_angles) * n_radial;
        for (std::int64_t du = -r; du <= r; ++du) sum += in[static_cast<std::size_t>(row + mirror_index(u + du, n_radial))];
      }
      const double mu = sum / count;
      double squares = 0.0;
      for (std::int64_t dj = -r; dj <= r; ++dj) {
        const auto row = mirror_index(j + dj, n_angles) * n_radial;
        for (std::int64_t du = -r; du <= r; ++du) {
          const double d = in[static_cast<std::size_t>(row + mirror_index(u + du, n_radial))] - mu;
          squares += d * d;
        }
      }
      const auto idx = static_cast<std::size_t>(j * n_radial + u);
      mean[idx] = mu;
      variance[idx] = squares / count;
    }
  }

  double nv = 0.0;
  if (noise_variance) {
    nv = *noise_variance;
  } else {
    for (double v : variance) nv += v;
    nv /= static_cast<double>(variance.size());
  }

  Sinogram out = sinogram;
  if (nv == 0.0) return out;
  constexpr double tiny = 1e-300;
  auto values = out.values();
  for (std::size_t idx = 0; idx < values.size(); ++idx) {
    const double v = variance[idx];
    const double gain = std::max(v - nv, 0.0) / std::max({v, nv, tiny});
    values[idx] = mean[idx] + gain * (in[idx] - mean[idx]);
  }
  return out;
}

FilterSpec optimized_filter_denoised(const Sinogram& measurements, const ParallelGeometry& geometry,
                                     const FrequencyGrid& grid, double level, int kernel) {
  if (level < 0.0) throw ParameterError("noise level must be non-negative");
  const auto denoised = wiener_denoise(measurements, kernel, level * level);
  return optimized_from_data(denoised, geometry, grid, level, FilterProvenance::optimized_denoised);
}

std::string filter_csv(const FilterSpec& filter, const FrequencyGrid& grid) {
  if (filter.samples.size() != grid.size()) throw DimensionError("filter samples do not match the grid");
  std::ostringstream out;
  out << "sigma,value\n";
  for (std::size_t k = 0; k < grid.size(); ++k) {
    out << io::format_double(grid.frequency(k)) << ',' << io::format_double(filter.samples[k]) << '\n';
  }
  return out.str();
}

}  // namespace optfbp
