#pragma once

#include <optional>
#include <string>
#include <vector>

#include "optfbp/geometry.hpp"

namespace optfbp {

enum class WindowKind { ram_lak, shepp_logan, cosine, hamming };

struct Window {
  WindowKind kind = WindowKind::ram_lak;
  double beta = 0.5;  // hamming only, in [1/2, 1]

  std::string name() const;
};

/// W(sigma) for the classical windows; zero for |sigma| > 1.
double classical_window(const Window& window, double sigma);

enum class FilterProvenance { classical, optimized_reference, optimized_measured, optimized_denoised };

/// Radially symmetric filter A_L sampled on a FrequencyGrid.
struct FilterSpec {
  double bandwidth = 0.0;
  std::vector<double> samples;  // A_L(sigma_k), aligned with grid.frequencies()
  FilterProvenance provenance = FilterProvenance::classical;
  std::optional<Window> window;  // set for classical filters
};

/// A_L(sigma) = |sigma| W(sigma / L).
FilterSpec filter_from_window(const Window& window, const FrequencyGrid& grid, double bandwidth);

/// Optimized filter built from the noiseless sinogram:
///   A(sigma) = |sigma| P(sigma) / (P(sigma) + h^2 eps^2 (2M+1)),  |sigma| <= L,
/// with P(sigma) = (1/N_phi) sum_j |F_D g(sigma, j)|^2; zero outside [-L, L].
/// eps = 0 gives the ramp |sigma| on [-L, L].
FilterSpec optimized_filter_reference(const Sinogram& reference, const ParallelGeometry& geometry,
                                      const FrequencyGrid& grid, double level);

/// Same formula with the noisy measurements in place of R f.
FilterSpec optimized_filter_measured(const Sinogram& measurements, const ParallelGeometry& geometry,
                                     const FrequencyGrid& grid, double level);

/// Local adaptive Wiener filter over a kernel x kernel (radial x angular)
/// neighbourhood with mirrored edges. Without a noise variance, the mean of
/// the local variances is used.
Sinogram wiener_denoise(const Sinogram& sinogram, int kernel, std::optional<double> noise_variance = std::nullopt);

/// optimized_filter_measured applied to wiener_denoise(measurements, kernel, eps^2).
FilterSpec optimized_filter_denoised(const Sinogram& measurements, const ParallelGeometry& geometry,
                                     const FrequencyGrid& grid, double level, int kernel);

/// CSV `sigma,value`, 17 significant digits, one row per grid frequency.
std::string filter_csv(const FilterSpec& filter, const FrequencyGrid& grid);

}  // namespace optfbp
