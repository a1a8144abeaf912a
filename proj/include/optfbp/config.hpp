#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "optfbp/fbp.hpp"

namespace optfbp {

/// Flat `key = value` text; `#` starts a comment, keys may be dotted.
/// Duplicate keys and lines without '=' are errors (with line numbers).
std::map<std::string, std::string> parse_key_values(const std::string& text);

enum class FilterFamily { ram_lak, shepp_logan, cosine, hamming, opt_reference, opt_measured, opt_denoised };

/// One entry of `sweep.filters`, e.g. `hamming:0.55`, `hamming:auto`,
/// `opt_denoised:7`, `opt_reference`.
struct FilterId {
  std::string text;
  FilterFamily family = FilterFamily::ram_lak;
  std::optional<double> parameter;  // beta or Wiener kernel
  bool tuned = false;               // parameter chosen by grid search

  static FilterId parse(const std::string& text);
};

struct ExperimentConfig {
  std::string phantom = "shepp_logan";  // shepp_logan | modified | path to a phantom file
  double phantom_radius = 1.0;
  double smoothness = 1.5;
  std::vector<std::int64_t> angles{90, 180, 360};
  std::vector<double> p_noise{0.05, 0.1, 0.15};
  std::int64_t realizations = 10;
  std::vector<FilterId> filters;
  std::int64_t recon_pixels = 256;
  Interpolation interpolation = Interpolation::linear;
  std::optional<int> wiener_kernel = 5;  // nullopt: tuned
  std::int64_t tuning_realizations = 5;
  std::uint64_t seed = 2024;
  double noise_misestimation_factor = 1.0;
  bool mask_metrics = false;
  bool record_timing = false;
  std::string output_dir = "results";

  /// Throws ConfigError naming the offending field.
  void validate() const;

  static ExperimentConfig from_key_values(const std::map<std::string, std::string>& entries);
  static ExperimentConfig parse(const std::string& text);
  static ExperimentConfig load(const std::string& path);
};

}  // namespace optfbp
