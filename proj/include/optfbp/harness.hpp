#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "optfbp/config.hpp"
#include "optfbp/fbp.hpp"
#include "optfbp/filters.hpp"
#include "optfbp/geometry.hpp"
#include "optfbp/image.hpp"
#include "optfbp/phantoms.hpp"

namespace optfbp {

struct ResultRow {
  std::int64_t n_angles = 0;
  double p_noise = 0.0;
  std::string filter;
  std::uint64_t seed = 0;
  double mse = 0.0;
  double ssim = 0.0;
  double wall_time_ms = 0.0;

  bool operator==(const ResultRow&) const = default;
};

/// Hyperparameter picked by grid search for an `auto` filter.
struct TuningRow {
  std::int64_t n_angles = 0;
  double p_noise = 0.0;
  std::string filter;
  double parameter = 0.0;
  double mean_mse = 0.0;
};

struct ExperimentResult {
  std::vector<ResultRow> rows;
  std::vector<TuningRow> tuning;
};

/// Everything that depends only on the number of angles.
struct Scenario {
  ParallelGeometry geometry;
  FrequencyGrid grid;
  Phantom phantom;
  Sinogram clean;  // analytic R f samples
  Image truth;     // rasterized phantom
  double mean = 0.0;  // sinogram_mean(clean)
};

Scenario make_scenario(const ExperimentConfig& config, std::int64_t n_angles);

/// Inputs a filter builder may see. `reference` is the noiseless sinogram and
/// is only handed over for opt_reference; the practical filters get nullptr.
struct FilterInputs {
  const Sinogram& measurements;
  const Sinogram* reference = nullptr;
  double level = 0.0;  // epsilon assumed by the filter
};

/// Builds the filter for `id` with its resolved parameter (beta or kernel).
FilterSpec build_filter(const FilterId& id, double parameter, const Scenario& scenario, const FilterInputs& inputs);

/// Default parameter for a non-tuned filter id.
double resolved_parameter(const FilterId& id, const ExperimentConfig& config);

/// Grid-search candidates for a tuned filter family.
std::vector<double> tuning_candidates(FilterFamily family);

/// base_seed XOR hash(n_angles, p_noise, realization); `tuning` selects the held-out stream.
std::uint64_t realization_seed(std::uint64_t base_seed, std::int64_t n_angles, double p_noise,
                               std::int64_t realization, bool tuning = false);

/// Runs every (n_angles, p_noise, filter, realization) combination.
/// Rows are ordered by the configured angle, noise and filter order, then by realization.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Header `n_angles,p_noise,filter,seed,mse,ssim,wall_time_ms`, 17 significant digits, LF.
std::string rows_to_csv(const std::vector<ResultRow>& rows);
std::vector<ResultRow> parse_csv(const std::string& text);
void emit_csv(const std::vector<ResultRow>& rows, const std::string& path);

std::string tuning_to_csv(const std::vector<TuningRow>& rows);

/// run_experiment, then writes <output_dir>/results.csv and <output_dir>/tuning.csv.
ExperimentResult run_sweep(const ExperimentConfig& config);

}  // namespace optfbp
