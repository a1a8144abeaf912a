#include "optfbp/harness.hpp"

#include <bit>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "optfbp/errors.hpp"
#include "optfbp/io.hpp"
#include "optfbp/metrics.hpp"
#include "optfbp/noise.hpp"
#include "optfbp/random.hpp"

namespace optfbp {

Scenario make_scenario(const ExperimentConfig& config, std::int64_t n_angles) {
  Scenario s;
  Phantom base;
  if (config.phantom == "shepp_logan") {
    base = shepp_logan();
  } else if (config.phantom != "modified") {
    base = load_phantom(config.phantom, config.phantom_radius);
  }
  const double radius = config.phantom == "shepp_logan" || config.phantom == "modified" ? 1.0 : base.support_radius;
  s.geometry = geometry_from_angles(n_angles, radius);
  s.grid = FrequencyGrid(s.geometry);
  s.phantom = config.phantom == "modified" ? modified_shepp_logan(default_rectangles(), config.smoothness, s.geometry)
                                           : base;
  s.phantom.validate();
  s.clean = radon_sample(s.phantom, s.geometry);
  s.truth = rasterize(s.phantom, config.recon_pixels);
  s.mean = sinogram_mean(s.clean);
  return s;
}

FilterSpec build_filter(const FilterId& id, double parameter, const Scenario& scenario, const FilterInputs& inputs) {
  const auto& g = scenario.geometry;
  switch (id.family) {
    case FilterFamily::ram_lak: return filter_from_window({WindowKind::ram_lak}, scenario.grid, g.bandwidth);
    case FilterFamily::shepp_logan: return filter_from_window({WindowKind::shepp_logan}, scenario.grid, g.bandwidth);
    case FilterFamily::cosine: return filter_from_window({WindowKind::cosine}, scenario.grid, g.bandwidth);
    case FilterFamily::hamming:
      return filter_from_window({WindowKind::hamming, parameter}, scenario.grid, g.bandwidth);
    case FilterFamily::opt_reference:
      if (inputs.reference == nullptr) throw ParameterError("opt_reference needs the noiseless sinogram");
      return optimized_filter_reference(*inputs.reference, g, scenario.grid, inputs.level);
    case FilterFamily::opt_measured:
      return optimized_filter_measured(inputs.measurements, g, scenario.grid, inputs.level);
    case FilterFamily::opt_denoised:
      return optimized_filter_denoised(inputs.measurements, g, scenario.grid, inputs.level,
                                       static_cast<int>(parameter));
  }
  throw ParameterError("unknown filter family");
}

double resolved_parameter(const FilterId& id, const ExperimentConfig& config) {
  if (id.parameter) return *id.parameter;
  if (id.family == FilterFamily::opt_denoised && config.wiener_kernel) return *config.wiener_kernel;
  return 0.0;
}

std::vector<double> tuning_candidates(FilterFamily family) {
  if (family == FilterFamily::hamming) {
    std::vector<double> betas;
    for (int k = 0; k <= 10; ++k) betas.push_back(0.5 + 0.05 * k);
    return betas;
  }
  if (family == FilterFamily::opt_denoised) return {3.0, 5.0, 7.0, 9.0};
  return {};
}

std::uint64_t realization_seed(std::uint64_t base_seed, std::int64_t n_angles, double p_noise,
                               std::int64_t realization, bool tuning) {
  const std::uint64_t tag = tuning ? 0x74756e65ULL : 0x6576616cULL;
  return base_seed ^ random::bits(tag, static_cast<std::uint64_t>(n_angles), std::bit_cast<std::uint64_t>(p_noise),
                                  static_cast<std::uint64_t>(realization));
}

namespace {

bool needs_tuning(const FilterId& id, const ExperimentConfig& config) {
  if (id.tuned) return true;
  return id.family == FilterFamily::opt_denoised && !id.parameter && !config.wiener_kernel;
}

struct Measurement {
  double mse;
  double ssim;
  double milliseconds;
};

Measurement measure(const FilterId& id, double parameter, const Scenario& scenario, const Sinogram& noisy,
                    double level, const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  const FilterInputs inputs{noisy, id.family == FilterFamily::opt_reference ? &scenario.clean : nullptr, level};
  const auto filter = build_filter(id, parameter, scenario, inputs);
  const auto image = reconstruct(noisy, filter, scenario.grid, config.recon_pixels, config.interpolation);
  const auto report = evaluate(image, scenario.truth, config.mask_metrics);
  const auto stop = std::chrono::steady_clock::now();
  return {report.mse, report.ssim, std::chrono::duration<double, std::milli>(stop - start).count()};
}

Sinogram noisy_sinogram(const Scenario& scenario, double level, double p, const ExperimentConfig& config,
                        std::uint64_t seed) {
  // The injected noise may be larger than what the filters are told.
  return add_white_noise(scenario.clean, NoiseSpec{config.noise_misestimation_factor * level, p, seed});
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  const auto n_a = config.angles.size();
  const auto n_p = config.p_noise.size();
  const auto n_f = config.filters.size();
  const auto n_r = static_cast<std::size_t>(config.realizations);

  std::vector<Scenario> scenarios;
  scenarios.reserve(n_a);
  for (auto n : config.angles) scenarios.push_back(make_scenario(config, n));

  // parameters[(a*n_p + p)*n_f + f]
  std::vector<double> parameters(n_a * n_p * n_f);
  std::vector<double> tuned_mse(n_a * n_p * n_f, std::numeric_limits<double>::quiet_NaN());
  struct TuningJob {
    std::size_t a, p, f;
  };
  std::vector<TuningJob> jobs;
  for (std::size_t a = 0; a < n_a; ++a)
    for (std::size_t p = 0; p < n_p; ++p)
      for (std::size_t f = 0; f < n_f; ++f) {
        const auto slot = (a * n_p + p) * n_f + f;
        parameters[slot] = resolved_parameter(config.filters[f], config);
        if (needs_tuning(config.filters[f], config)) jobs.push_back({a, p, f});
      }

#pragma omp parallel for schedule(dynamic)
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    const auto [a, p, f] = jobs[k];
    const auto& scenario = scenarios[a];
    const double pn = config.p_noise[p];
    const double level = pn * scenario.mean;
    double best = std::numeric_limits<double>::infinity();
    double best_parameter = 0.0;
    for (double candidate : tuning_candidates(config.filters[f].family)) {
      double sum = 0.0;
      for (std::int64_t r = 0; r < config.tuning_realizations; ++r) {
        const auto seed = realization_seed(config.seed, config.angles[a], pn, r, true);
        const auto noisy = noisy_sinogram(scenario, level, pn, config, seed);
        sum += measure(config.filters[f], candidate, scenario, noisy, level, config).mse;
      }
      const double mean = sum / static_cast<double>(config.tuning_realizations);
      if (mean < best) {
        best = mean;
        best_parameter = candidate;
      }
    }
    const auto slot = (a * n_p + p) * n_f + f;
    parameters[slot] = best_parameter;
    tuned_mse[slot] = best;
  }

  ExperimentResult result;
  for (const auto& job : jobs) {
    const auto slot = (job.a * n_p + job.p) * n_f + job.f;
    result.tuning.push_back(
        {config.angles[job.a], config.p_noise[job.p], config.filters[job.f].text, parameters[slot], tuned_mse[slot]});
  }

  result.rows.resize(n_a * n_p * n_f * n_r);
  const auto tasks = static_cast<std::int64_t>(n_a * n_p * n_r);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t task = 0; task < tasks; ++task) {
    const auto r = static_cast<std::size_t>(task) % n_r;
    const auto p = (static_cast<std::size_t>(task) / n_r) % n_p;
    const auto a = static_cast<std::size_t>(task) / (n_r * n_p);
    const auto& scenario = scenarios[a];
    const double pn = config.p_noise[p];
    const double level = pn * scenario.mean;
    const auto seed = realization_seed(config.seed, config.angles[a], pn, static_cast<std::int64_t>(r));
    const auto noisy = noisy_sinogram(scenario, level, pn, config, seed);
    for (std::size_t f = 0; f < n_f; ++f) {
      const auto slot = (a * n_p + p) * n_f + f;
      const auto m = measure(config.filters[f], parameters[slot], scenario, noisy, level, config);
      auto& row = result.rows[slot * n_r + r];
      row.n_angles = config.angles[a];
      row.p_noise = pn;
      row.filter = config.filters[f].text;
      row.seed = seed;
      row.mse = m.mse;
      row.ssim = m.ssim;
      row.wall_time_ms = config.record_timing ? m.milliseconds : 0.0;
    }
  }
  return result;
}

std::string rows_to_csv(const std::vector<ResultRow>& rows) {
  std::ostringstream out;
  out << "n_angles,p_noise,filter,seed,mse,ssim,wall_time_ms\n";
  for (const auto& row : rows) {
    out << row.n_angles << ',' << io::format_double(row.p_noise) << ',' << row.filter << ',' << row.seed << ','
        << io::format_double(row.mse) << ',' << io::format_double(row.ssim) << ','
        << io::format_double(row.wall_time_ms) << '\n';
  }
  return out.str();
}

std::vector<ResultRow> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "n_angles,p_noise,filter,seed,mse,ssim,wall_time_ms") {
    throw FormatError("results csv: unexpected header");
  }
  std::vector<ResultRow> rows;
  int number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream stream(line);
    for (std::string field; std::getline(stream, field, ',');) fields.push_back(field);
    if (fields.size() != 7) throw FormatError("results csv line " + std::to_string(number) + ": expected 7 fields");
    try {
      ResultRow row;
      row.n_angles = std::stoll(fields[0]);
      row.p_noise = std::stod(fields[1]);
      row.filter = fields[2];
      row.seed = std::stoull(fields[3]);
      row.mse = std::stod(fields[4]);
      row.ssim = std::stod(fields[5]);
      row.wall_time_ms = std::stod(fields[6]);
      rows.push_back(std::move(row));
    } catch (const std::logic_error&) {
      throw FormatError("results csv line " + std::to_string(number) + ": malformed number");
    }
  }
  return rows;
}

void emit_csv(const std::vector<ResultRow>& rows, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << rows_to_csv(rows);
  if (!out) throw Error("write failed for '" + path + "'");
}

std::string tuning_to_csv(const std::vector<TuningRow>& rows) {
  std::ostringstream out;
  out << "n_angles,p_noise,filter,parameter,mean_mse\n";
  for (const auto& row : rows) {
    out << row.n_angles << ',' << io::format_double(row.p_noise) << ',' << row.filter << ','
        << io::format_double(row.parameter) << ',' << io::format_double(row.mean_mse) << '\n';
  }
  return out.str();
}

ExperimentResult run_sweep(const ExperimentConfig& config) {
  auto result = run_experiment(config);
  std::filesystem::create_directories(config.output_dir);
  const auto dir = std::filesystem::path(config.output_dir);
  emit_csv(result.rows, (dir / "results.csv").string());
  std::ofstream tuning(dir / "tuning.csv", std::ios::binary);
  if (!tuning) throw Error("cannot open '" + (dir / "tuning.csv").string() + "' for writing");
  tuning << tuning_to_csv(result.tuning);
  return result;
}

}  // namespace optfbp
