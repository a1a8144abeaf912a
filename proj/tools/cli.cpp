#include "cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "optfbp/config.hpp"
#include "optfbp/errors.hpp"
#include "optfbp/fbp.hpp"
#include "optfbp/filters.hpp"
#include "optfbp/harness.hpp"
#include "optfbp/io.hpp"
#include "optfbp/metrics.hpp"
#include "optfbp/noise.hpp"
#include "optfbp/parallel.hpp"
#include "optfbp/phantoms.hpp"

namespace optfbp::cli {
namespace {

// Thrown for bad flag combinations detected after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::vector<std::string> kFilterNames = {"ram_lak",       "shepp_logan",  "cosine",      "hamming",
                                               "opt_reference", "opt_measured", "opt_denoised"};

struct PhantomOptions {
  std::string phantom = "shepp_logan";
  double radius = 1.0;
  double nu = 1.5;

  void add(CLI::App* app) {
    app->add_option("--phantom", phantom, "shepp_logan, modified, or a phantom text file")->capture_default_str();
    app->add_option("--radius", radius, "support radius for phantom files")->capture_default_str();
    app->add_option("--nu", nu, "smoothness of the modified phantom")->capture_default_str();
  }

  // The modified phantom is rescaled on the lattice it is sampled on.
  Phantom build(const ParallelGeometry& geometry) const {
    if (phantom == "shepp_logan") return shepp_logan();
    if (phantom == "modified") return modified_shepp_logan(default_rectangles(), nu, geometry);
    if (!std::filesystem::exists(phantom)) throw UsageError("phantom file '" + phantom + "' not found");
    return load_phantom(phantom, radius);
  }

  double support_radius() const {
    return (phantom == "shepp_logan" || phantom == "modified") ? 1.0 : radius;
  }
};

Interpolation parse_interpolation(const std::string& text) {
  return text == "linear" ? Interpolation::linear : Interpolation::cubic_spline;
}

FilterSpec make_filter(const std::string& name, double beta, double epsilon, int kernel, const Sinogram* measurements,
                       const Sinogram* reference, const ParallelGeometry& geometry, const FrequencyGrid& grid) {
  if (name == "ram_lak") return filter_from_window({WindowKind::ram_lak}, grid, geometry.bandwidth);
  if (name == "shepp_logan") return filter_from_window({WindowKind::shepp_logan}, grid, geometry.bandwidth);
  if (name == "cosine") return filter_from_window({WindowKind::cosine}, grid, geometry.bandwidth);
  if (name == "hamming") return filter_from_window({WindowKind::hamming, beta}, grid, geometry.bandwidth);
  if (name == "opt_reference") {
    if (!reference) throw UsageError("opt_reference needs --reference <noiseless.ctsg>");
    return optimized_filter_reference(*reference, geometry, grid, epsilon);
  }
  if (!measurements) throw UsageError(name + " needs a measured sinogram (--sinogram)");
  if (name == "opt_measured") return optimized_filter_measured(*measurements, geometry, grid, epsilon);
  return optimized_filter_denoised(*measurements, geometry, grid, epsilon, kernel);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  parallel::configure_from_env();

  CLI::App app{"Filtered back projection with optimized low-pass filters"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  // phantom
  auto* phantom_cmd = app.add_subcommand("phantom", "rasterize a phantom to CTIM + PGM");
  PhantomOptions phantom_opts;
  phantom_opts.add(phantom_cmd);
  std::int64_t phantom_pixels = 256;
  std::int64_t phantom_angles = 360;
  std::string phantom_out;
  phantom_cmd->add_option("--pixels", phantom_pixels, "grid size")->capture_default_str()->check(CLI::Range(2, 65536));
  phantom_cmd->add_option("--n-angles", phantom_angles, "lattice used to rescale the modified phantom")
      ->capture_default_str();
  phantom_cmd->add_option("--out", phantom_out, "output prefix")->required();

  // sinogram
  auto* sino_cmd = app.add_subcommand("sinogram", "sample the analytic sinogram (optionally noisy) to CTSG");
  PhantomOptions sino_opts;
  sino_opts.add(sino_cmd);
  std::int64_t sino_angles = 0;
  double sino_p = 0.0;
  std::uint64_t sino_seed = 0;
  std::string sino_out;
  sino_cmd->add_option("--n-angles", sino_angles, "number of angles")->required()->check(CLI::Range(4, 1 << 20));
  sino_cmd->add_option("--p-noise", sino_p, "relative noise level")->capture_default_str()->check(CLI::NonNegativeNumber);
  sino_cmd->add_option("--seed", sino_seed, "noise seed")->capture_default_str();
  sino_cmd->add_option("--out", sino_out, "output .ctsg file")->required();

  // reconstruct
  auto* recon_cmd = app.add_subcommand("reconstruct", "FBP reconstruction of a CTSG sinogram");
  std::string recon_in, recon_out, recon_reference;
  std::string recon_filter = "ram_lak";
  std::string recon_interp = "linear";
  double recon_beta = 0.55;
  double recon_epsilon = 0.0;
  int recon_kernel = 5;
  std::int64_t recon_pixels = 256;
  recon_cmd->add_option("--in", recon_in, "input .ctsg")->required()->check(CLI::ExistingFile);
  recon_cmd->add_option("--filter", recon_filter, "filter")->capture_default_str()->check(CLI::IsMember(kFilterNames));
  recon_cmd->add_option("--beta", recon_beta, "hamming beta")->capture_default_str()->check(CLI::Range(0.5, 1.0));
  recon_cmd->add_option("--epsilon", recon_epsilon, "noise level for optimized filters")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  recon_cmd->add_option("--kernel", recon_kernel, "wiener kernel (odd)")->capture_default_str();
  recon_cmd->add_option("--reference", recon_reference, "noiseless .ctsg for opt_reference")->check(CLI::ExistingFile);
  recon_cmd->add_option("--pixels", recon_pixels, "grid size")->capture_default_str()->check(CLI::Range(2, 65536));
  recon_cmd->add_option("--interp", recon_interp, "interpolation")
      ->capture_default_str()
      ->check(CLI::IsMember({"linear", "cubic_spline"}));
  recon_cmd->add_option("--out", recon_out, "output prefix")->required();

  // filter-dump
  auto* dump_cmd = app.add_subcommand("filter-dump", "write filter samples as CSV (sigma,value)");
  std::string dump_filter = "ram_lak";
  std::string dump_sinogram, dump_reference, dump_out;
  double dump_beta = 0.55;
  double dump_epsilon = 0.0;
  double dump_radius = 1.0;
  int dump_kernel = 5;
  std::int64_t dump_angles = 0;
  dump_cmd->add_option("--filter", dump_filter, "filter")->capture_default_str()->check(CLI::IsMember(kFilterNames));
  dump_cmd->add_option("--beta", dump_beta, "hamming beta")->capture_default_str()->check(CLI::Range(0.5, 1.0));
  dump_cmd->add_option("--epsilon", dump_epsilon, "noise level")->capture_default_str()->check(CLI::NonNegativeNumber);
  dump_cmd->add_option("--kernel", dump_kernel, "wiener kernel (odd)")->capture_default_str();
  dump_cmd->add_option("--n-angles", dump_angles, "lattice from the number of angles")->check(CLI::Range(4, 1 << 20));
  dump_cmd->add_option("--radius", dump_radius, "support radius")->capture_default_str();
  dump_cmd->add_option("--sinogram", dump_sinogram, "measured .ctsg (sets the lattice)")->check(CLI::ExistingFile);
  dump_cmd->add_option("--reference", dump_reference, "noiseless .ctsg for opt_reference")->check(CLI::ExistingFile);
  dump_cmd->add_option("--out", dump_out, "output CSV (default stdout)");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "run an experiment sweep from a config file");
  std::string sweep_config, sweep_output;
  sweep_cmd->add_option("--config", sweep_config, "key = value config file")->required();
  sweep_cmd->add_option("--output-dir", sweep_output, "override output.dir");

  // metrics
  auto* metrics_cmd = app.add_subcommand("metrics", "MSE and SSIM between two CTIM images");
  std::string metrics_image, metrics_reference;
  bool metrics_mask = false;
  metrics_cmd->add_option("--image", metrics_image, "reconstruction .ctim")->required()->check(CLI::ExistingFile);
  metrics_cmd->add_option("--reference", metrics_reference, "ground truth .ctim")->required()->check(CLI::ExistingFile);
  metrics_cmd->add_flag("--mask", metrics_mask, "count only pixels inside B_R(0) for MSE");

  std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kUsage;
  }

  try {
    if (*phantom_cmd) {
      const auto geometry = geometry_from_angles(phantom_angles, phantom_opts.support_radius());
      const auto phantom = phantom_opts.build(geometry);
      io::save_image_bundle(phantom_out, rasterize(phantom, phantom_pixels));
      out << "wrote " << phantom_out << ".ctim and " << phantom_out << ".pgm\n";
    } else if (*sino_cmd) {
      const auto geometry = geometry_from_angles(sino_angles, sino_opts.support_radius());
      const auto phantom = sino_opts.build(geometry);
      const auto clean = radon_sample(phantom, geometry);
      const double level = noise_level(sino_p, clean);
      io::save_sinogram(sino_out, add_white_noise(clean, NoiseSpec{level, sino_p, sino_seed}));
      out << "wrote " << sino_out << " (M = " << geometry.radial_half_count << ", N_phi = " << geometry.n_angles
          << ", epsilon = " << io::format_double(level) << ")\n";
    } else if (*recon_cmd) {
      if (recon_kernel < 1 || recon_kernel % 2 == 0) throw UsageError("--kernel must be odd and positive");
      const auto sinogram = io::load_sinogram(recon_in);
      const auto& geometry = sinogram.geometry();
      const FrequencyGrid grid(geometry);
      std::optional<Sinogram> reference;
      if (!recon_reference.empty()) reference = io::load_sinogram(recon_reference);
      const auto filter = make_filter(recon_filter, recon_beta, recon_epsilon, recon_kernel, &sinogram,
                                      reference ? &*reference : nullptr, geometry, grid);
      const auto image = reconstruct(sinogram, filter, grid, recon_pixels, parse_interpolation(recon_interp));
      io::save_image_bundle(recon_out, image);
      out << "wrote " << recon_out << ".ctim and " << recon_out << ".pgm\n";
    } else if (*dump_cmd) {
      if (dump_kernel < 1 || dump_kernel % 2 == 0) throw UsageError("--kernel must be odd and positive");
      std::optional<Sinogram> measurements, reference;
      if (!dump_sinogram.empty()) measurements = io::load_sinogram(dump_sinogram);
      if (!dump_reference.empty()) reference = io::load_sinogram(dump_reference);
      ParallelGeometry geometry;
      if (measurements) {
        geometry = measurements->geometry();
      } else if (reference) {
        geometry = reference->geometry();
      } else if (dump_angles > 0) {
        geometry = geometry_from_angles(dump_angles, dump_radius);
      } else {
        throw UsageError("filter-dump needs --n-angles or a sinogram");
      }
      const FrequencyGrid grid(geometry);
      const auto filter = make_filter(dump_filter, dump_beta, dump_epsilon, dump_kernel,
                                      measurements ? &*measurements : nullptr, reference ? &*reference : nullptr,
                                      geometry, grid);
      const auto csv = filter_csv(filter, grid);
      if (dump_out.empty()) {
        out << csv;
      } else {
        std::ofstream file(dump_out, std::ios::binary);
        if (!file) throw Error("cannot open '" + dump_out + "' for writing");
        file << csv;
      }
    } else if (*sweep_cmd) {
      if (!std::filesystem::is_regular_file(sweep_config)) {
        throw UsageError("config file '" + sweep_config + "' not found");
      }
      auto config = ExperimentConfig::load(sweep_config);
      if (!sweep_output.empty()) config.output_dir = sweep_output;
      const auto result = run_sweep(config);
      out << "wrote " << result.rows.size() << " rows to " << config.output_dir << "/results.csv\n";
    } else if (*metrics_cmd) {
      const auto image = io::load_image(metrics_image);
      const auto reference = io::load_image(metrics_reference);
      const auto report = evaluate(image, reference, metrics_mask);
      out << "mse = " << io::format_double(report.mse) << "\nssim = " << io::format_double(report.ssim)
          << "\nn_pixels = " << report.n_pixels << "\nmasked = " << (report.masked ? "true" : "false") << '\n';
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntime;
  }
  return kSuccess;
}

}  // namespace optfbp::cli
