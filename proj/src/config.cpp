#include "optfbp/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "optfbp/errors.hpp"

namespace optfbp {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::stringstream stream(value);
  for (std::string item; std::getline(stream, item, ',');) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

double to_double(const std::string& key, const std::string& text) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
    throw ConfigError(key + ": expected a number, got '" + text + "'");
  }
  return value;
}

std::int64_t to_int(const std::string& key, const std::string& text) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError(key + ": expected an integer, got '" + text + "'");
  }
  return value;
}

bool to_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError(key + ": expected true/false, got '" + text + "'");
}

}  // namespace

std::map<std::string, std::string> parse_key_values(const std::string& text) {
  std::map<std::string, std::string> entries;
  std::istringstream stream(text);
  std::string line;
  int number = 0;
  while (std::getline(stream, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(number) + ": expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(number) + ": empty key");
    if (!entries.emplace(key, value).second) {
      throw ConfigError("line " + std::to_string(number) + ": duplicate key '" + key + "'");
    }
  }
  return entries;
}

FilterId FilterId::parse(const std::string& text) {
  FilterId id;
  id.text = text;
  const auto colon = text.find(':');
  const auto name = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? std::string() : text.substr(colon + 1);

  static const std::map<std::string, FilterFamily> families = {
      {"ram_lak", FilterFamily::ram_lak},           {"shepp_logan", FilterFamily::shepp_logan},
      {"cosine", FilterFamily::cosine},             {"hamming", FilterFamily::hamming},
      {"opt_reference", FilterFamily::opt_reference}, {"opt_measured", FilterFamily::opt_measured},
      {"opt_denoised", FilterFamily::opt_denoised},
  };
  const auto it = families.find(name);
  if (it == families.end()) throw ConfigError("sweep.filters: unknown filter '" + text + "'");
  id.family = it->second;

  const bool takes_argument = id.family == FilterFamily::hamming || id.family == FilterFamily::opt_denoised;
  if (!takes_argument) {
    if (colon != std::string::npos) throw ConfigError("sweep.filters: '" + name + "' takes no parameter");
    return id;
  }
  if (arg.empty()) {
    if (id.family == FilterFamily::hamming) {
      throw ConfigError("sweep.filters: hamming needs ':<beta>' or ':auto'");
    }
    return id;  // opt_denoised without argument uses wiener.kernel
  }
  if (arg == "auto") {
    id.tuned = true;
    return id;
  }
  id.parameter = to_double("sweep.filters", arg);
  if (id.family == FilterFamily::hamming && !(*id.parameter >= 0.5 && *id.parameter <= 1.0)) {
    throw ConfigError("sweep.filters: hamming beta must lie in [0.5, 1], got " + arg);
  }
  if (id.family == FilterFamily::opt_denoised) {
    const double k = *id.parameter;
    if (k != std::floor(k) || k < 1 || static_cast<std::int64_t>(k) % 2 == 0) {
      throw ConfigError("sweep.filters: opt_denoised kernel must be an odd positive integer, got " + arg);
    }
  }
  return id;
}

void ExperimentConfig::validate() const {
  if (phantom.empty()) throw ConfigError("phantom: must not be empty");
  if (!(phantom_radius > 0.0)) throw ConfigError("phantom.radius: must be positive");
  if (!(smoothness > 0.0)) throw ConfigError("phantom.nu: must be positive");
  if (angles.empty()) throw ConfigError("sweep.angles: list must not be empty");
  for (auto n : angles)
    if (n < 4) throw ConfigError("sweep.angles: need at least 4 angles, got " + std::to_string(n));
  if (p_noise.empty()) throw ConfigError("sweep.p_noise: list must not be empty");
  for (double p : p_noise)
    if (p < 0.0) throw ConfigError("sweep.p_noise: values must be non-negative");
  if (realizations < 1) throw ConfigError("sweep.realizations: must be >= 1");
  if (filters.empty()) throw ConfigError("sweep.filters: list must not be empty");
  if (recon_pixels < 11) throw ConfigError("recon.pixels: must be >= 11 (SSIM window)");
  if (wiener_kernel && (*wiener_kernel < 1 || *wiener_kernel % 2 == 0)) {
    throw ConfigError("wiener.kernel: must be an odd positive integer or 'auto'");
  }
  if (tuning_realizations < 1) throw ConfigError("tuning.realizations: must be >= 1");
  if (!(noise_misestimation_factor > 0.0)) throw ConfigError("noise.misestimation_factor: must be positive");
  if (output_dir.empty()) throw ConfigError("output.dir: must not be empty");
}

ExperimentConfig ExperimentConfig::from_key_values(const std::map<std::string, std::string>& entries) {
  static const std::set<std::string> known = {
      "phantom",         "phantom.radius",        "phantom.nu",         "sweep.angles",
      "sweep.p_noise",   "sweep.realizations",    "sweep.filters",      "sweep.seed",
      "recon.pixels",    "recon.interpolation",   "wiener.kernel",      "tuning.realizations",
      "noise.misestimation_factor", "metrics.mask", "output.dir",       "output.record_timing",
  };
  for (const auto& [key, value] : entries) {
    if (!known.contains(key)) throw ConfigError(key + ": unknown configuration key");
  }

  ExperimentConfig c;
  c.filters = {FilterId::parse("ram_lak"), FilterId::parse("opt_reference")};
  auto get = [&](const char* key) -> const std::string* {
    auto it = entries.find(key);
    return it == entries.end() ? nullptr : &it->second;
  };

  if (auto v = get("phantom")) c.phantom = *v;
  if (auto v = get("phantom.radius")) c.phantom_radius = to_double("phantom.radius", *v);
  if (auto v = get("phantom.nu")) c.smoothness = to_double("phantom.nu", *v);
  if (auto v = get("sweep.angles")) {
    c.angles.clear();
    for (const auto& item : split_list(*v)) c.angles.push_back(to_int("sweep.angles", item));
  }
  if (auto v = get("sweep.p_noise")) {
    c.p_noise.clear();
    for (const auto& item : split_list(*v)) c.p_noise.push_back(to_double("sweep.p_noise", item));
  }
  if (auto v = get("sweep.realizations")) c.realizations = to_int("sweep.realizations", *v);
  if (auto v = get("sweep.filters")) {
    c.filters.clear();
    for (const auto& item : split_list(*v)) c.filters.push_back(FilterId::parse(item));
  }
  if (auto v = get("sweep.seed")) {
    const auto s = to_int("sweep.seed", *v);
    c.seed = static_cast<std::uint64_t>(s);
  }
  if (auto v = get("recon.pixels")) c.recon_pixels = to_int("recon.pixels", *v);
  if (auto v = get("recon.interpolation")) {
    if (*v == "linear") {
      c.interpolation = Interpolation::linear;
    } else if (*v == "cubic" || *v == "cubic_spline") {
      c.interpolation = Interpolation::cubic_spline;
    } else {
      throw ConfigError("recon.interpolation: expected linear or cubic_spline, got '" + *v + "'");
    }
  }
  if (auto v = get("wiener.kernel")) {
    if (*v == "auto") {
      c.wiener_kernel.reset();
    } else {
      c.wiener_kernel = static_cast<int>(to_int("wiener.kernel", *v));
    }
  }
  if (auto v = get("tuning.realizations")) c.tuning_realizations = to_int("tuning.realizations", *v);
  if (auto v = get("noise.misestimation_factor")) {
    c.noise_misestimation_factor = to_double("noise.misestimation_factor", *v);
  }
  if (auto v = get("metrics.mask")) c.mask_metrics = to_bool("metrics.mask", *v);
  if (auto v = get("output.dir")) c.output_dir = *v;
  if (auto v = get("output.record_timing")) c.record_timing = to_bool("output.record_timing", *v);
  c.validate();
  return c;
}

ExperimentConfig ExperimentConfig::parse(const std::string& text) { return from_key_values(parse_key_values(text)); }

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse(buffer.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

}  // namespace optfbp
