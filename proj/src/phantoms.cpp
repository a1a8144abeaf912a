#include "optfbp/phantoms.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "optfbp/errors.hpp"

namespace optfbp {

using std::numbers::pi;

namespace {

// Integral of (1 - t^2)^nu over [-1, 1].
double bump_chord_factor(double nu) {
  return std::sqrt(pi) * std::tgamma(nu + 1.0) / std::tgamma(nu + 1.5);
}

double rectangle_chord(double tau, double psi, double half_w, double half_h) {
  // Line tau*n + t*d in the rectangle frame, n = (cos psi, sin psi), d = (-sin psi, cos psi).
  const double c = std::cos(psi);
  const double s = std::sin(psi);
  double t_lo = -std::numeric_limits<double>::infinity();
  double t_hi = std::numeric_limits<double>::infinity();
  auto clip = [&](double origin, double direction, double half) {
    if (std::abs(direction) < 1e-300) {
      if (std::abs(origin) > half) t_hi = t_lo - 1.0;
      return;
    }
    double a = (-half - origin) / direction;
    double b = (half - origin) / direction;
    if (a > b) std::swap(a, b);
    t_lo = std::max(t_lo, a);
    t_hi = std::min(t_hi, b);
  };
  clip(tau * c, -s, half_w);
  clip(tau * s, c, half_h);
  return std::max(0.0, t_hi - t_lo);
}

}  // namespace

double Shape::radon(double s, double phi) const {
  const double psi = phi - rotation;
  const double tau = s - (x0 * std::cos(phi) + y0 * std::sin(phi));
  if (kind == ShapeKind::rectangle) return intensity * rectangle_chord(tau, psi, half_x, half_y);

  const double cp = std::cos(psi);
  // Written so that a circle gives ell2 = a^2 exactly.
  const double ell2 = half_y * half_y + (half_x * half_x - half_y * half_y) * cp * cp;
  if (tau * tau >= ell2) return 0.0;
  if (kind == ShapeKind::ellipse) {
    return 2.0 * intensity * (half_x * half_y / ell2) * std::sqrt(ell2 - tau * tau);
  }
  const double ell = std::sqrt(ell2);
  return intensity * (half_x * half_y / ell) * bump_chord_factor(smoothness) *
         std::pow(1.0 - tau * tau / ell2, smoothness + 0.5);
}

double Shape::value(double x, double y) const {
  const double dx = x - x0;
  const double dy = y - y0;
  const double c = std::cos(rotation);
  const double s = std::sin(rotation);
  const double u = dx * c + dy * s;
  const double v = -dx * s + dy * c;
  if (kind == ShapeKind::rectangle) {
    return (std::abs(u) <= half_x && std::abs(v) <= half_y) ? intensity : 0.0;
  }
  const double rho2 = (u / half_x) * (u / half_x) + (v / half_y) * (v / half_y);
  if (rho2 > 1.0) return 0.0;
  if (kind == ShapeKind::ellipse || smoothness == 0.0) return intensity;
  return intensity * std::pow(1.0 - rho2, smoothness);
}

double Shape::reach() const {
  const double c = std::cos(rotation);
  const double s = std::sin(rotation);
  auto radius = [&](double u, double v) { return std::hypot(x0 + u * c - v * s, y0 + u * s + v * c); };
  if (kind == ShapeKind::rectangle) {
    return std::max({radius(half_x, half_y), radius(-half_x, half_y), radius(half_x, -half_y),
                     radius(-half_x, -half_y)});
  }
  constexpr int samples = 4096;
  double best = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double t = 2.0 * pi * k / samples;
    best = std::max(best, radius(half_x * std::cos(t), half_y * std::sin(t)));
  }
  return best;
}

void Phantom::validate() const {
  if (!(support_radius > 0.0)) throw SupportError("phantom support radius must be positive");
  for (std::size_t k = 0; k < shapes.size(); ++k) {
    const auto& shape = shapes[k];
    if (!(shape.half_x > 0.0) || !(shape.half_y > 0.0)) {
      throw ParameterError("shape " + std::to_string(k) + " has non-positive extent");
    }
    if (shape.smoothness < 0.0) throw ParameterError("shape " + std::to_string(k) + " has negative smoothness");
    if (shape.reach() > support_radius * (1.0 + 1e-12)) {
      throw SupportError("shape " + std::to_string(k) + " leaves B_R(0) with R = " + std::to_string(support_radius));
    }
  }
}

double radon_analytic(const Phantom& phantom, double s, double phi) {
  if (std::abs(s) > phantom.support_radius) return 0.0;
  double sum = 0.0;
  for (const auto& shape : phantom.shapes) sum += shape.radon(s, phi);
  return sum;
}

Sinogram radon_sample(const Phantom& phantom, const ParallelGeometry& geometry) {
  geometry.validate();
  if (geometry.support_radius < phantom.support_radius) {
    throw SupportError("geometry radius " + std::to_string(geometry.support_radius) +
                       " smaller than phantom radius " + std::to_string(phantom.support_radius));
  }
  Sinogram out(geometry);
  const auto m = geometry.radial_half_count;
#pragma omp parallel for schedule(static)
  for (std::int64_t j = 0; j < geometry.n_angles; ++j) {
    const double phi = geometry.angle(j);
    for (std::int64_t i = -m; i <= m; ++i) out(i, j) = radon_analytic(phantom, geometry.radial_position(i), phi);
  }
  return out;
}

Image rasterize(const Phantom& phantom, std::int64_t n_pixels) {
  if (n_pixels < 2) throw ParameterError("rasterize needs n_pixels >= 2");
  Image image(n_pixels, phantom.support_radius);
#pragma omp parallel for schedule(static)
  for (std::int64_t p = 0; p < n_pixels; ++p) {
    const double y = image.center(p);
    for (std::int64_t q = 0; q < n_pixels; ++q) {
      const double x = image.center(q);
      double sum = 0.0;
      for (const auto& shape : phantom.shapes) sum += shape.value(x, y);
      image(p, q) = sum;
    }
  }
  return image;
}

Phantom shepp_logan() {
  struct Row {
    double x0, y0, a, b, theta_deg, intensity;
  };
  // Original intensities (not the contrast-enhanced variant).
  static constexpr Row table[] = {
      {0.0, 0.0, 0.69, 0.92, 0.0, 2.0},
      {0.0, -0.0184, 0.6624, 0.874, 0.0, -0.98},
      {0.22, 0.0, 0.11, 0.31, -18.0, -0.02},
      {-0.22, 0.0, 0.16, 0.41, 18.0, -0.02},
      {0.0, 0.35, 0.21, 0.25, 0.0, 0.01},
      {0.0, 0.1, 0.046, 0.046, 0.0, 0.01},
      {0.0, -0.1, 0.046, 0.046, 0.0, 0.01},
      {-0.08, -0.605, 0.046, 0.023, 0.0, 0.01},
      {0.0, -0.605, 0.023, 0.023, 0.0, 0.01},
      {0.06, -0.605, 0.023, 0.046, 0.0, 0.01},
  };
  Phantom phantom;
  phantom.support_radius = 1.0;
  for (const auto& r : table) {
    phantom.shapes.push_back(
        Shape{ShapeKind::ellipse, r.x0, r.y0, r.a, r.b, r.theta_deg * pi / 180.0, r.intensity, 0.0});
  }
  return phantom;
}

std::vector<Shape> default_rectangles() {
  return {
      Shape{ShapeKind::rectangle, 0.0, -0.78, 0.3, 0.1, 0.0, 0.05, 0.0},
      Shape{ShapeKind::rectangle, 0.35, -0.35, 0.12, 0.05, 0.0, 0.1, 0.0},
  };
}

Phantom modified_shepp_logan(const std::vector<Shape>& rectangles, double smoothness,
                             const ParallelGeometry& geometry) {
  if (!(smoothness > 0.0)) throw ParameterError("smoothness nu must be positive");
  const Phantom base = shepp_logan();
  Phantom out = base;
  for (auto& shape : out.shapes) {
    shape.kind = ShapeKind::smooth_bump;
    shape.smoothness = smoothness;
  }
  for (const auto& rect : rectangles) {
    if (rect.kind != ShapeKind::rectangle) throw ParameterError("modified phantom expects rectangle shapes");
    out.shapes.push_back(rect);
  }
  out.validate();

  const double target = sinogram_mean(radon_sample(base, geometry));
  const double current = sinogram_mean(radon_sample(out, geometry));
  const double scale = target / current;
  for (auto& shape : out.shapes) shape.intensity *= scale;
  return out;
}

double sinogram_mean(const Sinogram& sinogram) {
  const auto values = sinogram.values();
  if (values.empty()) return 0.0;
  double sum = 0.0;
  for (double v : values) sum += std::abs(v);
  return sum / static_cast<double>(values.size());
}

namespace {

double parse_number(const std::string& token, int line, const char* field) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = first + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw FormatError("line " + std::to_string(line) + ": cannot parse " + field + " from '" + token + "'");
  }
  return value;
}

}  // namespace

Phantom parse_phantom(const std::string& text, double support_radius) {
  Phantom phantom;
  phantom.support_radius = support_radius;
  std::istringstream stream(text);
  std::string raw;
  int line = 0;
  while (std::getline(stream, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream fields(raw);
    std::vector<std::string> tokens;
    for (std::string token; fields >> token;) tokens.push_back(token);
    if (tokens.empty()) continue;

    Shape shape;
    const auto& kind = tokens[0];
    if (kind == "ellipse") {
      shape.kind = ShapeKind::ellipse;
    } else if (kind == "bump" || kind == "smooth_bump") {
      shape.kind = ShapeKind::smooth_bump;
    } else if (kind == "rectangle") {
      shape.kind = ShapeKind::rectangle;
    } else {
      throw FormatError("line " + std::to_string(line) + ": unknown shape kind '" + kind + "'");
    }
    const bool bump = shape.kind == ShapeKind::smooth_bump;
    if (tokens.size() != 7 && !(bump && tokens.size() == 8)) {
      throw FormatError("line " + std::to_string(line) + ": expected 'kind x0 y0 a b theta intensity" +
                        (bump ? " [nu]'" : "'") + ", got " + std::to_string(tokens.size()) + " fields");
    }
    shape.x0 = parse_number(tokens[1], line, "x0");
    shape.y0 = parse_number(tokens[2], line, "y0");
    shape.half_x = parse_number(tokens[3], line, "a");
    shape.half_y = parse_number(tokens[4], line, "b");
    shape.rotation = parse_number(tokens[5], line, "theta");
    shape.intensity = parse_number(tokens[6], line, "intensity");
    if (bump) shape.smoothness = tokens.size() == 8 ? parse_number(tokens[7], line, "nu") : 1.5;
    if (!(shape.half_x > 0.0) || !(shape.half_y > 0.0)) {
      throw FormatError("line " + std::to_string(line) + ": extents a, b must be positive");
    }
    if (shape.smoothness < 0.0) throw FormatError("line " + std::to_string(line) + ": nu must be >= 0");
    if (shape.reach() > support_radius * (1.0 + 1e-12)) {
      throw SupportError("line " + std::to_string(line) + ": shape leaves B_R(0)");
    }
    phantom.shapes.push_back(shape);
  }
  return phantom;
}

Phantom load_phantom(const std::string& path, double support_radius) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open phantom file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_phantom(buffer.str(), support_radius);
}

}  // namespace optfbp
