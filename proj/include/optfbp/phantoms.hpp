#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "optfbp/geometry.hpp"
#include "optfbp/image.hpp"

namespace optfbp {

enum class ShapeKind { ellipse, smooth_bump, rectangle };

/// One analytic component of a phantom.
///
/// For ellipses and smooth bumps, (half_x, half_y) are the semi-axes; for
/// rectangles they are half-widths. A smooth bump has the profile
/// intensity * (1 - rho^2)^nu inside the ellipse, rho the normalized
/// elliptical radius; nu = 0 reduces it to the ellipse indicator.
struct Shape {
  ShapeKind kind = ShapeKind::ellipse;
  double x0 = 0.0;
  double y0 = 0.0;
  double half_x = 0.0;
  double half_y = 0.0;
  double rotation = 0.0;  // radians, counter-clockwise
  double intensity = 0.0;
  double smoothness = 0.0;  // nu, smooth_bump only

  /// Line integral along {x cos(phi) + y sin(phi) = s}.
  double radon(double s, double phi) const;
  /// Value at a point.
  double value(double x, double y) const;
  /// Largest distance from the origin of any point of the shape.
  double reach() const;
};

struct Phantom {
  std::vector<Shape> shapes;
  double support_radius = 1.0;

  /// Throws SupportError if any shape leaves B_R(0).
  void validate() const;
};

double radon_analytic(const Phantom& phantom, double s, double phi);

/// Samples R f(s_i, phi_j) on the lattice; requires geometry.R >= phantom.R.
Sinogram radon_sample(const Phantom& phantom, const ParallelGeometry& geometry);

/// Point evaluation at pixel centers over [-R, R]^2 (no anti-aliasing).
Image rasterize(const Phantom& phantom, std::int64_t n_pixels);

/// Ten-ellipse head phantom with the original 1974 intensities, R = 1.
Phantom shepp_logan();

/// Two rectangles used by default in the modified phantom.
std::vector<Shape> default_rectangles();

/// Shepp-Logan with every ellipse replaced by a (1 - rho^2)^nu bump, plus the
/// given rectangles, rescaled so that sinogram_mean on `geometry` equals that
/// of the plain Shepp-Logan phantom on the same lattice.
Phantom modified_shepp_logan(const std::vector<Shape>& rectangles, double smoothness,
                             const ParallelGeometry& geometry);

/// Mean absolute value over all lattice samples.
double sinogram_mean(const Sinogram& sinogram);

/// Parses the line-oriented phantom text format
/// `kind x0 y0 a b theta intensity [nu]`, `#` starts a comment.
/// kind is one of ellipse, bump, rectangle.
Phantom parse_phantom(const std::string& text, double support_radius = 1.0);
Phantom load_phantom(const std::string& path, double support_radius = 1.0);

}  // namespace optfbp
