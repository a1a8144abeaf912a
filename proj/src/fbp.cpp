#include "optfbp/fbp.hpp"

#include <cmath>
#include <complex>

#include "optfbp/errors.hpp"
#include "optfbp/fft.hpp"

namespace optfbp {

FilteredSinogram::FilteredSinogram(const ParallelGeometry& geometry)
    : geometry_(geometry),
      half_(optfbp::extended_half_count(geometry.radial_half_count)),
      values_(static_cast<std::size_t>((2 * half_ + 1) * geometry.n_angles), 0.0) {}

FilteredSinogram filter_rows(const Sinogram& sinogram, const FilterSpec& filter, const FrequencyGrid& grid) {
  const auto& g = sinogram.geometry();
  if (!grid.matches(g)) throw DimensionError("frequency grid was built for a different lattice");
  if (filter.samples.size() != grid.size()) {
    throw DimensionError("filter has " + std::to_string(filter.samples.size()) + " samples, grid has " +
                         std::to_string(grid.size()));
  }
  const std::int64_t pad = grid.pad_length();
  const std::int64_t half = pad / 2;

  // Trapezoid weights: the two Nyquist end points get 1/2 each and share one bin.
  std::vector<double> response(static_cast<std::size_t>(pad));
  for (std::int64_t k = -half + 1; k < half; ++k) {
    response[static_cast<std::size_t>((k + pad) % pad)] = filter.samples[static_cast<std::size_t>(k + half)];
  }
  response[static_cast<std::size_t>(half)] =
      0.5 * (filter.samples.front() + filter.samples.back());

  FilteredSinogram out(g);
  const std::int64_t m = g.radial_half_count;
  const std::int64_t m_ext = out.extended_half_count();
  const double scale = 1.0 / static_cast<double>(pad);

#pragma omp parallel for schedule(static)
  for (std::int64_t j = 0; j < g.n_angles; ++j) {
    std::vector<std::complex<double>> buffer(static_cast<std::size_t>(pad));
    const auto row = sinogram.row(j);
    for (std::int64_t i = -m; i <= m; ++i) {
      buffer[static_cast<std::size_t>((i + pad) % pad)] = row[static_cast<std::size_t>(i + m)];
    }
    fft::forward(buffer);
    for (std::size_t k = 0; k < buffer.size(); ++k) buffer[k] *= response[k];
    fft::inverse(buffer);
    for (std::int64_t l = -m_ext; l <= m_ext; ++l) {
      out(l, j) = scale * buffer[static_cast<std::size_t>((l + pad) % pad)].real();
    }
  }
  return out;
}

std::vector<double> natural_spline_moments(std::span<const double> y) {
  const std::size_t n = y.size();
  std::vector<double> moments(n, 0.0);
  if (n < 3) return moments;
  // Interior equations: M_{k-1} + 4 M_k + M_{k+1} = 6 (y_{k+1} - 2 y_k + y_{k-1}), M_0 = M_{n-1} = 0.
  const std::size_t interior = n - 2;
  std::vector<double> c(interior), d(interior);
  for (std::size_t k = 0; k < interior; ++k) {
    const double rhs = 6.0 * (y[k + 2] - 2.0 * y[k + 1] + y[k]);
    const double denom = 4.0 - (k > 0 ? c[k - 1] : 0.0);
    c[k] = 1.0 / denom;
    d[k] = (rhs - (k > 0 ? d[k - 1] : 0.0)) / denom;
  }
  moments[interior] = d[interior - 1];
  for (std::size_t k = interior - 1; k-- > 0;) moments[k + 1] = d[k] - c[k] * moments[k + 2];
  return moments;
}

Image back_project(const FilteredSinogram& filtered, std::int64_t n_pixels, Interpolation interpolation) {
  if (n_pixels < 2) throw ParameterError("back projection needs n_pixels >= 2");
  const auto& g = filtered.geometry();
  const std::int64_t n_angles = g.n_angles;
  const std::int64_t last = filtered.row_length() - 1;
  const double inv_h = 1.0 / g.radial_step;
  const double offset = static_cast<double>(filtered.extended_half_count());

  std::vector<double> cosines(static_cast<std::size_t>(n_angles)), sines(static_cast<std::size_t>(n_angles));
  for (std::int64_t j = 0; j < n_angles; ++j) {
    cosines[static_cast<std::size_t>(j)] = std::cos(g.angle(j));
    sines[static_cast<std::size_t>(j)] = std::sin(g.angle(j));
  }
  std::vector<std::vector<double>> moments;
  if (interpolation == Interpolation::cubic_spline) {
    moments.reserve(static_cast<std::size_t>(n_angles));
    for (std::int64_t j = 0; j < n_angles; ++j) moments.push_back(natural_spline_moments(filtered.row(j)));
  }

  Image image(n_pixels, g.support_radius);
  const double weight = 0.5 / static_cast<double>(n_angles);

#pragma omp parallel for schedule(static)
  for (std::int64_t p = 0; p < n_pixels; ++p) {
    const double y = image.center(p);
    std::vector<double> accumulator(static_cast<std::size_t>(n_pixels), 0.0);
    for (std::int64_t j = 0; j < n_angles; ++j) {
      const auto row = filtered.row(j);
      const double c = cosines[static_cast<std::size_t>(j)] * inv_h;
      const double base = y * sines[static_cast<std::size_t>(j)] * inv_h + offset;
      for (std::int64_t q = 0; q < n_pixels; ++q) {
        const double t = image.center(q) * c + base;  // fractional index into the row
        if (t < 0.0 || t > static_cast<double>(last)) continue;
        auto u = static_cast<std::int64_t>(t);
        if (u == last) u = last - 1;
        const double frac = t - static_cast<double>(u);
        const double y0 = row[static_cast<std::size_t>(u)];
        const double y1 = row[static_cast<std::size_t>(u + 1)];
        double value = y0 + frac * (y1 - y0);
        if (interpolation == Interpolation::cubic_spline) {
          const auto& mom = moments[static_cast<std::size_t>(j)];
          const double m0 = mom[static_cast<std::size_t>(u)];
          const double m1 = mom[static_cast<std::size_t>(u + 1)];
          const double a = 1.0 - frac;
          value += ((a * a * a - a) * m0 + (frac * frac * frac - frac) * m1) / 6.0;
        }
        accumulator[static_cast<std::size_t>(q)] += value;
      }
    }
    for (std::int64_t q = 0; q < n_pixels; ++q) image(p, q) = weight * accumulator[static_cast<std::size_t>(q)];
  }
  return image;
}

Image reconstruct(const Sinogram& sinogram, const FilterSpec& filter, const FrequencyGrid& grid,
                  std::int64_t n_pixels, Interpolation interpolation) {
  return back_project(filter_rows(sinogram, filter, grid), n_pixels, interpolation);
}

}  // namespace optfbp
