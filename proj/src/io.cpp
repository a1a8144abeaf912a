#include "optfbp/io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "optfbp/errors.hpp"

namespace optfbp::io {
namespace {

static_assert(std::endian::native == std::endian::little, "binary formats assume a little-endian host");

constexpr std::uint32_t kVersion = 1;

template <typename T>
void put(std::ostream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T get(std::istream& in, const char* what) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw FormatError(std::string("truncated file while reading ") + what);
  return value;
}

void put_magic(std::ostream& out, const char* magic) {
  out.write(magic, 4);
  put<std::uint32_t>(out, kVersion);
}

void check_magic(std::istream& in, const char* magic) {
  std::array<char, 4> got{};
  in.read(got.data(), 4);
  if (!in || std::memcmp(got.data(), magic, 4) != 0) {
    throw FormatError(std::string("bad magic, expected '") + magic + "'");
  }
  const auto version = get<std::uint32_t>(in, "version");
  if (version != kVersion) throw FormatError("unsupported version " + std::to_string(version));
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  return in;
}

}  // namespace

void write_sinogram(std::ostream& out, const Sinogram& sinogram) {
  const auto& g = sinogram.geometry();
  put_magic(out, "CTSG");
  put<std::int64_t>(out, g.radial_half_count);
  put<std::int64_t>(out, g.n_angles);
  put<double>(out, g.radial_step);
  put<double>(out, g.support_radius);
  const auto values = sinogram.values();
  out.write(reinterpret_cast<const char*>(values.data()), static_cast<std::streamsize>(values.size_bytes()));
}

Sinogram read_sinogram(std::istream& in) {
  check_magic(in, "CTSG");
  ParallelGeometry g;
  g.radial_half_count = get<std::int64_t>(in, "M");
  g.n_angles = get<std::int64_t>(in, "N_phi");
  g.radial_step = get<double>(in, "h");
  g.support_radius = get<double>(in, "R");
  if (g.radial_half_count < 1 || g.n_angles < 1 || g.radial_half_count > (1 << 24) || g.n_angles > (1 << 24)) {
    throw FormatError("implausible sinogram dimensions");
  }
  // The file stores (M, h); the bandwidth follows from h = pi/L.
  g.bandwidth = std::acos(-1.0) / g.radial_step;
  g.validate();
  std::vector<double> values(static_cast<std::size_t>(g.radial_count() * g.n_angles));
  in.read(reinterpret_cast<char*>(values.data()), static_cast<std::streamsize>(values.size() * sizeof(double)));
  if (!in) throw FormatError("truncated sinogram payload");
  for (double v : values) {
    if (!std::isfinite(v)) throw FormatError("sinogram contains non-finite values");
  }
  return Sinogram(g, std::move(values));
}

void save_sinogram(const std::string& path, const Sinogram& sinogram) {
  auto out = open_out(path);
  write_sinogram(out, sinogram);
  if (!out) throw Error("write failed for '" + path + "'");
}

Sinogram load_sinogram(const std::string& path) {
  auto in = open_in(path);
  try {
    return read_sinogram(in);
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  }
}

void write_image(std::ostream& out, const Image& image) {
  put_magic(out, "CTIM");
  put<std::int64_t>(out, image.n_pixels());
  put<double>(out, image.extent());
  const auto values = image.values();
  out.write(reinterpret_cast<const char*>(values.data()), static_cast<std::streamsize>(values.size_bytes()));
}

Image read_image(std::istream& in) {
  check_magic(in, "CTIM");
  const auto n = get<std::int64_t>(in, "n_pixels");
  const auto extent = get<double>(in, "R");
  if (n < 1 || n > (1 << 16)) throw FormatError("implausible image size");
  std::vector<double> values(static_cast<std::size_t>(n * n));
  in.read(reinterpret_cast<char*>(values.data()), static_cast<std::streamsize>(values.size() * sizeof(double)));
  if (!in) throw FormatError("truncated image payload");
  return Image(n, extent, std::move(values));
}

void save_image(const std::string& path, const Image& image) {
  auto out = open_out(path);
  write_image(out, image);
  if (!out) throw Error("write failed for '" + path + "'");
}

Image load_image(const std::string& path) {
  auto in = open_in(path);
  try {
    return read_image(in);
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  }
}

PgmWindow write_pgm(std::ostream& out, const Image& image) {
  const auto values = image.values();
  PgmWindow window{values[0], values[0]};
  for (double v : values) {
    window.min = std::min(window.min, v);
    window.max = std::max(window.max, v);
  }
  const double span = window.max - window.min;
  out << "P5\n" << image.n_pixels() << ' ' << image.n_pixels() << "\n65535\n";
  for (double v : values) {
    const double t = span > 0.0 ? (v - window.min) / span : 0.0;
    const auto level = static_cast<std::uint16_t>(std::lround(std::clamp(t, 0.0, 1.0) * 65535.0));
    // PGM samples are big-endian.
    const char bytes[2] = {static_cast<char>(level >> 8), static_cast<char>(level & 0xff)};
    out.write(bytes, 2);
  }
  return window;
}

PgmWindow save_pgm(const std::string& path, const Image& image) {
  auto out = open_out(path);
  const auto window = write_pgm(out, image);
  if (!out) throw Error("write failed for '" + path + "'");
  std::ofstream side(path + ".txt");
  if (!side) throw Error("cannot open '" + path + ".txt' for writing");
  side << "min = " << format_double(window.min) << "\nmax = " << format_double(window.max) << '\n';
  return window;
}

void save_image_bundle(const std::string& prefix, const Image& image) {
  save_image(prefix + ".ctim", image);
  save_pgm(prefix + ".pgm", image);
}

std::string format_double(double value) {
  std::array<char, 64> buffer{};
  auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value, std::chars_format::general, 17);
  return std::string(buffer.data(), ptr);
}

}  // namespace optfbp::io
