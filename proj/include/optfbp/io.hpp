#pragma once

#include <iosfwd>
#include <string>

#include "optfbp/geometry.hpp"
#include "optfbp/image.hpp"

namespace optfbp::io {

// "CTSG" v1: magic, u32 version, i64 M, i64 N_phi, f64 h, f64 R, then
// (2M+1)*N_phi f64 values, angle-major. All little-endian.
void write_sinogram(std::ostream& out, const Sinogram& sinogram);
Sinogram read_sinogram(std::istream& in);
void save_sinogram(const std::string& path, const Sinogram& sinogram);
Sinogram load_sinogram(const std::string& path);

// "CTIM" v1: magic, u32 version, i64 n, f64 R, then n*n f64 row-major.
void write_image(std::ostream& out, const Image& image);
Image read_image(std::istream& in);
void save_image(const std::string& path, const Image& image);
Image load_image(const std::string& path);

/// Affine window used to quantize an image to 16 bits.
struct PgmWindow {
  double min = 0.0;
  double max = 0.0;
};

/// Binary P5 PGM, maxval 65535, window [min, max] of the image mapped to
/// [0, 65535]. Returns the window used.
PgmWindow write_pgm(std::ostream& out, const Image& image);

/// Writes `path` and a `path.txt` sidecar recording the window.
PgmWindow save_pgm(const std::string& path, const Image& image);

/// Writes <prefix>.ctim, <prefix>.pgm and <prefix>.pgm.txt.
void save_image_bundle(const std::string& prefix, const Image& image);

/// Decimal with 17 significant digits; round-trips exactly.
std::string format_double(double value);

}  // namespace optfbp::io
