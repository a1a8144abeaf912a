#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "optfbp/errors.hpp"
#include "optfbp/io.hpp"
#include "oracles.hpp"

using namespace optfbp;

namespace {

template <typename T>
T read_le(const std::string& bytes, std::size_t offset) {
  T v;
  std::memcpy(&v, bytes.data() + offset, sizeof(T));
  return v;
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "optfbp_io_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("sinogram binary layout and round trip") {
  const auto geo = geometry_from_angles(20, 1.5);
  const auto g = oracle::random_sinogram(geo, 4);
  std::stringstream buf;
  io::write_sinogram(buf, g);
  const auto bytes = buf.str();
  REQUIRE(bytes.size() == 4 + 4 + 8 + 8 + 8 + 8 + 8 * g.values().size());
  CHECK(bytes.substr(0, 4) == "CTSG");
  CHECK(read_le<std::uint32_t>(bytes, 4) == 1u);
  CHECK(read_le<std::int64_t>(bytes, 8) == geo.radial_half_count);
  CHECK(read_le<std::int64_t>(bytes, 16) == 20);
  CHECK(read_le<double>(bytes, 24) == geo.radial_step);
  CHECK(read_le<double>(bytes, 32) == 1.5);
  // Angle-major payload: first value is (i = -M, j = 0), the next is (i = -M + 1, j = 0).
  CHECK(read_le<double>(bytes, 40) == g(-geo.radial_half_count, 0));
  CHECK(read_le<double>(bytes, 48) == g(-geo.radial_half_count + 1, 0));

  std::stringstream in(bytes);
  const auto back = io::read_sinogram(in);
  CHECK(back.geometry().radial_half_count == geo.radial_half_count);
  CHECK(back.geometry().n_angles == geo.n_angles);
  CHECK(back.geometry().bandwidth == doctest::Approx(geo.bandwidth).epsilon(1e-15));
  CHECK(std::equal(back.values().begin(), back.values().end(), g.values().begin()));

  const auto path = scratch("s.ctsg").string();
  io::save_sinogram(path, g);
  const auto loaded = io::load_sinogram(path);
  CHECK(std::equal(loaded.values().begin(), loaded.values().end(), g.values().begin()));
}

TEST_CASE("sinogram reader rejects bad input") {
  const auto geo = geometry_from_angles(20, 1.0);
  std::stringstream buf;
  io::write_sinogram(buf, oracle::random_sinogram(geo, 4));
  const auto good = buf.str();

  auto read = [](std::string bytes) {
    std::stringstream in(bytes);
    return io::read_sinogram(in);
  };
  std::string magic = good;
  magic[0] = 'X';
  CHECK_THROWS_AS(read(magic), FormatError);
  std::string version = good;
  version[4] = 2;
  CHECK_THROWS_AS(read(version), FormatError);
  CHECK_THROWS_AS(read(good.substr(0, good.size() - 3)), FormatError);
  std::string nan = good;
  const double bad = std::numeric_limits<double>::quiet_NaN();
  std::memcpy(nan.data() + 40, &bad, 8);
  CHECK_THROWS_AS(read(nan), FormatError);
  CHECK_THROWS_AS(io::load_sinogram("/nonexistent/x.ctsg"), Error);
}

TEST_CASE("image binary layout and round trip") {
  Image img(5, 2.0);
  for (std::size_t k = 0; k < img.values().size(); ++k) img.values()[k] = 0.25 * static_cast<double>(k) - 1.0;
  std::stringstream buf;
  io::write_image(buf, img);
  const auto bytes = buf.str();
  REQUIRE(bytes.size() == 4 + 4 + 8 + 8 + 8 * 25);
  CHECK(bytes.substr(0, 4) == "CTIM");
  CHECK(read_le<std::uint32_t>(bytes, 4) == 1u);
  CHECK(read_le<std::int64_t>(bytes, 8) == 5);
  CHECK(read_le<double>(bytes, 16) == 2.0);
  CHECK(read_le<double>(bytes, 24 + 8 * 7) == img(1, 2));

  std::stringstream in(bytes);
  const auto back = io::read_image(in);
  CHECK(back.n_pixels() == 5);
  CHECK(back.extent() == 2.0);
  CHECK(std::equal(back.values().begin(), back.values().end(), img.values().begin()));

  std::string magic = bytes;
  magic[3] = 'X';
  std::stringstream bad(magic);
  CHECK_THROWS_AS(io::read_image(bad), FormatError);
}

TEST_CASE("PGM export with window sidecar") {
  Image img(3, 1.0, {-1.0, 0.0, 1.0, 0.5, 0.5, 0.5, -1.0, 1.0, 0.0});
  std::stringstream buf;
  const auto window = io::write_pgm(buf, img);
  CHECK(window.min == -1.0);
  CHECK(window.max == 1.0);
  const auto bytes = buf.str();
  const std::string header = "P5\n3 3\n65535\n";
  REQUIRE(bytes.size() == header.size() + 2 * 9);
  CHECK(bytes.substr(0, header.size()) == header);
  auto sample = [&](std::size_t k) {
    const auto hi = static_cast<unsigned char>(bytes[header.size() + 2 * k]);
    const auto lo = static_cast<unsigned char>(bytes[header.size() + 2 * k + 1]);
    return hi * 256 + lo;
  };
  CHECK(sample(0) == 0);
  CHECK(sample(2) == 65535);
  CHECK(std::abs(sample(1) - 32768) <= 1);

  const auto prefix = scratch("bundle").string();
  io::save_image_bundle(prefix, img);
  CHECK(std::filesystem::exists(prefix + ".ctim"));
  CHECK(std::filesystem::exists(prefix + ".pgm"));
  std::ifstream side(prefix + ".pgm.txt");
  std::string text((std::istreambuf_iterator<char>(side)), std::istreambuf_iterator<char>());
  CHECK(text == "min = -1\nmax = 1\n");
}

TEST_CASE("format_double round trips") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 123456789.123456789, 0.0}) {
    CHECK(std::stod(io::format_double(v)) == v);
  }
  CHECK(io::format_double(0.05) == "0.050000000000000003");
}
