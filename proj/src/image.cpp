#include "optfbp/image.hpp"

#include <string>

#include "optfbp/errors.hpp"

namespace optfbp {

Image::Image(std::int64_t n_pixels, double extent)
    : n_(n_pixels), extent_(extent), values_(static_cast<std::size_t>(n_pixels * n_pixels), 0.0) {
  if (n_pixels < 1) throw ParameterError("image needs at least one pixel");
}

Image::Image(std::int64_t n_pixels, double extent, std::vector<double> values)
    : n_(n_pixels), extent_(extent), values_(std::move(values)) {
  if (n_pixels < 1) throw ParameterError("image needs at least one pixel");
  if (values_.size() != static_cast<std::size_t>(n_pixels * n_pixels)) {
    throw DimensionError("image of " + std::to_string(n_pixels) + "^2 pixels got " +
                         std::to_string(values_.size()) + " values");
  }
}

}  // namespace optfbp
