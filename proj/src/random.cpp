#include "optfbp/random.hpp"

#include <boost/math/special_functions/erf.hpp>
#include <numbers>

namespace optfbp::random {

double normal(std::uint64_t key, std::uint64_t c0, std::uint64_t c1, std::uint64_t c2) {
  const double u = uniform(key, c0, c1, c2);
  // Phi^{-1}(u) = -sqrt(2) * erfc^{-1}(2u)
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * u);
}

}  // namespace optfbp::random
