#include "optfbp/parallel.hpp"

#include <omp.h>

#include <charconv>
#include <cstdlib>
#include <cstring>

namespace optfbp::parallel {

int configure_from_env() {
  if (const char* env = std::getenv("CT_THREADS")) {
    int n = 0;
    auto [ptr, ec] = std::from_chars(env, env + std::strlen(env), n);
    if (ec == std::errc() && n > 0) omp_set_num_threads(n);
  }
  return omp_get_max_threads();
}

void set_threads(int n) {
  if (n > 0) omp_set_num_threads(n);
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace optfbp::parallel
