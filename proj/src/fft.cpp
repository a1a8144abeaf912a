#include "optfbp/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace optfbp::fft {
namespace {

// FFTW planning is not thread-safe; execution with the new-array interface is.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(int n, int sign) {
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(n, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    auto* buffer = fftw_alloc_complex(static_cast<std::size_t>(n));
    fftw_plan plan = fftw_plan_dft_1d(n, buffer, buffer, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buffer);
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

void execute(std::span<std::complex<double>> data, int sign) {
  if (data.empty()) return;
  auto plan = cache().get(static_cast<int>(data.size()), sign);
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, ptr, ptr);
}

}  // namespace

void forward(std::span<std::complex<double>> data) { execute(data, FFTW_FORWARD); }

void inverse(std::span<std::complex<double>> data) { execute(data, FFTW_BACKWARD); }

}  // namespace optfbp::fft
