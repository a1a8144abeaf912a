#pragma once

#include <complex>
#include <span>

namespace optfbp::fft {

/// In-place unnormalized forward DFT: X_k = sum_n x_n exp(-2 pi i n k / N).
void forward(std::span<std::complex<double>> data);

/// In-place unnormalized inverse DFT: x_n = sum_k X_k exp(+2 pi i n k / N).
void inverse(std::span<std::complex<double>> data);

}  // namespace optfbp::fft
