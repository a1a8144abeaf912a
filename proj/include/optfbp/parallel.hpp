#pragma once

namespace optfbp::parallel {

/// Applies CT_THREADS (if set to a positive integer) as the OpenMP thread cap.
/// Returns the resulting maximum thread count.
int configure_from_env();

void set_threads(int n);
int max_threads();

}  // namespace optfbp::parallel
