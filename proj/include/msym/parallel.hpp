#pragma once

#include <cstddef>

namespace msym {

// Worker count for OpenMP kernels: MULTISYM_THREADS if set and positive,
// otherwise the OpenMP default.
int worker_threads();

}  // namespace msym
