#include "msym/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace msym {

int worker_threads() {
  int threads = omp_get_max_threads();
  if (const char* env = std::getenv("MULTISYM_THREADS")) {
    try {
      int cap = std::stoi(env);
      if (cap > 0 && cap < threads) threads = cap;
    } catch (const std::exception&) {
      // ignore malformed values
    }
  }
  return threads;
}

}  // namespace msym
