#pragma once

#include <cstdlib>
#include <functional>

#ifdef CONFIGK3_HAVE_OPENMP
#include <omp.h>
#endif

namespace configk3 {

// Thread budget: CONFIG_K3_THREADS when set, otherwise the OpenMP default.
inline int thread_budget() {
#ifdef CONFIGK3_HAVE_OPENMP
  if (const char* env = std::getenv("CONFIG_K3_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// Runs fn(i) for i in [0, n). Results must be written to preallocated
// per-index slots so the merge order never depends on scheduling.
inline void parallel_for(int n, const std::function<void(int)>& fn) {
#ifdef CONFIGK3_HAVE_OPENMP
  int threads = thread_budget();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (int i = 0; i < n; ++i) fn(i);
#else
  for (int i = 0; i < n; ++i) fn(i);
#endif
}

inline void serial_for(int n, const std::function<void(int)>& fn) {
  for (int i = 0; i < n; ++i) fn(i);
}

}  // namespace configk3
