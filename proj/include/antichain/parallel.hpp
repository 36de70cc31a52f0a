#pragma once

#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace antichain {

// Execution mode for the replication kernels. Every parallel kernel has a
// serial twin reached by ExecMode::Serial; iterations own disjoint output
// slots and private streams, so the two modes are bit-identical.
enum class ExecMode { Serial, OpenMP };

inline ExecMode default_exec_mode() {
#ifdef _OPENMP
  return ExecMode::OpenMP;
#else
  return ExecMode::Serial;
#endif
}

inline int hardware_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

template <class Body>
void par_for(std::int64_t n, ExecMode mode, Body&& body) {
#ifdef _OPENMP
  if (mode == ExecMode::OpenMP) {
    // chunked dynamic: balances uneven work (CFTP doubling) without paying
    // per-iteration dispatch on cheap bodies
#pragma omp parallel for schedule(dynamic, 32)
    for (std::int64_t i = 0; i < n; ++i) body(i);
    return;
  }
#else
  (void)mode;
#endif
  for (std::int64_t i = 0; i < n; ++i) body(i);
}

}  // namespace antichain
