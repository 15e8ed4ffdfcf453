// parallel.hpp - parallel loop over independent output slots.
//
// Contract: the body writes only to its own index, so results are identical
// for any thread count (each output's reduction order is fixed).
#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace astk {

inline void set_thread_count(int n) {
#ifdef _OPENMP
    if (n > 0) omp_set_num_threads(n);
#else
    (void)n;
#endif
}

template <class F>
void parallel_for(std::ptrdiff_t n, F&& body) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8)
    for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
#else
    for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
#endif
}

} // namespace astk
