#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace graphalign {

inline int hardware_workers() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

// Runs body(i) for i in [0, n). With workers <= 1 this is a plain serial
// loop (the reference path); otherwise iterations are distributed over an
// OpenMP team. Bodies must be independent and write only to their own slot,
// so the result is identical for every worker count. If bodies throw, the
// exception with the lowest index is rethrown after the loop.
template <typename F>
void parallel_for(std::size_t n, int workers, F&& body) {
#ifdef _OPENMP
    if (workers > 1 && n > 1) {
        const int threads = static_cast<int>(
            std::min<std::size_t>(static_cast<std::size_t>(workers), n));
        std::exception_ptr error = nullptr;
        long long error_index = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
        for (long long i = 0; i < static_cast<long long>(n); ++i) {
            try {
                body(static_cast<std::size_t>(i));
            } catch (...) {
#pragma omp critical(graphalign_parallel_for_error)
                {
                    if (i < error_index) {
                        error_index = i;
                        error = std::current_exception();
                    }
                }
            }
        }
        if (error) std::rethrow_exception(error);
        return;
    }
#endif
    (void)workers;
    for (std::size_t i = 0; i < n; ++i) body(i);
}

} // namespace graphalign
