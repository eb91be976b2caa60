#pragma once

#include <exception>
#include <mutex>

#include "tcomplete/tensor3.hpp"

namespace tcomplete::detail {

/// Runs body(i) for i in [0, n), in parallel when built with OpenMP.
/// The first exception thrown by any iteration is rethrown on the caller.
template <typename Body>
void parallel_for(Index n, Body&& body) {
    std::exception_ptr failure;
    std::mutex guard;
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic)
#endif
    for (Index i = 0; i < n; ++i) {
        try {
            body(i);
        } catch (...) {
            std::lock_guard<std::mutex> lock(guard);
            if (!failure)
                failure = std::current_exception();
        }
    }
    if (failure)
        std::rethrow_exception(failure);
}

} // namespace tcomplete::detail
