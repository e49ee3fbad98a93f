#pragma once

#include <cstddef>

// Runs body(i) for i in [0, count). The parallel branch is a real branch,
// not an OpenMP if-clause: entering a parallel region costs several
// microseconds even for a team of one, which dwarfs the small-state
// kernels that get called hundreds of times per evolution.

namespace dtc::detail {

template <class F>
inline void indexed_loop(std::ptrdiff_t count, bool parallel, F&& body) {
    if (parallel) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < count; ++i) body(i);
    } else {
        for (std::ptrdiff_t i = 0; i < count; ++i) body(i);
    }
}

}  // namespace dtc::detail
