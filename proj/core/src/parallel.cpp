#include "npadi/parallel.hpp"

#include "npadi/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace npadi {

bool parallel_available() noexcept {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

void set_thread_count(int n) {
    if (n < 1) throw ArgumentError("thread count must be at least 1");
#ifdef _OPENMP
    omp_set_num_threads(n);
#endif
}

int thread_count() noexcept {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

} // namespace npadi
