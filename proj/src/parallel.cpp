#include "rmhd/parallel.hpp"

#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rmhd {

int thread_count() {
    static const int cached = [] {
        int hw = 1;
#ifdef _OPENMP
        hw = omp_get_max_threads();
#endif
        if (const char* env = std::getenv("RIEMANN_MHD_THREADS")) {
            const int req = std::atoi(env);
            if (req >= 1) return req;
        }
        return hw;
    }();
    return cached;
}

} // namespace rmhd
