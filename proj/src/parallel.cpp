#include "rdos/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rdos {

void configure_threads(int requested) {
    if (requested <= 0) {
        const char* env = std::getenv("RESONATOR_DOS_THREADS");
        if (env != nullptr) {
            try {
                requested = std::stoi(env);
            } catch (...) {
                requested = 0;
            }
        }
    }
#ifdef _OPENMP
    if (requested > 0) omp_set_num_threads(requested);
#else
    (void)requested;
#endif
}

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

} // namespace rdos
