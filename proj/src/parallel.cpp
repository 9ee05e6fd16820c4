#include "kurepa/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace kurepa {

void apply_thread_cap() {
#ifdef _OPENMP
    const char* env = std::getenv("KUREPA_THREADS");
    if (!env) return;
    try {
        int n = std::stoi(env);
        if (n > 0) omp_set_num_threads(n);
    } catch (...) {
        // unreadable value: leave the default
    }
#endif
}

std::size_t effective_threads() {
#ifdef _OPENMP
    return static_cast<std::size_t>(omp_get_max_threads());
#else
    return 1;
#endif
}

}  // namespace kurepa
