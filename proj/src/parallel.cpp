#include "homotransfer/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>

#include <omp.h>

namespace homotransfer {

namespace {
std::atomic<int> g_override{0};

int env_cap() {
    static const int cap = [] {
        int def = omp_get_max_threads();
        if (const char* s = std::getenv("HOMOTRANSFER_THREADS")) {
            try {
                int v = std::stoi(s);
                if (v >= 1) return std::min(v, def);
            } catch (...) {
            }
        }
        return def;
    }();
    return cap;
}
}  // namespace

int thread_cap() {
    const int o = g_override.load();
    return o > 0 ? o : env_cap();
}

void set_thread_cap(int n) { g_override.store(std::max(n, 0)); }

namespace detail {
void omp_for(std::size_t n, int threads, void (*body)(void*, std::size_t), void* ctx) {
    const long long total = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 4) num_threads(threads)
    for (long long i = 0; i < total; ++i) body(ctx, static_cast<std::size_t>(i));
}
}  // namespace detail

}  // namespace homotransfer
