#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

namespace homotransfer {

// Every parallel kernel keeps a serial twin; tests compare the two.
enum class Exec { serial, parallel };

// Thread cap: min(HOMOTRANSFER_THREADS, OpenMP default). Read once.
int thread_cap();
// Overrides the cap for the rest of the process (0 restores the default).
void set_thread_cap(int n);

namespace detail {
void omp_for(std::size_t n, int threads, void (*body)(void*, std::size_t), void* ctx);
}

// Calls f(i) for i in [0, n). Exceptions thrown by f are rethrown on the
// calling thread (first one wins); results must not depend on the schedule.
template <class F>
void parallel_for(std::size_t n, Exec exec, F&& f) {
    if (exec == Exec::serial || n < 2 || thread_cap() <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    struct Ctx {
        F* f;
        std::exception_ptr err;
        std::mutex mu;
    } ctx{&f, nullptr, {}};
    detail::omp_for(n, thread_cap(), [](void* p, std::size_t i) {
        auto* c = static_cast<Ctx*>(p);
        try {
            (*c->f)(i);
        } catch (...) {
            std::lock_guard<std::mutex> lk(c->mu);
            if (!c->err) c->err = std::current_exception();
        }
    }, &ctx);
    if (ctx.err) std::rethrow_exception(ctx.err);
}

}  // namespace homotransfer
