#pragma once

#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace circlekit {

/// Worker count used by enumeration kernels; 0 restores the default (1).
void set_thread_count(unsigned threads);
unsigned thread_count();

namespace detail {
/// Set inside pool workers so nested maps run inline.
inline thread_local bool in_worker = false;
}

/// Evaluates fn(i) for i in [0, count) and returns the results in index order.
/// Work is striped over thread_count() workers; the result does not depend
/// on the worker count, so reductions over it are reproducible.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t count, Fn&& fn)
{
    std::vector<T> out(count);
    unsigned workers = thread_count();
    if (workers <= 1 || count <= 1 || detail::in_worker) {
        for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
        return out;
    }
    if (workers > count) workers = static_cast<unsigned>(count);

    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) {
        pool.emplace_back([&, t] {
            detail::in_worker = true;
            try {
                for (std::size_t i = t; i < count; i += workers) out[i] = fn(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
    return out;
}

} // namespace circlekit
