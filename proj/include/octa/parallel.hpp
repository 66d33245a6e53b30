#pragma once

#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace octa {

// OCTA_THREADS caps the worker count; default is the hardware concurrency
inline unsigned thread_count() {
    unsigned n = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("OCTA_THREADS")) {
        const long v = std::atol(env);
        if (v > 0) n = static_cast<unsigned>(v);
    }
    return n == 0 ? 1 : n;
}

// f(i) for i in [0, n); callers write results by index so output order is fixed
template <class F>
void parallel_for(std::size_t n, F&& f) {
    const unsigned workers = std::min<std::size_t>(thread_count(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex mu;
    auto body = [&] {
        for (std::size_t i; (i = next++) < n;) {
            try {
                f(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                if (!err) err = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(body);
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace octa
