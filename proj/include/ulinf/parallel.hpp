#pragma once

#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace ulinf {

// Worker count from ULINF_THREADS (unset or 0 = hardware concurrency).
inline unsigned thread_count() {
    unsigned n = 0;
    if (const char* env = std::getenv("ULINF_THREADS")) {
        try {
            n = static_cast<unsigned>(std::stoul(env));
        } catch (...) {
            n = 0;
        }
    }
    if (n == 0) n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

// Computes out[i] = fn(i) for i < count. Results are written by index, so the
// caller's reduction order (and hence the result) does not depend on scheduling.
template <class T, class Fn>
std::vector<T> parallel_map(size_t count, Fn fn) {
    std::vector<T> out(count);
    unsigned workers = thread_count();
    if (workers <= 1 || count < 2) {
        for (size_t i = 0; i < count; ++i) out[i] = fn(i);
        return out;
    }
    if (workers > count) workers = static_cast<unsigned>(count);
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::mutex m;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (size_t i = w; i < count; i += workers) out[i] = fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(m);
                if (!err) err = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
    return out;
}

}  // namespace ulinf
