#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace trexkit {

// Runs fn(i) for i in [0, count) using up to `degree` worker threads.
// Work is sharded by index, each worker owns a fixed residue class, and
// callers write results into pre-sized slots, so the outcome is identical
// for every degree (including 0/1 -> plain loop).
inline void parallel_for(std::size_t count, unsigned degree,
                         const std::function<void(std::size_t)>& fn) {
    if (count == 0) return;
    const std::size_t workers =
        degree <= 1 ? 1 : std::min<std::size_t>(degree, count);
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }

    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::vector<std::exception_ptr> errors(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < count; i += workers) fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace trexkit
