#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace henon {

// Runs body(row) for every row in [0, rows) on up to `threads` workers. Rows are
// handed out in blocks from a shared counter; each call must write only its own
// output slots, so results never depend on scheduling.
template <class Body>
void parallel_rows(std::size_t rows, unsigned threads, Body&& body, std::size_t block = 1) {
    if (rows == 0) return;
    threads = std::max(1u, threads);
    block = std::max<std::size_t>(1, block);
    if (threads == 1) {
        for (std::size_t r = 0; r < rows; ++r) body(r);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;) {
            std::size_t begin = next.fetch_add(block);
            if (begin >= rows) return;
            std::size_t end = std::min(rows, begin + block);
            try {
                for (std::size_t r = begin; r < end; ++r) body(r);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(rows);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    unsigned n = static_cast<unsigned>(std::min<std::size_t>(threads, rows));
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

inline unsigned default_thread_count() {
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1u : n;
}

} // namespace henon
