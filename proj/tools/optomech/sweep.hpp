// sweep.hpp — bounded worker pool for grid rows; output is assembled in grid
// order, so thread count never changes the result.

#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace optomech::cli {

using RowFn = std::function<std::vector<std::string>(std::size_t)>;

inline std::vector<std::vector<std::string>> run_rows(std::size_t count, int threads,
                                                      const RowFn& make_row) {
    std::vector<std::vector<std::string>> rows(count);
    if (count == 0)
        return rows;

    const int workers = std::max(1, std::min<int>(threads, static_cast<int>(count)));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i)
            rows[i] = make_row(i);
        return rows;
    }

    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(count);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count)
                    return;
                try {
                    rows[i] = make_row(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    }
    for (auto& thread : pool)
        thread.join();

    // rethrow the lowest-index failure so error reporting is deterministic
    for (const auto& error : errors)
        if (error)
            std::rethrow_exception(error);
    return rows;
}

} // namespace optomech::cli
