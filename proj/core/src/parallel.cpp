#include "voxelaug/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "voxelaug/error.hpp"

namespace voxelaug {

int worker_cap() {
    if (const char* env = std::getenv("VOXELAUG_THREADS"); env != nullptr && *env != '\0') {
        int value = 0;
        const char* end = env + std::strlen(env);
        auto [ptr, ec] = std::from_chars(env, end, value);
        if (ec != std::errc{} || ptr != end || value < 1) {
            throw ArgumentError(std::string("VOXELAUG_THREADS must be a positive integer, got '") + env + "'");
        }
        return value;
    }
    return std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
}

int resolve_workers(int requested) {
    const int cap = worker_cap();
    return requested <= 0 ? cap : std::min(requested, cap);
}

void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn) {
    const auto count = static_cast<std::size_t>(std::max(1, workers));
    if (count == 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto loop = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next = n;
            }
        }
    };
    {
        std::vector<std::jthread> threads;
        for (std::size_t t = 0; t < std::min(count, n); ++t) {
            threads.emplace_back(loop);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

}  // namespace voxelaug
