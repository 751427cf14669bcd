#include "anneal/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace anneal {

Parallel::Parallel(int workers) : workers_(workers) {
    if (workers_ <= 0) {
        if (const char* env = std::getenv("ANNEAL_WORKERS")) workers_ = std::atoi(env);
        if (workers_ <= 0) workers_ = static_cast<int>(std::thread::hardware_concurrency());
        if (workers_ <= 0) workers_ = 1;
    }
}

void Parallel::run(std::size_t n, const std::function<void(std::size_t)>& task) const {
    if (n == 0) return;
    std::size_t nw = std::min<std::size_t>(static_cast<std::size_t>(workers_), n);
    if (nw <= 1) {
        for (std::size_t i = 0; i < n; ++i) task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex err_mutex;

    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= n || failed.load(std::memory_order_relaxed)) return;
            try {
                task(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
                failed.store(true, std::memory_order_relaxed);
                return;
            }
        }
    };

    std::vector<std::thread> threads;
    threads.reserve(nw);
    for (std::size_t t = 0; t < nw; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace anneal
