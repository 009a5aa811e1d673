#include "kmgm/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace kmgm {
namespace {

std::atomic<std::size_t> g_thread_cap{0};
thread_local bool t_inside_region = false;

}  // namespace

void set_num_threads(std::size_t count) { g_thread_cap.store(count); }

std::size_t num_threads() {
    const std::size_t cap = g_thread_cap.load();
    if (cap > 0) return cap;
    return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t)>& body) {
    if (end <= begin) return;
    const std::size_t count = end - begin;
    const std::size_t workers = std::min(num_threads(), count);
    if (workers <= 1 || t_inside_region) {
        for (std::size_t i = begin; i < end; ++i) body(i);
        return;
    }

    std::atomic<std::size_t> next{begin};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto run = [&] {
        t_inside_region = true;
        for (std::size_t i = next.fetch_add(1); i < end; i = next.fetch_add(1)) {
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(end);
            }
        }
        t_inside_region = false;
    };

    {
        std::vector<std::jthread> pool;
        pool.reserve(workers - 1);
        for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run);
        run();
    }
    if (failure) std::rethrow_exception(failure);
}

}  // namespace kmgm
