#include "a1kit/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace a1kit {

namespace {

int g_threads = 0;

int default_threads() {
    if (const char* env = std::getenv("A1KIT_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? int(hw) : 1;
}

} // namespace

void set_thread_count(int n) { g_threads = n; }

int thread_count() { return g_threads > 0 ? g_threads : default_threads(); }

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    if (n == 0) return;
    int workers = thread_count();
    if (workers <= 1 || n == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto run = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    int spawn = std::min<std::size_t>(std::size_t(workers), n) - 1;
    pool.reserve(spawn);
    for (int t = 0; t < spawn; ++t) pool.emplace_back(run);
    run();
    for (auto& th : pool) th.join();
}

} // namespace a1kit
