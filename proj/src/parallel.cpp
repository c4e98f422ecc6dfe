#include "hlsc/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace hlsc::detail {

namespace {

int read_thread_budget() {
    const char* env = std::getenv("HOWARD_LSC_THREADS");
    long v = 0;
    if (env) v = std::strtol(env, nullptr, 10);
    if (v <= 0) v = static_cast<long>(std::thread::hardware_concurrency());
    return static_cast<int>(std::max(1L, v));
}

// Below this many nodes the spawn cost dominates any gain.
constexpr int kSerialCutoff = 2048;

}  // namespace

int thread_budget() {
    static const int budget = read_thread_budget();
    return budget;
}

void parallel_for(int n, const std::function<void(int, int)>& body) {
    const int threads = std::min(thread_budget(), std::max(1, n / kSerialCutoff));
    if (threads <= 1 || n < kSerialCutoff) {
        body(0, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    const int chunk = (n + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        int begin = t * chunk;
        int end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&body, begin, end] { body(begin, end); });
    }
    for (auto& th : pool) th.join();
}

}  // namespace hlsc::detail
