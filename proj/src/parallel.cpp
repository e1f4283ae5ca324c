#include "gowerslab/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace gowerslab {

namespace {

unsigned g_worker_override = 0;

unsigned env_workers() {
    if (const char* s = std::getenv("GOWERS_LAB_THREADS")) {
        const long v = std::strtol(s, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return 0;
}

} // namespace

unsigned worker_count() {
    if (g_worker_override > 0) return g_worker_override;
    if (const unsigned e = env_workers()) return e;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

void set_worker_count(unsigned n) { g_worker_override = n; }

double pairwise_sum(std::span<const double> xs) {
    if (xs.size() <= 32) {
        double s = 0.0;
        for (const double x : xs) s += x;
        return s;
    }
    const std::size_t half = xs.size() / 2;
    return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

void parallel_for(std::int64_t count, const std::function<void(std::int64_t)>& fn) {
    if (count <= 0) return;
    const unsigned workers =
        static_cast<unsigned>(std::min<std::int64_t>(worker_count(), count));
    if (workers <= 1) {
        for (std::int64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::int64_t> next{0};
    std::vector<std::jthread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        threads.emplace_back([&] {
            for (;;) {
                const std::int64_t i = next.fetch_add(1, std::memory_order_relaxed);
                if (i >= count) return;
                fn(i);
            }
        });
    }
}

double parallel_sum(std::int64_t count, const std::function<double(std::int64_t)>& term) {
    if (count <= 0) return 0.0;
    std::vector<double> partials(static_cast<std::size_t>(count));
    parallel_for(count, [&](std::int64_t i) { partials[static_cast<std::size_t>(i)] = term(i); });
    return pairwise_sum(partials);
}

} // namespace gowerslab
