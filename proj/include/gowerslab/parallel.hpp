#pragma once

#include <cstdint>
#include <functional>
#include <span>

namespace gowerslab {

// Worker cap: explicit set_worker_count() > GOWERS_LAB_THREADS env > hardware.
unsigned worker_count();
void set_worker_count(unsigned n); // 0 restores the automatic choice

// Recursive pairwise (tree) summation; deterministic for a fixed input order.
double pairwise_sum(std::span<const double> xs);

// Runs fn(i) for i in [0, count) across workers. fn calls must be independent.
void parallel_for(std::int64_t count, const std::function<void(std::int64_t)>& fn);

// Deterministic parallel reduction: term(i) values are combined by pairwise
// summation in index order, so the result is independent of the worker count.
double parallel_sum(std::int64_t count, const std::function<double(std::int64_t)>& term);

} // namespace gowerslab
