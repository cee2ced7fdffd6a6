#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <random>

namespace credence {

using Rng = std::mt19937_64;

// splitmix64 finalizer, used to derive well-separated seeds.
std::uint64_t mix64(std::uint64_t x);

// Independent generator for the stream identified by (seed, ids...).
// The same key always yields the same sequence, regardless of call order or thread.
Rng substream(std::uint64_t seed, std::initializer_list<std::uint64_t> ids);

double uniform01(Rng& rng);
bool bernoulli(Rng& rng, double p);

// Number of worker threads used by parallel loops (hardware concurrency, at least 1).
unsigned worker_count();

// Runs body(i) for i in [0, n). Each index is processed exactly once; callers write
// results into per-index slots so that aggregation order never depends on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, unsigned threads = 0);

}  // namespace credence
