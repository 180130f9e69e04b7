#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>

namespace bsl {

// --- counter-based RNG -------------------------------------------------
// Every draw is a pure function of (seed, index), so streams are
// reproducible and order-independent under any parallel schedule.

inline std::uint64_t mix_bits(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

inline std::uint64_t hash_counter(std::uint64_t seed, std::uint64_t index) {
  return mix_bits(seed + 0x9E3779B97F4A7C15ull * (index + 1));
}

// bits -> [0, 1)
inline double uniform01(std::uint64_t bits) {
  return double(bits >> 11) * 0x1.0p-53;
}

// Two independent standard gaussians from counter slots {2*index, 2*index+1}.
void gauss_pair(std::uint64_t seed, std::uint64_t index, double& g0, double& g1);

// Sequential convenience view over the counter stream.
struct CounterRng {
  std::uint64_t seed = 0;
  std::uint64_t index = 0;

  double next01() { return uniform01(hash_counter(seed, index++)); }
  double next_in(double lo, double hi) { return lo + (hi - lo) * next01(); }
  std::uint64_t next_bits() { return hash_counter(seed, index++); }
  // one gaussian; consumes two counter slots
  double next_gauss();
  // uniform integer in [0, m)
  std::uint64_t next_below(std::uint64_t m) { return next_bits() % m; }
};

// --- deterministic reduction -------------------------------------------

// Pairwise sum of v[0..count) in canonical order; error O(log n) ulps.
double pairwise_sum(const double* v, std::size_t count);

template <class F>
double pairwise_map_sum(std::size_t lo, std::size_t hi, F&& term) {
  if (hi - lo <= 64) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += term(i);
    return s;
  }
  std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_map_sum(lo, mid, term) + pairwise_map_sum(mid, hi, term);
}

// --- worker pool ----------------------------------------------------------

// Hardware concurrency capped by the BSL_THREADS environment variable; >= 1.
int worker_count();

// Runs body(lo, hi) over a partition of [0, count). Chunks may execute on
// different threads; results must be written to disjoint locations.
// Exceptions are rethrown from the lowest-indexed failing chunk.
void parallel_chunks(std::size_t count,
                     const std::function<void(std::size_t, std::size_t)>& body);

// --- formatting ----------------------------------------------------------

// %.17g rendering (shortest lossless is not needed; 17g is deterministic).
std::string format_full(double x);
// %.*g rendering for human-facing tables
std::string format_sig(double x, int digits);

}  // namespace bsl
