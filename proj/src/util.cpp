#include "bsl/util.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace bsl {

static constexpr double kTwoPi = 6.28318530717958647692;

void gauss_pair(std::uint64_t seed, std::uint64_t index, double& g0, double& g1) {
  // u1 in (0, 1] so log(u1) is finite
  double u1 = (double((hash_counter(seed, 2 * index) >> 11)) + 1.0) * 0x1.0p-53;
  double u2 = uniform01(hash_counter(seed, 2 * index + 1));
  double r = std::sqrt(-2.0 * std::log(u1));
  double t = kTwoPi * u2;
  g0 = r * std::cos(t);
  g1 = r * std::sin(t);
}

double CounterRng::next_gauss() {
  double u1 = (double(next_bits() >> 11) + 1.0) * 0x1.0p-53;
  double u2 = uniform01(next_bits());
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

double pairwise_sum(const double* v, std::size_t count) {
  if (count <= 64) {
    double s = 0.0;
    for (std::size_t i = 0; i < count; ++i) s += v[i];
    return s;
  }
  std::size_t half = count / 2;
  return pairwise_sum(v, half) + pairwise_sum(v + half, count - half);
}

int worker_count() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  long cap = hw;
  if (const char* env = std::getenv("BSL_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) cap = std::min<long>(cap, v);
  }
  return static_cast<int>(std::max(1L, cap));
}

void parallel_chunks(std::size_t count,
                     const std::function<void(std::size_t, std::size_t)>& body) {
  const int workers = worker_count();
  if (workers <= 1 || count < 4096) {
    body(0, count);
    return;
  }
  const std::size_t chunk = (count + workers - 1) / workers;
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  auto run = [&](int w) {
    std::size_t lo = w * chunk;
    std::size_t hi = std::min(count, lo + chunk);
    if (lo >= hi) return;
    try {
      body(lo, hi);
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  for (int w = 1; w < workers; ++w) pool.emplace_back(run, w);
  run(0);
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::string format_full(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_sig(double x, int digits) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

}  // namespace bsl
