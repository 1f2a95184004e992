#pragma once

// Execution policy shared by every data-parallel kernel.
//
// Each kernel keeps a plain serial loop as the reference path. The parallel
// path only distributes independent iterations; any reduction goes through
// deterministic_sum, whose chunking does not depend on the thread count, so
// both paths produce bit-identical results.

#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace grl {

enum class Exec { Serial, Parallel };

// Reads GRL_THREADS once; returns 0 when unset (runtime default).
int thread_limit();
void set_thread_limit(int n);

inline constexpr std::size_t kReduceChunk = 2048;

template <class F>
void parallel_for(std::size_t n, F&& body, Exec exec = Exec::Parallel) {
#ifdef _OPENMP
  if (exec == Exec::Parallel && n > 1) {
    const int cap = thread_limit();
    const long long count = static_cast<long long>(n);
    if (cap > 0) {
#pragma omp parallel for schedule(static) num_threads(cap)
      for (long long i = 0; i < count; ++i) body(static_cast<std::size_t>(i));
    } else {
#pragma omp parallel for schedule(static)
      for (long long i = 0; i < count; ++i) body(static_cast<std::size_t>(i));
    }
    return;
  }
#endif
  (void)exec;
  for (std::size_t i = 0; i < n; ++i) body(i);
}

// Sum of term(i) for i in [0, n). Partial sums over fixed-size chunks are
// combined in chunk order, independent of scheduling.
template <class F>
double deterministic_sum(std::size_t n, F&& term, Exec exec = Exec::Parallel) {
  const std::size_t chunks = (n + kReduceChunk - 1) / kReduceChunk;
  std::vector<double> partial(chunks, 0.0);
  parallel_for(
      chunks,
      [&](std::size_t c) {
        const std::size_t lo = c * kReduceChunk;
        const std::size_t hi = lo + kReduceChunk < n ? lo + kReduceChunk : n;
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += term(i);
        partial[c] = s;
      },
      exec);
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

}  // namespace grl
