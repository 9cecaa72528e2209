#ifndef HYPTESS_PARALLEL_HPP
#define HYPTESS_PARALLEL_HPP

#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

// Parallelism pattern used everywhere: a data-parallel map writes slot i of a
// preallocated result vector, then any reduction runs serially in index
// order. Outputs are therefore bit-identical for any thread count, and
// threads == 1 is the serial reference path (a plain loop, no OpenMP region).
namespace hyptess {

inline int hardware_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

template <typename F>
void parallel_for_index(std::size_t count, int threads, F&& body) {
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (long long i = 0; i < static_cast<long long>(count); ++i)
    body(static_cast<std::size_t>(i));
#else
  for (std::size_t i = 0; i < count; ++i) body(i);
#endif
}

// Map over [0,count) into a vector, one independent evaluation per slot.
template <typename T, typename F>
std::vector<T> parallel_map(std::size_t count, int threads, F&& fn) {
  std::vector<T> out(count);
  parallel_for_index(count, threads, [&](std::size_t i) { out[i] = fn(i); });
  return out;
}

// Serial left fold in index order; pair with parallel_map for deterministic
// reductions.
template <typename T, typename Acc, typename F>
Acc ordered_fold(const std::vector<T>& items, Acc init, F&& combine) {
  Acc acc = std::move(init);
  for (const T& item : items) acc = combine(std::move(acc), item);
  return acc;
}

}  // namespace hyptess

#endif
