#pragma once

// Data-parallel scans used by the exhaustive algorithms. Every kernel has a
// serial reference path; both return identical results, independent of the
// thread schedule.

#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ff {

enum class Exec { serial, parallel };

/// Process-wide default, Exec::parallel unless FUSIONFORGE_SERIAL is set.
Exec default_exec();

namespace kernels {

/// Indices i in [0, n) with pred(i), ascending.
template <class Pred>
std::vector<std::size_t> filter_indices(std::size_t n, Pred&& pred, Exec exec = default_exec()) {
  std::vector<std::size_t> out;
  if (exec == Exec::serial || n < 4096) {
    for (std::size_t i = 0; i < n; ++i)
      if (pred(i)) out.push_back(i);
    return out;
  }
#ifdef _OPENMP
  const int nthreads = omp_get_max_threads();
  std::vector<std::vector<std::size_t>> parts(static_cast<std::size_t>(nthreads));
#pragma omp parallel num_threads(nthreads)
  {
    auto& mine = parts[static_cast<std::size_t>(omp_get_thread_num())];
    // static schedule: each thread owns one contiguous block, so the blocks
    // concatenate in ascending order.
#pragma omp for schedule(static)
    for (long long i = 0; i < static_cast<long long>(n); ++i)
      if (pred(static_cast<std::size_t>(i))) mine.push_back(static_cast<std::size_t>(i));
  }
  for (auto& part : parts) out.insert(out.end(), part.begin(), part.end());
#else
  for (std::size_t i = 0; i < n; ++i)
    if (pred(i)) out.push_back(i);
#endif
  return out;
}

/// Evaluates fn(i) for i in [0, n) into a vector, index-aligned.
template <class T, class Fn>
std::vector<T> map_indices(std::size_t n, Fn&& fn, Exec exec = default_exec()) {
  std::vector<T> out(n);
  if (exec == Exec::serial || n < 64) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
#pragma omp parallel for schedule(dynamic, 16)
  for (long long i = 0; i < static_cast<long long>(n); ++i)
    out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
  return out;
}

}  // namespace kernels
}  // namespace ff
