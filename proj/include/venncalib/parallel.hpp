#pragma once

#include <cstddef>
#include <exception>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace venncalib {

// Serial reference loop. The parallel path below must produce bit-identical
// results, which tests assert by running both.
template <class F>
void for_each_index_serial(std::size_t n, F&& f) {
  for (std::size_t i = 0; i < n; ++i) f(i);
}

// Runs f(i) for i in [0, n). jobs <= 1 takes the serial path; otherwise an
// OpenMP loop with at most `jobs` threads. f(i) must write only state owned
// by index i, so the outcome is independent of scheduling.
template <class F>
void for_each_index(std::size_t n, int jobs, F&& f) {
#ifdef _OPENMP
  if (jobs > 1 && n > 1) {
    std::exception_ptr error = nullptr;
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
      try {
        f(static_cast<std::size_t>(i));
      } catch (...) {
#pragma omp critical
        if (!error) error = std::current_exception();
      }
    }
    if (error) std::rethrow_exception(error);
    return;
  }
#endif
  (void)jobs;
  for_each_index_serial(n, std::forward<F>(f));
}

inline int hardware_jobs() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace venncalib
