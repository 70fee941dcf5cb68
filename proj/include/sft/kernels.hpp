#pragma once

// Hot loops with a serial reference and an OpenMP version. The serial
// versions are what the tests compare against; `multiply` dispatches on size.

#include <cstddef>

namespace sft::kernels {

// c (m×p, zero-initialised) += a (m×n) · b (n×p), row-major.
template <class T>
void multiply_serial(const T *a, const T *b, T *c, std::size_t m, std::size_t n,
                     std::size_t p) {
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const T &aik = a[i * n + k];
      if (aik == 0)
        continue;
      for (std::size_t j = 0; j < p; ++j)
        c[i * p + j] += aik * b[k * p + j];
    }
}

template <class T>
void multiply_parallel(const T *a, const T *b, T *c, std::size_t m,
                       std::size_t n, std::size_t p) {
  const long rows = static_cast<long>(m);
#pragma omp parallel for schedule(static)
  for (long i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const T &aik = a[i * n + k];
      if (aik == 0)
        continue;
      for (std::size_t j = 0; j < p; ++j)
        c[i * p + j] += aik * b[k * p + j];
    }
}

// Below this many multiply-adds the thread fork costs more than it saves.
inline constexpr std::size_t kParallelThreshold = 32768;

template <class T>
void multiply(const T *a, const T *b, T *c, std::size_t m, std::size_t n,
              std::size_t p) {
  if (m * n * p >= kParallelThreshold && m > 1)
    multiply_parallel(a, b, c, m, n, p);
  else
    multiply_serial(a, b, c, m, n, p);
}

} // namespace sft::kernels
