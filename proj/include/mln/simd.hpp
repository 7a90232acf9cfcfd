#pragma once

// Vector kernels for the reduction and update loops used across the library
// (norms, residuals, dense Kronecker products). Every kernel has a scalar
// reference implementation; AVX2/FMA (x86-64) and NEON (aarch64) variants are
// selected once at runtime from the CPU features.
//
// Setting MLN_SIMD=scalar in the environment forces the reference kernels.

#include <cstddef>
#include <span>
#include <string_view>

namespace mln::simd {

enum class Backend { scalar, avx2, neon };

struct KernelTable {
  Backend backend;
  double (*dot)(const double* a, const double* b, std::size_t n);
  double (*sum_squares)(const double* a, std::size_t n);
  double (*squared_distance)(const double* a, const double* b, std::size_t n);
  // y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // y = alpha * x
  void (*scaled_copy)(double alpha, const double* x, double* y, std::size_t n);
};

const KernelTable& scalar_kernels();

// Null when the backend was not compiled in or the CPU lacks the features.
const KernelTable* kernels_for(Backend backend);

// The table picked at startup.
const KernelTable& active_kernels();

std::string_view backend_name(Backend backend);

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active_kernels().dot(a.data(), b.data(), a.size());
}

inline double sum_squares(std::span<const double> a) {
  return active_kernels().sum_squares(a.data(), a.size());
}

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
  return active_kernels().squared_distance(a.data(), b.data(), a.size());
}

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  active_kernels().axpy(alpha, x.data(), y.data(), x.size());
}

inline void scaled_copy(double alpha, std::span<const double> x, std::span<double> y) {
  active_kernels().scaled_copy(alpha, x.data(), y.data(), x.size());
}

}  // namespace mln::simd
