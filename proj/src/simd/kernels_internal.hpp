#pragma once

#include <cstddef>

namespace mln::simd::detail {

double dot_scalar(const double* a, const double* b, std::size_t n);
double sum_squares_scalar(const double* a, std::size_t n);
double squared_distance_scalar(const double* a, const double* b, std::size_t n);
void axpy_scalar(double alpha, const double* x, double* y, std::size_t n);
void scaled_copy_scalar(double alpha, const double* x, double* y, std::size_t n);

#if defined(MLN_HAVE_AVX2)
double dot_avx2(const double* a, const double* b, std::size_t n);
double sum_squares_avx2(const double* a, std::size_t n);
double squared_distance_avx2(const double* a, const double* b, std::size_t n);
void axpy_avx2(double alpha, const double* x, double* y, std::size_t n);
void scaled_copy_avx2(double alpha, const double* x, double* y, std::size_t n);
#endif

#if defined(MLN_HAVE_NEON)
double dot_neon(const double* a, const double* b, std::size_t n);
double sum_squares_neon(const double* a, std::size_t n);
double squared_distance_neon(const double* a, const double* b, std::size_t n);
void axpy_neon(double alpha, const double* x, double* y, std::size_t n);
void scaled_copy_neon(double alpha, const double* x, double* y, std::size_t n);
#endif

}  // namespace mln::simd::detail
