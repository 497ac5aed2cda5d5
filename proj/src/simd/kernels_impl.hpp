#pragma once

#include "dnt/simd.hpp"

namespace dnt::simd::detail {

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n);
void max_into_scalar(const double* a, const double* b, double* out, std::size_t n);
std::size_t find_greater_scalar(const double* lhs, const double* rhs, double tol, std::size_t n);
std::size_t find_triangle_violation_scalar(const double* a, const double* b, const double* c, double tol,
                                           std::size_t n);
std::size_t find_outside_scalar(const double* x, double lo, double hi, std::size_t n);

extern const KernelSet kScalar;

#if defined(DNT_HAVE_AVX2)
extern const KernelSet kAvx2;
#endif
#if defined(DNT_HAVE_NEON)
extern const KernelSet kNeon;
#endif

}  // namespace dnt::simd::detail
