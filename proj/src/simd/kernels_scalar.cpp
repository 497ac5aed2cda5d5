#include "kernels_impl.hpp"

namespace dnt::simd::detail {

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) y[k] += alpha * x[k];
}

void max_into_scalar(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) out[k] = a[k] > b[k] ? a[k] : b[k];
}

std::size_t find_greater_scalar(const double* lhs, const double* rhs, double tol, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    if (lhs[k] > rhs[k] + tol) return k;
  }
  return npos;
}

std::size_t find_triangle_violation_scalar(const double* a, const double* b, const double* c, double tol,
                                           std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k] + b[k] < c[k] - tol) return k;
  }
  return npos;
}

std::size_t find_outside_scalar(const double* x, double lo, double hi, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    if (!(x[k] >= lo && x[k] <= hi)) return k;
  }
  return npos;
}

const KernelSet kScalar{
    "scalar", axpy_scalar, max_into_scalar, find_greater_scalar, find_triangle_violation_scalar,
    find_outside_scalar,
};

}  // namespace dnt::simd::detail
