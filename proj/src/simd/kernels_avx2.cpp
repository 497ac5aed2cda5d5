// Compiled with -mavx2 only; selected at runtime after a CPU feature check.

#include <immintrin.h>

#include <bit>

#include "kernels_impl.hpp"

namespace dnt::simd::detail {
namespace {

constexpr std::size_t kLanes = 4;

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t k = 0;
  for (; k + kLanes <= n; k += kLanes) {
    __m256d vy = _mm256_loadu_pd(y + k);
    // mul then add, never fused: must match the scalar reference bit for bit
    vy = _mm256_add_pd(vy, _mm256_mul_pd(va, _mm256_loadu_pd(x + k)));
    _mm256_storeu_pd(y + k, vy);
  }
  axpy_scalar(alpha, x + k, y + k, n - k);
}

void max_into_avx2(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t k = 0;
  for (; k + kLanes <= n; k += kLanes) {
    // maxpd(a, b) == (a > b ? a : b), including the NaN case
    _mm256_storeu_pd(out + k, _mm256_max_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k)));
  }
  max_into_scalar(a + k, b + k, out + k, n - k);
}

std::size_t first_lane(int movemask) { return static_cast<std::size_t>(std::countr_zero(static_cast<unsigned>(movemask))); }

std::size_t find_greater_avx2(const double* lhs, const double* rhs, double tol, std::size_t n) {
  const __m256d vt = _mm256_set1_pd(tol);
  std::size_t k = 0;
  for (; k + kLanes <= n; k += kLanes) {
    const __m256d bound = _mm256_add_pd(_mm256_loadu_pd(rhs + k), vt);
    const int m = _mm256_movemask_pd(_mm256_cmp_pd(_mm256_loadu_pd(lhs + k), bound, _CMP_GT_OQ));
    if (m != 0) return k + first_lane(m);
  }
  const std::size_t tail = find_greater_scalar(lhs + k, rhs + k, tol, n - k);
  return tail == npos ? npos : k + tail;
}

std::size_t find_triangle_violation_avx2(const double* a, const double* b, const double* c, double tol,
                                         std::size_t n) {
  const __m256d vt = _mm256_set1_pd(tol);
  std::size_t k = 0;
  for (; k + kLanes <= n; k += kLanes) {
    const __m256d sum = _mm256_add_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k));
    const __m256d bound = _mm256_sub_pd(_mm256_loadu_pd(c + k), vt);
    const int m = _mm256_movemask_pd(_mm256_cmp_pd(sum, bound, _CMP_LT_OQ));
    if (m != 0) return k + first_lane(m);
  }
  const std::size_t tail = find_triangle_violation_scalar(a + k, b + k, c + k, tol, n - k);
  return tail == npos ? npos : k + tail;
}

std::size_t find_outside_avx2(const double* x, double lo, double hi, std::size_t n) {
  const __m256d vlo = _mm256_set1_pd(lo);
  const __m256d vhi = _mm256_set1_pd(hi);
  std::size_t k = 0;
  for (; k + kLanes <= n; k += kLanes) {
    const __m256d v = _mm256_loadu_pd(x + k);
    const __m256d inside = _mm256_and_pd(_mm256_cmp_pd(v, vlo, _CMP_GE_OQ), _mm256_cmp_pd(v, vhi, _CMP_LE_OQ));
    const int m = ~_mm256_movemask_pd(inside) & 0xF;
    if (m != 0) return k + first_lane(m);
  }
  const std::size_t tail = find_outside_scalar(x + k, lo, hi, n - k);
  return tail == npos ? npos : k + tail;
}

}  // namespace

const KernelSet kAvx2{
    "avx2", axpy_avx2, max_into_avx2, find_greater_avx2, find_triangle_violation_avx2, find_outside_avx2,
};

}  // namespace dnt::simd::detail
