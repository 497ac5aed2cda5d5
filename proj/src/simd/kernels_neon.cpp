// aarch64 only. NEON is baseline there, so no runtime feature probe is needed.

#include <arm_neon.h>

#include "kernels_impl.hpp"

namespace dnt::simd::detail {
namespace {

constexpr std::size_t kLanes = 2;

// Index of the first set lane in a 2-lane comparison result, or npos.
std::size_t first_set(uint64x2_t m) {
  if (vgetq_lane_u64(m, 0) != 0) return 0;
  if (vgetq_lane_u64(m, 1) != 0) return 1;
  return npos;
}

void axpy_neon(double alpha, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(alpha);
  std::size_t k = 0;
  for (; k + kLanes <= n; k += kLanes) {
    // vmulq + vaddq, not vfmaq: keeps parity with the scalar reference
    vst1q_f64(y + k, vaddq_f64(vld1q_f64(y + k), vmulq_f64(va, vld1q_f64(x + k))));
  }
  axpy_scalar(alpha, x + k, y + k, n - k);
}

void max_into_neon(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t k = 0;
  for (; k + kLanes <= n; k += kLanes) {
    const float64x2_t va = vld1q_f64(a + k);
    const float64x2_t vb = vld1q_f64(b + k);
    // vmaxq_f64 propagates NaN; select keeps (a > b ? a : b)
    vst1q_f64(out + k, vbslq_f64(vcgtq_f64(va, vb), va, vb));
  }
  max_into_scalar(a + k, b + k, out + k, n - k);
}

std::size_t find_greater_neon(const double* lhs, const double* rhs, double tol, std::size_t n) {
  const float64x2_t vt = vdupq_n_f64(tol);
  std::size_t k = 0;
  for (; k + kLanes <= n; k += kLanes) {
    const std::size_t lane = first_set(vcgtq_f64(vld1q_f64(lhs + k), vaddq_f64(vld1q_f64(rhs + k), vt)));
    if (lane != npos) return k + lane;
  }
  const std::size_t tail = find_greater_scalar(lhs + k, rhs + k, tol, n - k);
  return tail == npos ? npos : k + tail;
}

std::size_t find_triangle_violation_neon(const double* a, const double* b, const double* c, double tol,
                                         std::size_t n) {
  const float64x2_t vt = vdupq_n_f64(tol);
  std::size_t k = 0;
  for (; k + kLanes <= n; k += kLanes) {
    const float64x2_t sum = vaddq_f64(vld1q_f64(a + k), vld1q_f64(b + k));
    const std::size_t lane = first_set(vcltq_f64(sum, vsubq_f64(vld1q_f64(c + k), vt)));
    if (lane != npos) return k + lane;
  }
  const std::size_t tail = find_triangle_violation_scalar(a + k, b + k, c + k, tol, n - k);
  return tail == npos ? npos : k + tail;
}

std::size_t find_outside_neon(const double* x, double lo, double hi, std::size_t n) {
  const float64x2_t vlo = vdupq_n_f64(lo);
  const float64x2_t vhi = vdupq_n_f64(hi);
  std::size_t k = 0;
  for (; k + kLanes <= n; k += kLanes) {
    const float64x2_t v = vld1q_f64(x + k);
    const uint64x2_t inside = vandq_u64(vcgeq_f64(v, vlo), vcleq_f64(v, vhi));
    const std::size_t lane = first_set(veorq_u64(inside, vdupq_n_u64(~0ull)));
    if (lane != npos) return k + lane;
  }
  const std::size_t tail = find_outside_scalar(x + k, lo, hi, n - k);
  return tail == npos ? npos : k + tail;
}

}  // namespace

const KernelSet kNeon{
    "neon", axpy_neon, max_into_neon, find_greater_neon, find_triangle_violation_neon, find_outside_neon,
};

}  // namespace dnt::simd::detail
