#pragma once

// Data-parallel inner loops over dense rows of the non-exclusivity matrix.
//
// Every kernel has a scalar reference in kernels_scalar.cpp. Vector variants
// (AVX2 on x86-64, NEON on aarch64) must produce bit-identical results: no
// fused multiply-add, same comparison semantics for NaN. The active set is
// chosen once at first use from CPU features; DNT_SIMD=scalar|avx2|neon
// overrides the choice.

#include <cstddef>
#include <string_view>
#include <vector>

namespace dnt::simd {

inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

struct KernelSet {
  std::string_view name;

  /// y[k] += alpha * x[k]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  /// out[k] = a[k] > b[k] ? a[k] : b[k]; out may alias a or b.
  void (*max_into)(const double* a, const double* b, double* out, std::size_t n);
  /// First k with lhs[k] > rhs[k] + tol, else npos.
  std::size_t (*find_greater)(const double* lhs, const double* rhs, double tol, std::size_t n);
  /// First k with a[k] + b[k] < c[k] - tol, else npos.
  std::size_t (*find_triangle_violation)(const double* a, const double* b, const double* c, double tol,
                                         std::size_t n);
  /// First k with x[k] outside [lo, hi] or NaN, else npos.
  std::size_t (*find_outside)(const double* x, double lo, double hi, std::size_t n);
};

const KernelSet& scalar_kernels() noexcept;
/// Every variant this binary carries that the running CPU supports, scalar first.
std::vector<const KernelSet*> available_kernels();
/// The runtime-selected set.
const KernelSet& active() noexcept;

/// Swaps the active set for the lifetime of the guard. Not thread-safe; tests only.
class ScopedKernelOverride {
 public:
  explicit ScopedKernelOverride(const KernelSet& ks) noexcept;
  ~ScopedKernelOverride();
  ScopedKernelOverride(const ScopedKernelOverride&) = delete;
  ScopedKernelOverride& operator=(const ScopedKernelOverride&) = delete;

 private:
  const KernelSet* previous_;
};

}  // namespace dnt::simd
