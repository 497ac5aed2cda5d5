#include <atomic>
#include <cstdlib>
#include <string_view>

#include "kernels_impl.hpp"

namespace dnt::simd {
namespace {

bool cpu_supports_avx2() noexcept {
#if defined(DNT_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") != 0;
#else
  return false;
#endif
}

const KernelSet* select() noexcept {
  const auto all = available_kernels();
  if (const char* forced = std::getenv("DNT_SIMD")) {
    for (const KernelSet* ks : all) {
      if (ks->name == forced) return ks;
    }
    // unknown or unsupported request: fall through to the default choice
  }
  return all.back();
}

std::atomic<const KernelSet*>& slot() noexcept {
  static std::atomic<const KernelSet*> current{select()};
  return current;
}

}  // namespace

const KernelSet& scalar_kernels() noexcept { return detail::kScalar; }

std::vector<const KernelSet*> available_kernels() {
  std::vector<const KernelSet*> out{&detail::kScalar};
#if defined(DNT_HAVE_AVX2)
  if (cpu_supports_avx2()) out.push_back(&detail::kAvx2);
#endif
#if defined(DNT_HAVE_NEON)
  out.push_back(&detail::kNeon);
#endif
  return out;
}

const KernelSet& active() noexcept { return *slot().load(std::memory_order_relaxed); }

ScopedKernelOverride::ScopedKernelOverride(const KernelSet& ks) noexcept
    : previous_(slot().exchange(&ks)) {}

ScopedKernelOverride::~ScopedKernelOverride() { slot().store(previous_); }

}  // namespace dnt::simd
