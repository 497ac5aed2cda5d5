#include "dnt/simd.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <limits>

#include "dnt/rng.hpp"
#include "support.hpp"

using namespace dnt;

namespace {

std::vector<double> draw(Rng& rng, std::size_t n, bool specials) {
  std::vector<double> v(n);
  for (auto& x : v) {
    x = rng.unit() * 2.0 - 0.5;
    if (specials && rng.below(11) == 0) x = std::numeric_limits<double>::quiet_NaN();
    if (specials && rng.below(13) == 0) x = -0.0;
  }
  return v;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("every kernel set matches the scalar reference bit for bit") {
  const auto& ref = simd::scalar_kernels();
  const auto sets = simd::available_kernels();
  REQUIRE(!sets.empty());
  CHECK(sets.front()->name == "scalar");
  Rng rng(42);
  for (const auto* ks : sets) {
    CAPTURE(ks->name);
    for (std::size_t n = 0; n <= 67; ++n) {
      for (int rep = 0; rep < 4; ++rep) {
        const bool specials = rep % 2 == 1;
        const auto a = draw(rng, n, specials), b = draw(rng, n, specials), c = draw(rng, n, specials);
        const double alpha = rng.unit() - 0.3;

        auto y1 = b, y2 = b;
        ref.axpy(alpha, a.data(), y1.data(), n);
        ks->axpy(alpha, a.data(), y2.data(), n);
        CHECK(same_bits(y1, y2));

        std::vector<double> m1(n), m2(n);
        ref.max_into(a.data(), b.data(), m1.data(), n);
        ks->max_into(a.data(), b.data(), m2.data(), n);
        CHECK(same_bits(m1, m2));

        CHECK(ref.find_greater(a.data(), b.data(), 0.1, n) == ks->find_greater(a.data(), b.data(), 0.1, n));
        CHECK(ref.find_triangle_violation(a.data(), b.data(), c.data(), 1e-12, n) ==
              ks->find_triangle_violation(a.data(), b.data(), c.data(), 1e-12, n));
        CHECK(ref.find_outside(a.data(), 0.0, 1.0, n) == ks->find_outside(a.data(), 0.0, 1.0, n));
      }
    }
  }
}

TEST_CASE("scalar kernels on small hand cases") {
  const auto& k = simd::scalar_kernels();
  std::vector<double> x{1, 2, 3}, y{1, 1, 1};
  k.axpy(2.0, x.data(), y.data(), 3);
  CHECK(y == std::vector<double>{3, 5, 7});

  std::vector<double> out(3);
  const std::vector<double> a{0.2, 0.9, 0.5}, b{0.4, 0.1, 0.5};
  k.max_into(a.data(), b.data(), out.data(), 3);
  CHECK(out == std::vector<double>{0.4, 0.9, 0.5});

  CHECK(k.find_greater(a.data(), b.data(), 0.0, 3) == 1);
  CHECK(k.find_greater(a.data(), a.data(), 0.0, 3) == simd::npos);
  const std::vector<double> c{0.5, 1.0, 1.2};
  CHECK(k.find_triangle_violation(a.data(), b.data(), c.data(), 0.0, 3) == 2);
  const std::vector<double> nan{0.5, std::numeric_limits<double>::quiet_NaN()};
  CHECK(k.find_outside(nan.data(), 0.0, 1.0, 2) == 1);
}

TEST_CASE("override guard restores the active set") {
  const auto before = simd::active().name;
  {
    simd::ScopedKernelOverride guard(simd::scalar_kernels());
    CHECK(simd::active().name == "scalar");
  }
  CHECK(simd::active().name == before);
}
