#include "linalg.hpp"

#include <gmpxx.h>

#include <cmath>
#include <utility>

#include "dnt/error.hpp"
#include "dnt/simd.hpp"

namespace dnt::linalg {
namespace {

void swap_rows(std::vector<double>& a, std::size_t n, std::size_t r1, std::size_t r2) {
  for (std::size_t j = 0; j < n; ++j) std::swap(a[r1 * n + j], a[r2 * n + j]);
}

}  // namespace

EliminationResult eliminate(std::vector<double> a, std::size_t n, double pivot_tol) {
  const auto& k = simd::active();
  EliminationResult out;
  double det = 1.0;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < n; ++col) {
    std::size_t best = row;
    for (std::size_t i = row + 1; i < n; ++i) {
      if (std::abs(a[i * n + col]) > std::abs(a[best * n + col])) best = i;
    }
    if (std::abs(a[best * n + col]) <= pivot_tol) {
      det = 0.0;
      continue;
    }
    if (best != row) {
      swap_rows(a, n, best, row);
      det = -det;
    }
    const double pivot = a[row * n + col];
    det *= pivot;
    const double* prow = &a[row * n + col];
    for (std::size_t i = row + 1; i < n; ++i) {
      const double f = a[i * n + col] / pivot;
      if (f != 0.0) k.axpy(-f, prow, &a[i * n + col], n - col);
    }
    ++row;
  }
  out.rank = row;
  out.determinant = row == n ? det : 0.0;
  return out;
}

std::vector<double> solve(std::vector<double> a, std::vector<double> b, std::size_t n, double pivot_tol) {
  const auto& k = simd::active();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t best = col;
    for (std::size_t i = col + 1; i < n; ++i) {
      if (std::abs(a[i * n + col]) > std::abs(a[best * n + col])) best = i;
    }
    if (std::abs(a[best * n + col]) <= pivot_tol) {
      throw Error(Errc::SingularMatrix, "pivot below tolerance in column " + std::to_string(col));
    }
    if (best != col) {
      swap_rows(a, n, best, col);
      std::swap(b[best], b[col]);
    }
    const double pivot = a[col * n + col];
    for (std::size_t i = col + 1; i < n; ++i) {
      const double f = a[i * n + col] / pivot;
      if (f == 0.0) continue;
      k.axpy(-f, &a[col * n + col], &a[i * n + col], n - col);
      b[i] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a[i * n + j] * x[j];
    x[i] = s / a[i * n + i];
  }
  return x;
}

EliminationResult eliminate_exact_decimal(const std::vector<long long>& scaled, std::size_t n,
                                          int scale_digits) {
  std::vector<mpz_class> m(scaled.size());
  for (std::size_t i = 0; i < scaled.size(); ++i) m[i] = static_cast<long>(scaled[i]);

  mpz_class prev = 1;
  int sign = 1;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < n; ++col) {
    std::size_t p = row;
    while (p < n && m[p * n + col] == 0) ++p;
    if (p == n) continue;
    if (p != row) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m[p * n + j], m[row * n + j]);
      sign = -sign;
    }
    const mpz_class pivot = m[row * n + col];
    for (std::size_t i = row + 1; i < n; ++i) {
      const mpz_class lead = m[i * n + col];
      for (std::size_t j = col + 1; j < n; ++j) {
        mpz_class t = pivot * m[i * n + j] - lead * m[row * n + j];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m[i * n + j] = std::move(t);
      }
      m[i * n + col] = 0;
    }
    prev = pivot;
    ++row;
  }

  EliminationResult out;
  out.rank = row;
  if (row == n) {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(scale_digits) * n);
    mpq_class det(sign * m[(n - 1) * n + (n - 1)], scale);
    det.canonicalize();
    out.determinant = det.get_d();
  }
  return out;
}

}  // namespace dnt::linalg
