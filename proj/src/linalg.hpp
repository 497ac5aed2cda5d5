#pragma once

// Dense row-major elimination shared by the rank diagnostics and mass recovery.

#include <cstddef>
#include <vector>

namespace dnt::linalg {

struct EliminationResult {
  double determinant = 0.0;
  std::size_t rank = 0;
};

/// Partial-pivot Gaussian elimination on an n×n matrix (consumed).
/// Columns whose best pivot is ≤ pivot_tol are skipped and count against the rank.
EliminationResult eliminate(std::vector<double> a, std::size_t n, double pivot_tol);

/// Solves a·x = b with partial pivoting. Throws SingularMatrix when a pivot is ≤ pivot_tol.
std::vector<double> solve(std::vector<double> a, std::vector<double> b, std::size_t n, double pivot_tol);

/// Exact rank and determinant of an integer matrix scaled by 10^-scale_digits
/// per entry, by fraction-free (Bareiss) elimination. Entries are given as int64.
EliminationResult eliminate_exact_decimal(const std::vector<long long>& scaled, std::size_t n,
                                          int scale_digits);

}  // namespace dnt::linalg
