#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dnt/dnumber.hpp"
#include "dnt/exclusivity.hpp"

namespace dnt {

struct BeliefInterval {
  double lower = 0.0;  // Bel(A)
  double upper = 0.0;  // Pl(A)

  double width() const noexcept { return upper - lower; }
};

// All measures need a complete D number on the matrix's frame
// (IncompleteDNumber / FrameMismatch otherwise). Incomplete evidence goes
// through the open-world transformation first.

/// Bel(A) = Σ_{B⊆A} D(B) [1 - u(B, Ā)]
double belief(const DNumber& d, const NonExclusivityMatrix& u, SubsetMask a);
/// Pl(A) = Σ_B u(B, A) D(B)
double plausibility(const DNumber& d, const NonExclusivityMatrix& u, SubsetMask a);
BeliefInterval belief_interval(const DNumber& d, const NonExclusivityMatrix& u, SubsetMask a);

/// Plausibility of every nonempty subset in canonical order, computed as the
/// row vector of masses times U.
std::vector<double> pl_vector(const DNumber& d, const NonExclusivityMatrix& u);

/// Pl(A) - Bel(A) by its three-part decomposition: mass inside A weighted by
/// u(B, Ā), mass inside Ā weighted by u(B, A), and mass straddling both.
double imprecision(const DNumber& d, const NonExclusivityMatrix& u, SubsetMask a);

inline constexpr double kSuperadditivitySlack = 1e-9;
inline constexpr std::size_t kBeliefFunctionMaxFrame = 5;

struct BeliefFunctionReport {
  std::size_t order = 0;  // n, the family size
  std::size_t trials = 0;
  std::size_t violations = 0;
  /// min over trials of lhs - rhs; negative beyond the slack means a violation
  double worst_margin = 0.0;
  // first violating family, with both sides of the inequality
  std::vector<SubsetMask> counterexample;
  double lhs = 0.0, rhs = 0.0;

  bool passed() const noexcept { return violations == 0; }
};

/// Samples `trials` families A_1..A_n and tests
/// bel(∪A_i) ≥ Σ_{∅≠I} (-1)^{|I|+1} bel(∩_{i∈I} A_i) with kSuperadditivitySlack.
/// PreconditionFailed for n < 2 or frames above kBeliefFunctionMaxFrame.
BeliefFunctionReport check_belief_function(const DNumber& d, const NonExclusivityMatrix& u, std::size_t n,
                                           std::size_t trials, std::uint64_t seed);

inline constexpr double kRecoveryTolerance = 1e-6;

struct MassRecovery {
  std::vector<double> masses;  // canonical order
  double residual = 0.0;       // max |(masses·U)_k - pl_k|
};

/// Solves Pl = D·U for the mass vector. SingularMatrix when U is rank-deficient
/// or the residual exceeds kRecoveryTolerance.
MassRecovery recover_masses(std::span<const double> pl, const NonExclusivityMatrix& u);

}  // namespace dnt
