#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "dnt/dnumber.hpp"
#include "dnt/exclusivity.hpp"

namespace dnt {

enum class Rule { Dempster, Ecr2, EcrN };
std::string_view rule_name(Rule r) noexcept;

/// K_D split into conflict among the original focal sets (k1) and conflict
/// introduced by the mass the open-world transformation assigns (k2).
struct ConflictDecomposition {
  double k1 = 0.0;
  double k2 = 0.0;
  double total = 0.0;  // k1 + k2
};

struct OpenWorldDiagnostics {
  double delta = 1.0;
  /// Present only for pairwise combinations.
  std::optional<ConflictDecomposition> decomposition;
  double dx = 0.0;  // combined mass on {X}
};

struct FusionReport {
  DNumber result;
  double conflict = 0.0;  // K for Dempster, K_D for ECR
  Rule rule = Rule::Ecr2;
  std::vector<double> input_q;  // Q of each input, in input order
  std::optional<OpenWorldDiagnostics> open_world;
};

inline constexpr double kTotalConflictTolerance = 1e-12;
inline constexpr double kMaxTuples = 1e7;

/// Dempster's rule m1 ⊕ m2. TotalConflict when K = 1.
FusionReport dempster_combine(const Bpa& m1, const Bpa& m2);
/// Left fold of Dempster's rule over two or more mass functions.
FusionReport dempster_combine_all(std::span<const Bpa> ms);

/// Pairwise ECR rule D1 ⊙ D2: a disjoint product D1(B)D2(C) sends u(B,C) of
/// itself to B∪C and the rest to conflict.
FusionReport ecr_combine(const DNumber& d1, const DNumber& d2, const NonExclusivityMatrix& u);

/// Simultaneous ECR over n ≥ 2 D numbers. For each tuple of focal sets (one per
/// input, lexicographic order) the product goes to the intersection when it is
/// nonempty; otherwise the minimum pairwise u of the tuple goes to the union.
FusionReport ecr_combine_n(std::span<const DNumber> ds, const NonExclusivityMatrix& u);

/// K_D of the simultaneous rule, without normalizing; 1 is a legal value.
double conflict_of(std::span<const DNumber> ds, const NonExclusivityMatrix& u);

}  // namespace dnt
