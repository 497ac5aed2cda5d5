#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "dnt/dnumber.hpp"
#include "dnt/exclusivity.hpp"
#include "dnt/fusion.hpp"

namespace dnt {

/// δ ∈ [0,1]: how exhaustive the frame is. 1 means closed world.
class CompletenessDegree {
 public:
  /// Throws ParameterOutOfRange outside [0,1].
  static CompletenessDegree make(double delta);
  double value() const noexcept { return delta_; }

 private:
  explicit CompletenessDegree(double d) : delta_(d) {}
  double delta_ = 1.0;
};

/// Moves the missing mass 1 - Q onto the extended frame Θ ∪ {X}:
/// δ(1-Q) is added to Θ and (1-δ)(1-Q) goes to {X}. Masses on proper subsets
/// of Θ are unchanged. Complete inputs pass through with D_t(X) = 0.
DNumber transform_complete(const DNumber& d, CompletenessDegree delta);

/// U on the extended frame: base degrees are kept, sets containing X meet each
/// other (degree 1), and X is fully exclusive with Θ. For a disjoint pair the
/// degree is that of their parts inside Θ (0 when either part is empty).
NonExclusivityMatrix extend_u(const NonExclusivityMatrix& u);

/// Transforms both inputs with the shared δ and combines them with the ECR rule
/// on the extended frame. The report carries K_D^1, K_D^2 and D(X).
FusionReport combine_incomplete(const DNumber& d1, const DNumber& d2, CompletenessDegree delta,
                                const NonExclusivityMatrix& u);
/// n-ary version through ecr_combine_n; reports D(X) but no decomposition.
FusionReport combine_incomplete_n(std::span<const DNumber> ds, CompletenessDegree delta,
                                  const NonExclusivityMatrix& u);

/// K_D^1 by summation over the base frame and K_D^2 by its closed form. Both
/// printed forms of K_D^2 and the identity K_D^1 + K_D^2 = K_D (extended-frame
/// ECR) are checked to 1e-12; a mismatch throws InternalInvariant.
ConflictDecomposition conflict_decomposition(const DNumber& d1, const DNumber& d2, CompletenessDegree delta,
                                             const NonExclusivityMatrix& u);

/// Q2(1-Q1)(1-δ) + Q1(1-Q2)(1-δ) + 2(1-Q1)(1-Q2)δ(1-δ)
double k2_closed_form(double q1, double q2, double delta) noexcept;
/// D1(X) + D2(X) - 2 D1(X) D2(X)
double k2_from_unknown_masses(double d1x, double d2x) noexcept;

/// D(X) = (1-Q1)(1-Q2)(1-δ)² / (1 - K_D^1 - K_D^2).
/// ParameterOutOfRange for q, δ outside [0,1] or k1 outside [0, q1·q2];
/// TotalConflict when the denominator is ≤ 1e-12.
double dx_closed_form(double q1, double q2, double delta, double k1);

inline constexpr double kTieTolerance = 1e-12;

struct RegionCase {
  std::string_view tag;         // e.g. "P4.2"
  std::string_view prediction;  // e.g. "D(X)=D1(X)"
  bool numeric_agrees = true;   // the computed D(X) satisfies the prediction
};

struct RegionReport {
  double dx = 0.0;
  std::vector<RegionCase> property4;  // every case whose condition holds
  std::vector<RegionCase> property5;  // filled when δ is supplied and 0 < 1-K_D < 1, D1(X), D2(X) ≠ 0
};

/// Classifies D(X) = D1(X)D2(X)/(1-K_D) against the eight region cases (tags P4.*) and,
/// with δ, the comparisons (tags P5.*) against 1-Q1 and 1-Q2. Ties within
/// kTieTolerance count as equality. DegenerateDenominator when 1-K_D = 0.
RegionReport dx_region_classify(double d1x, double d2x, double one_minus_kd,
                                std::optional<double> delta = std::nullopt);

}  // namespace dnt
