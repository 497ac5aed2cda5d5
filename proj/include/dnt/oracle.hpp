#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dnt/dnumber.hpp"
#include "dnt/exclusivity.hpp"
#include "dnt/rng.hpp"

// Reference implementations. Nothing here shares accumulation code with the
// fusion or measures modules; sums are carried in exact rationals.
namespace dnt::oracle {

inline constexpr double kMaxOracleTuples = 1e6;

struct EcrResult {
  DNumber result;
  double conflict = 0.0;
  /// True when every mass and degree was a decimal with at most six places, so
  /// the sums were exact over k/10^6. Otherwise the exact binary value of each
  /// double was used, which is still exact but inherits input rounding.
  bool decimal_inputs = true;
};

/// Nested-loop evaluation of the simultaneous ECR rule. Throws
/// FewerThanTwoInputs, FrameMismatch, IncompleteDNumber, ComplexityBudget
/// (above 10^6 tuples) and TotalConflict.
EcrResult brute_force_ecr(std::span<const DNumber> ds, const NonExclusivityMatrix& u);

struct MeasureValues {
  double bel = 0.0;
  double pl = 0.0;
};

/// Bel and Pl by direct summation over every nonempty subset; frames up to 4.
MeasureValues brute_force_measures(const DNumber& d, const NonExclusivityMatrix& u, SubsetMask a);

enum class UMode { Classical, RandomRelation, RandomExplicit };

struct InstanceSpec {
  std::uint64_t seed = 1;
  std::size_t frame_size = 3;     // 1..4
  std::size_t focal_count = 0;    // per input; 0 draws it in 1..2^N-1
  std::size_t input_count = 2;
  double q_lo = 1.0, q_hi = 1.0;  // Q of each input lands in [q_lo, q_hi]
  UMode u_mode = UMode::RandomRelation;
};

struct Instance {
  Frame frame;
  std::vector<DNumber> inputs;
  NonExclusivityMatrix u;
};

/// Deterministic in the seed. Masses and degrees are multiples of 10^-6.
/// Throws SpecInfeasible for specs that cannot be met.
Instance generate_instance(const InstanceSpec& spec);

/// Symmetric relation with unit diagonal and off-diagonal entries k/10^6, k < 10^6.
FuzzyRelation random_relation(std::size_t n, Rng& rng);

/// Degrees for every disjoint pair, drawn smallest pairs first so that each lies
/// between its immediate sub-pairs (monotonicity) and the cheapest split of
/// either side (triangle inequality).
NonExclusivityMatrix random_explicit_u(const Frame& frame, Rng& rng);

}  // namespace dnt::oracle
