#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dnt/core.hpp"

namespace dnt {

/// Symmetric, reflexive N×N relation with entries in [0,1] between frame elements.
class FuzzyRelation {
 public:
  /// Row-major values; throws InvalidRelation on asymmetry, diagonal != 1 or range.
  static FuzzyRelation make(std::size_t n, std::vector<double> values);
  /// Identity relation: elements are mutually exclusive.
  static FuzzyRelation crisp(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return values_[i * n_ + j]; }
  std::span<const double> values() const noexcept { return values_; }

 private:
  FuzzyRelation(std::size_t n, std::vector<double> v) : n_(n), values_(std::move(v)) {}
  std::size_t n_ = 0;
  std::vector<double> values_;
};

enum class Provenance { Explicit, FromRelation, Unchecked };

struct DisjointPair {
  SubsetMask a;
  SubsetMask b;
  double degree = 0.0;
};

class NonExclusivityMatrix;
NonExclusivityMatrix extend_u(const NonExclusivityMatrix& u);

/// The matrix U of non-exclusive degrees u(B_i, B_j) between nonempty subsets,
/// dense (2^N-1)×(2^N-1), rows and columns in canonical subset order.
class NonExclusivityMatrix {
 public:
  /// u = 1 on intersecting pairs and 0 on disjoint ones (the DST case).
  static NonExclusivityMatrix classical(const Frame& frame);
  /// Wraps raw entries without validation. For diagnostics and tests of validate_axioms.
  static NonExclusivityMatrix unchecked(const Frame& frame, std::vector<double> entries);

  const Frame& frame() const noexcept { return frame_; }
  std::size_t dimension() const noexcept { return dim_; }
  Provenance provenance() const noexcept { return provenance_; }
  const std::optional<FuzzyRelation>& relation() const noexcept { return relation_; }

  /// Stored entry for two nonempty masks; no P5/P1 shortcuts.
  double entry(SubsetMask a, SubsetMask b) const noexcept {
    return entries_[canonical_index(a) * dim_ + canonical_index(b)];
  }
  /// Row of a nonempty mask; element k is the entry against from_canonical_index(k).
  std::span<const double> row(SubsetMask a) const noexcept {
    return {entries_.data() + canonical_index(a) * dim_, dim_};
  }
  std::span<const double> entries() const noexcept { return entries_; }

 private:
  friend NonExclusivityMatrix u_from_relation(const Frame&, const FuzzyRelation&);
  friend NonExclusivityMatrix u_explicit(const Frame&, std::span<const DisjointPair>);
  friend NonExclusivityMatrix extend_u(const NonExclusivityMatrix&);

  NonExclusivityMatrix(Frame frame, std::vector<double> entries, Provenance p);

  Frame frame_;
  std::size_t dim_ = 0;
  std::vector<double> entries_;
  Provenance provenance_ = Provenance::Unchecked;
  std::optional<FuzzyRelation> relation_;
};

/// One axiom's outcome. A failure carries the first witness found.
struct AxiomResult {
  std::string_view axiom;  // "P1".."P5"
  bool passed = true;
  bool exhaustive = true;  // false when P4 was checked on sampled triples
  // Witness masks: P1/P2 use (a, b); P3 is u(a,b) > u(a,c) with b ⊂ c;
  // P4 is u(a,b) + u(a,c) < u(a, b∪c).
  SubsetMask a, b, c;
  double lhs = 0.0, rhs = 0.0;
  std::string message;
};

struct AxiomReport {
  std::array<AxiomResult, 5> results;

  bool all_passed() const noexcept;
  const AxiomResult& operator[](std::size_t i) const { return results.at(i); }
  /// Multi-line, human-readable; names witness sets with frame labels.
  std::string describe(const Frame& frame) const;
};

class AxiomViolationError : public Error {
 public:
  AxiomViolationError(AxiomReport report, const Frame& frame)
      : Error(Errc::AxiomViolation, report.describe(frame)), report_(std::move(report)) {}
  const AxiomReport& report() const noexcept { return report_; }

 private:
  AxiomReport report_;
};

inline constexpr double kAxiomTolerance = 1e-12;
/// Above this frame size P4 is checked on sampled triples.
inline constexpr std::size_t kExhaustiveTriangleMaxFrame = 8;
inline constexpr std::size_t kSampledTriangleTriples = 10'000;

/// u(B_i, B_j) = max over θ_i ∈ B_i, θ_j ∈ B_j of R(θ_i, θ_j).
NonExclusivityMatrix u_from_relation(const Frame& frame, const FuzzyRelation& r);

/// Listed disjoint pairs take their degree, other disjoint pairs 0, intersecting pairs 1.
/// Throws NonDisjointPair, DuplicatePair, ParameterOutOfRange or AxiomViolationError.
NonExclusivityMatrix u_explicit(const Frame& frame, std::span<const DisjointPair> disjoint_pairs);

/// u with the P5 and P1 rules applied: 0 if either set is empty, 1 if they meet.
double lookup_u(const NonExclusivityMatrix& u, SubsetMask a, SubsetMask b);

AxiomReport validate_axioms(const NonExclusivityMatrix& u, std::uint64_t sample_seed = 0x5eedULL);

struct DeterminantRank {
  double determinant = 0.0;
  std::size_t rank = 0;
  std::size_t dimension = 0;
  bool exact = false;  // true when computed by integer elimination on decimal entries

  bool full_rank() const noexcept { return rank == dimension; }
};

inline constexpr double kPivotTolerance = 1e-9;
/// Exact elimination is used up to this dimension (N ≤ 5).
inline constexpr std::size_t kExactEliminationMaxDim = 31;

DeterminantRank determinant_and_rank(const NonExclusivityMatrix& u);

}  // namespace dnt
