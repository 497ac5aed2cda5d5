#pragma once

#include <span>
#include <vector>

#include "dnt/core.hpp"

namespace dnt {

inline constexpr double kMassTolerance = 1e-12;

struct FocalElement {
  SubsetMask set;
  double mass = 0.0;

  friend bool operator==(const FocalElement&, const FocalElement&) = default;
};

/// A D number: masses on nonempty subsets with total at most one.
///
/// Focal elements are stored sorted by mask (canonical order) with strictly
/// positive mass. When the frame carries the unknown element X the D number
/// lives on the extended frame.
class DNumber {
 public:
  /// Validates and normalizes: zero masses are dropped, order is canonical.
  /// Throws EmptySetMass, MassOutOfRange, TotalExceedsOne, DuplicateFocalSet, FrameMismatch.
  static DNumber make(const Frame& frame, std::span<const FocalElement> entries);

  const Frame& frame() const noexcept { return frame_; }
  bool extended() const noexcept { return frame_.has_unknown(); }
  std::span<const FocalElement> focal() const noexcept { return focal_; }
  std::size_t focal_count() const noexcept { return focal_.size(); }
  /// Mass of a set, 0 when it is not focal.
  double mass(SubsetMask s) const noexcept;
  double total() const noexcept { return total_; }

 private:
  DNumber(Frame f, std::vector<FocalElement> focal, double total)
      : frame_(std::move(f)), focal_(std::move(focal)), total_(total) {}

  Frame frame_;
  std::vector<FocalElement> focal_;
  double total_ = 0.0;
};

DNumber make_dnumber(const Frame& frame, std::span<const FocalElement> entries);
DNumber make_dnumber(const Frame& frame, std::initializer_list<FocalElement> entries);

/// Q(D), the total committed mass.
double q_value(const DNumber& d) noexcept;
bool is_information_complete(const DNumber& d) noexcept;
/// Throws IncompleteDNumber unless Q = 1 within tolerance.
void require_complete(const DNumber& d, const char* what);

/// A classical mass function: a D number whose masses sum to one.
class Bpa {
 public:
  /// Throws NotABpa when the masses do not sum to one, plus DNumber's errors.
  static Bpa make(const Frame& frame, std::span<const FocalElement> entries);
  static Bpa make(const Frame& frame, std::initializer_list<FocalElement> entries);

  const Frame& frame() const noexcept { return d_.frame(); }
  std::span<const FocalElement> focal() const noexcept { return d_.focal(); }
  double mass(SubsetMask s) const noexcept { return d_.mass(s); }
  const DNumber& as_dnumber() const noexcept { return d_; }

 private:
  explicit Bpa(DNumber d) : d_(std::move(d)) {}
  friend Bpa to_bpa(const DNumber& d);
  DNumber d_;
};

DNumber from_bpa(const Bpa& m);
/// Throws IncompleteDNumber when Q < 1.
Bpa to_bpa(const DNumber& d);

}  // namespace dnt
