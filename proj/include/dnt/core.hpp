#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "dnt/error.hpp"

namespace dnt {

inline constexpr std::size_t kDefaultFrameCap = 12;
// Hard ceiling for any configured cap: masks are 32-bit and U is dense.
inline constexpr std::size_t kMaxFrameCap = 20;

/// A subset of a frame, bit i set iff the i-th label is a member.
/// Interpreted relative to one Frame; mask 0 is the empty set.
struct SubsetMask {
  std::uint32_t bits = 0;

  constexpr SubsetMask() = default;
  constexpr explicit SubsetMask(std::uint32_t b) : bits(b) {}

  constexpr bool empty() const noexcept { return bits == 0; }
  constexpr int cardinality() const noexcept { return std::popcount(bits); }
  constexpr bool intersects(SubsetMask o) const noexcept { return (bits & o.bits) != 0; }
  constexpr bool is_subset_of(SubsetMask o) const noexcept { return (bits & ~o.bits) == 0; }
  constexpr bool contains(std::size_t element) const noexcept { return ((bits >> element) & 1u) != 0; }

  constexpr SubsetMask operator&(SubsetMask o) const noexcept { return SubsetMask(bits & o.bits); }
  constexpr SubsetMask operator|(SubsetMask o) const noexcept { return SubsetMask(bits | o.bits); }

  friend constexpr bool operator==(SubsetMask, SubsetMask) = default;
  friend constexpr auto operator<=>(SubsetMask, SubsetMask) = default;
};

/// Position of a nonempty mask in the canonical (ascending) subset order.
constexpr std::size_t canonical_index(SubsetMask m) noexcept { return m.bits - 1; }
constexpr SubsetMask from_canonical_index(std::size_t i) noexcept {
  return SubsetMask(static_cast<std::uint32_t>(i + 1));
}

struct FrameOptions {
  std::size_t cap = kDefaultFrameCap;
};

/// Ordered set of distinct element labels. Immutable; copies share storage.
///
/// A frame may carry the synthetic unknown element X as its last element
/// (see `with_unknown`). Such a frame compares unequal to an ordinary frame
/// with the same labels.
class Frame {
 public:
  static Frame make(std::vector<std::string> labels, FrameOptions options = {});

  std::size_t size() const noexcept { return data_->labels.size(); }
  std::size_t cap() const noexcept { return data_->cap; }
  const std::vector<std::string>& labels() const noexcept { return data_->labels; }
  const std::string& label(std::size_t i) const { return data_->labels.at(i); }

  SubsetMask full() const noexcept { return SubsetMask(static_cast<std::uint32_t>((1ull << size()) - 1)); }
  /// Number of nonempty subsets, 2^N - 1.
  std::size_t subset_count() const noexcept { return (std::size_t{1} << size()) - 1; }
  bool is_valid(SubsetMask m) const noexcept { return m.is_subset_of(full()); }
  void require_valid(SubsetMask m) const;

  bool has_unknown() const noexcept { return data_->has_unknown; }
  /// Appends the synthetic element X; FrameTooLarge if that exceeds the cap.
  Frame with_unknown() const;
  /// The frame without X (identity for ordinary frames).
  Frame base() const;
  SubsetMask unknown_mask() const noexcept;
  /// Every element except X.
  SubsetMask base_mask() const noexcept;

  std::size_t index_of(const std::string& label) const;
  std::string format(SubsetMask m) const;

  friend bool operator==(const Frame& a, const Frame& b) noexcept;

 private:
  struct Data {
    std::vector<std::string> labels;
    std::size_t cap = kDefaultFrameCap;
    bool has_unknown = false;
  };
  explicit Frame(std::shared_ptr<const Data> d) : data_(std::move(d)) {}

  std::shared_ptr<const Data> data_;
};

Frame make_frame(std::vector<std::string> labels, FrameOptions options = {});

/// Encodes the listed labels; duplicates collapse. Throws UnknownLabel.
SubsetMask subset_of(const Frame& frame, std::span<const std::string> members);
SubsetMask subset_of(const Frame& frame, std::initializer_list<std::string> members);

SubsetMask complement(const Frame& frame, SubsetMask s);

/// Masks 1..2^N-1 ascending. This is the row/column order of U and of Pl vectors.
std::vector<SubsetMask> enumerate_nonempty_subsets(const Frame& frame);

void require_same_frame(const Frame& a, const Frame& b, const char* what);

}  // namespace dnt
