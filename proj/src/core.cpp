#include "dnt/core.hpp"

#include <algorithm>
#include <unordered_set>

namespace dnt {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::DuplicateLabel: return "DuplicateLabel";
    case Errc::EmptyFrame: return "EmptyFrame";
    case Errc::FrameTooLarge: return "FrameTooLarge";
    case Errc::UnknownLabel: return "UnknownLabel";
    case Errc::InvalidMask: return "InvalidMask";
    case Errc::FrameMismatch: return "FrameMismatch";
    case Errc::InvalidRelation: return "InvalidRelation";
    case Errc::NonDisjointPair: return "NonDisjointPair";
    case Errc::DuplicatePair: return "DuplicatePair";
    case Errc::AxiomViolation: return "AxiomViolation";
    case Errc::EmptySetMass: return "EmptySetMass";
    case Errc::MassOutOfRange: return "MassOutOfRange";
    case Errc::TotalExceedsOne: return "TotalExceedsOne";
    case Errc::DuplicateFocalSet: return "DuplicateFocalSet";
    case Errc::IncompleteDNumber: return "IncompleteDNumber";
    case Errc::NotABpa: return "NotABpa";
    case Errc::TotalConflict: return "TotalConflict";
    case Errc::FewerThanTwoInputs: return "FewerThanTwoInputs";
    case Errc::ComplexityBudget: return "ComplexityBudget";
    case Errc::ParameterOutOfRange: return "ParameterOutOfRange";
    case Errc::DegenerateDenominator: return "DegenerateDenominator";
    case Errc::SingularMatrix: return "SingularMatrix";
    case Errc::SpecInfeasible: return "SpecInfeasible";
    case Errc::PreconditionFailed: return "PreconditionFailed";
    case Errc::InternalInvariant: return "InternalInvariant";
  }
  return "Unknown";
}

Frame Frame::make(std::vector<std::string> labels, FrameOptions options) {
  if (options.cap == 0 || options.cap > kMaxFrameCap) {
    throw Error(Errc::ParameterOutOfRange,
                "frame cap must be in [1, " + std::to_string(kMaxFrameCap) + "]");
  }
  if (labels.empty()) throw Error(Errc::EmptyFrame, "a frame needs at least one label");
  if (labels.size() > options.cap) {
    throw Error(Errc::FrameTooLarge, std::to_string(labels.size()) + " labels exceed the cap of " +
                                         std::to_string(options.cap));
  }
  std::unordered_set<std::string> seen;
  for (const auto& l : labels) {
    if (l.empty()) throw Error(Errc::EmptyFrame, "labels must be non-empty");
    if (!seen.insert(l).second) throw Error(Errc::DuplicateLabel, "label '" + l + "' appears twice");
  }
  auto d = std::make_shared<Data>();
  d->labels = std::move(labels);
  d->cap = options.cap;
  return Frame(std::move(d));
}

Frame make_frame(std::vector<std::string> labels, FrameOptions options) {
  return Frame::make(std::move(labels), options);
}

void Frame::require_valid(SubsetMask m) const {
  if (!is_valid(m)) {
    throw Error(Errc::FrameMismatch,
                "mask " + std::to_string(m.bits) + " is outside a frame of size " + std::to_string(size()));
  }
}

Frame Frame::with_unknown() const {
  if (has_unknown()) throw Error(Errc::PreconditionFailed, "frame already carries the unknown element");
  if (size() + 1 > cap()) {
    throw Error(Errc::FrameTooLarge, "extending a frame of " + std::to_string(size()) +
                                         " elements by X exceeds the cap of " + std::to_string(cap()));
  }
  std::string name = "X";
  while (std::find(labels().begin(), labels().end(), name) != labels().end()) name += '\'';
  auto d = std::make_shared<Data>(*data_);
  d->labels.push_back(std::move(name));
  d->has_unknown = true;
  return Frame(std::move(d));
}

Frame Frame::base() const {
  if (!has_unknown()) return *this;
  auto d = std::make_shared<Data>(*data_);
  d->labels.pop_back();
  d->has_unknown = false;
  return Frame(std::move(d));
}

SubsetMask Frame::unknown_mask() const noexcept {
  return has_unknown() ? SubsetMask(1u << (size() - 1)) : SubsetMask();
}

SubsetMask Frame::base_mask() const noexcept {
  return SubsetMask(full().bits & ~unknown_mask().bits);
}

std::size_t Frame::index_of(const std::string& label) const {
  const auto& ls = labels();
  auto it = std::find(ls.begin(), ls.end(), label);
  if (it == ls.end()) throw Error(Errc::UnknownLabel, "'" + label + "' is not a frame label");
  return static_cast<std::size_t>(it - ls.begin());
}

std::string Frame::format(SubsetMask m) const {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < size(); ++i) {
    if (!m.contains(i)) continue;
    if (!first) out += ',';
    out += label(i);
    first = false;
  }
  out += '}';
  return out;
}

bool operator==(const Frame& a, const Frame& b) noexcept {
  if (a.data_ == b.data_) return true;
  return a.data_->has_unknown == b.data_->has_unknown && a.data_->labels == b.data_->labels;
}

SubsetMask subset_of(const Frame& frame, std::span<const std::string> members) {
  std::uint32_t bits = 0;
  for (const auto& m : members) bits |= 1u << frame.index_of(m);
  return SubsetMask(bits);
}

SubsetMask subset_of(const Frame& frame, std::initializer_list<std::string> members) {
  return subset_of(frame, std::span<const std::string>(members.begin(), members.size()));
}

SubsetMask complement(const Frame& frame, SubsetMask s) {
  return SubsetMask(frame.full().bits & ~s.bits);
}

std::vector<SubsetMask> enumerate_nonempty_subsets(const Frame& frame) {
  std::vector<SubsetMask> out;
  out.reserve(frame.subset_count());
  for (std::uint32_t b = 1; b <= frame.full().bits; ++b) out.emplace_back(b);
  return out;
}

void require_same_frame(const Frame& a, const Frame& b, const char* what) {
  if (!(a == b)) throw Error(Errc::FrameMismatch, std::string(what) + ": operands live on different frames");
}

}  // namespace dnt
