#include "dnt/dnumber.hpp"

#include <algorithm>
#include <cmath>

namespace dnt {

DNumber DNumber::make(const Frame& frame, std::span<const FocalElement> entries) {
  std::vector<FocalElement> focal;
  focal.reserve(entries.size());
  for (const auto& e : entries) {
    frame.require_valid(e.set);
    if (!(e.mass >= 0.0 && e.mass <= 1.0)) {
      throw Error(Errc::MassOutOfRange, "mass of " + frame.format(e.set) + " is outside [0,1]");
    }
    if (e.set.empty() && e.mass > 0.0) {
      throw Error(Errc::EmptySetMass, "the empty set cannot carry mass");
    }
    focal.push_back(e);
  }
  std::sort(focal.begin(), focal.end(), [](const auto& a, const auto& b) { return a.set < b.set; });
  for (std::size_t i = 1; i < focal.size(); ++i) {
    if (focal[i].set == focal[i - 1].set) {
      throw Error(Errc::DuplicateFocalSet, frame.format(focal[i].set) + " is listed twice");
    }
  }
  std::erase_if(focal, [](const FocalElement& e) { return e.mass == 0.0; });

  // Neumaier summation keeps Q accurate regardless of magnitude order
  double sum = 0.0, carry = 0.0;
  for (const auto& e : focal) {
    const double t = sum + e.mass;
    carry += std::abs(sum) >= std::abs(e.mass) ? (sum - t) + e.mass : (e.mass - t) + sum;
    sum = t;
  }
  const double total = sum + carry;
  if (total > 1.0 + kMassTolerance) {
    throw Error(Errc::TotalExceedsOne, "masses sum to " + std::to_string(total));
  }
  return DNumber(frame, std::move(focal), total);
}

double DNumber::mass(SubsetMask s) const noexcept {
  auto it = std::lower_bound(focal_.begin(), focal_.end(), s,
                             [](const FocalElement& e, SubsetMask m) { return e.set < m; });
  return it != focal_.end() && it->set == s ? it->mass : 0.0;
}

DNumber make_dnumber(const Frame& frame, std::span<const FocalElement> entries) {
  return DNumber::make(frame, entries);
}

DNumber make_dnumber(const Frame& frame, std::initializer_list<FocalElement> entries) {
  return DNumber::make(frame, std::span<const FocalElement>(entries.begin(), entries.size()));
}

double q_value(const DNumber& d) noexcept { return d.total(); }

bool is_information_complete(const DNumber& d) noexcept {
  return std::abs(q_value(d) - 1.0) <= kMassTolerance;
}

void require_complete(const DNumber& d, const char* what) {
  if (!is_information_complete(d)) {
    throw Error(Errc::IncompleteDNumber,
                std::string(what) + " needs an information-complete D number, Q = " + std::to_string(q_value(d)));
  }
}

Bpa Bpa::make(const Frame& frame, std::span<const FocalElement> entries) {
  DNumber d = DNumber::make(frame, entries);
  if (!is_information_complete(d)) {
    throw Error(Errc::NotABpa, "a mass function must sum to 1, got " + std::to_string(q_value(d)));
  }
  return Bpa(std::move(d));
}

Bpa Bpa::make(const Frame& frame, std::initializer_list<FocalElement> entries) {
  return make(frame, std::span<const FocalElement>(entries.begin(), entries.size()));
}

DNumber from_bpa(const Bpa& m) { return m.as_dnumber(); }

Bpa to_bpa(const DNumber& d) {
  require_complete(d, "to_bpa");
  return Bpa(d);
}

}  // namespace dnt
