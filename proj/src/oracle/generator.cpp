#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "dnt/oracle.hpp"

namespace dnt::oracle {
namespace {

constexpr std::int64_t kUnits = 1'000'000;

double from_units(std::int64_t k) { return static_cast<double>(k) / 1e6; }

// Splits `total` units into `parts` nonnegative pieces, each at least one unit
// when the total allows it.
std::vector<std::int64_t> split_units(std::int64_t total, std::size_t parts, Rng& rng) {
  std::vector<std::int64_t> out(parts, 0);
  const std::int64_t floor_each = total >= static_cast<std::int64_t>(parts) ? 1 : 0;
  const std::int64_t rest = total - floor_each * static_cast<std::int64_t>(parts);
  std::vector<std::int64_t> cuts{0, rest};
  for (std::size_t i = 1; i < parts; ++i) cuts.push_back(rng.between(0, rest));
  std::sort(cuts.begin(), cuts.end());
  for (std::size_t i = 0; i < parts; ++i) out[i] = floor_each + cuts[i + 1] - cuts[i];
  return out;
}

DNumber random_dnumber(const Frame& frame, std::size_t focal_count, std::int64_t q_lo, std::int64_t q_hi,
                       Rng& rng) {
  const std::size_t subsets = frame.subset_count();
  if (focal_count == 0) focal_count = 1 + rng.below(subsets);

  std::vector<std::uint32_t> masks(subsets);
  std::iota(masks.begin(), masks.end(), 1u);
  for (std::size_t i = 0; i < focal_count; ++i) {
    std::swap(masks[i], masks[i + rng.below(subsets - i)]);
  }

  const std::int64_t q = rng.between(q_lo, q_hi);
  const auto units = split_units(q, focal_count, rng);
  std::vector<FocalElement> focal;
  for (std::size_t i = 0; i < focal_count; ++i) focal.push_back({SubsetMask(masks[i]), from_units(units[i])});
  return DNumber::make(frame, focal);
}

}  // namespace

FuzzyRelation random_relation(std::size_t n, Rng& rng) {
  std::vector<double> r(n * n, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) r[i * n + j] = r[j * n + i] = from_units(rng.between(0, kUnits - 1));
  }
  return FuzzyRelation::make(n, std::move(r));
}

NonExclusivityMatrix random_explicit_u(const Frame& frame, Rng& rng) {
  const std::uint32_t full = frame.full().bits;
  std::vector<std::int64_t> deg(std::size_t{full + 1} * (full + 1), -1);
  auto at = [&](std::uint32_t a, std::uint32_t b) -> std::int64_t& { return deg[std::size_t{a} * (full + 1) + b]; };

  // unordered disjoint pairs, smallest |A|+|B| first
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (std::uint32_t a = 1; a <= full; ++a) {
    for (std::uint32_t b = a + 1; b <= full; ++b) {
      if ((a & b) == 0) pairs.emplace_back(a, b);
    }
  }
  std::stable_sort(pairs.begin(), pairs.end(), [](auto x, auto y) {
    return std::popcount(x.first | x.second) < std::popcount(y.first | y.second);
  });

  std::vector<DisjointPair> listed;
  for (auto [a, b] : pairs) {
    std::int64_t lo = 0, hi = kUnits - 1;
    // monotonicity: at least every pair with one element removed
    for (std::uint32_t side = 0; side < 2; ++side) {
      const std::uint32_t grow = side == 0 ? a : b;
      const std::uint32_t other = side == 0 ? b : a;
      if (std::popcount(grow) < 2) continue;
      for (std::uint32_t e = grow; e != 0; e &= e - 1) {
        lo = std::max(lo, at(grow & ~(e & -e), other));
      }
      // triangle inequality: at most the cheapest split of this side
      for (std::uint32_t part = (grow - 1) & grow; part != 0; part = (part - 1) & grow) {
        hi = std::min(hi, at(part, other) + at(grow & ~part, other));
      }
    }
    hi = std::max(hi, lo);
    const std::int64_t v = rng.between(lo, hi);
    at(a, b) = at(b, a) = v;
    listed.push_back({SubsetMask(a), SubsetMask(b), from_units(v)});
  }
  return u_explicit(frame, listed);
}

Instance generate_instance(const InstanceSpec& spec) {
  if (spec.frame_size < 1 || spec.frame_size > 4) throw Error(Errc::SpecInfeasible, "frame_size must be 1..4");
  if (spec.input_count < 1) throw Error(Errc::SpecInfeasible, "input_count must be at least 1");
  const std::size_t subsets = (std::size_t{1} << spec.frame_size) - 1;
  if (spec.focal_count > subsets) {
    throw Error(Errc::SpecInfeasible, "focal_count exceeds the " + std::to_string(subsets) + " nonempty subsets");
  }
  if (!(spec.q_lo >= 0.0 && spec.q_lo <= spec.q_hi && spec.q_hi <= 1.0)) {
    throw Error(Errc::SpecInfeasible, "q_range must satisfy 0 <= lo <= hi <= 1");
  }
  const auto q_lo = static_cast<std::int64_t>(std::ceil(spec.q_lo * 1e6 - 1e-6));
  const auto q_hi = static_cast<std::int64_t>(std::floor(spec.q_hi * 1e6 + 1e-6));
  if (q_lo > q_hi) throw Error(Errc::SpecInfeasible, "q_range contains no multiple of 1e-6");

  Rng rng(spec.seed);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < spec.frame_size; ++i) labels.push_back(std::string(1, static_cast<char>('a' + i)));
  Frame frame = make_frame(labels);

  std::vector<DNumber> inputs;
  for (std::size_t i = 0; i < spec.input_count; ++i) {
    inputs.push_back(random_dnumber(frame, spec.focal_count, q_lo, q_hi, rng));
  }
  switch (spec.u_mode) {
    case UMode::Classical:
      return Instance{frame, std::move(inputs), NonExclusivityMatrix::classical(frame)};
    case UMode::RandomRelation:
      return Instance{frame, std::move(inputs), u_from_relation(frame, random_relation(frame.size(), rng))};
    case UMode::RandomExplicit:
      return Instance{frame, std::move(inputs), random_explicit_u(frame, rng)};
  }
  throw Error(Errc::InternalInvariant, "unknown u_mode");
}

}  // namespace dnt::oracle
