#include "dnt/measures.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "dnt/rng.hpp"
#include "dnt/simd.hpp"
#include "linalg.hpp"

namespace dnt {
namespace {

void require_inputs(const DNumber& d, const NonExclusivityMatrix& u, SubsetMask a, const char* what) {
  require_same_frame(d.frame(), u.frame(), what);
  require_complete(d, what);
  u.frame().require_valid(a);
}

// lookup_u without the mask validation; callers have validated already
double degree(const NonExclusivityMatrix& u, SubsetMask a, SubsetMask b) noexcept {
  if (a.empty() || b.empty()) return 0.0;
  if (a.intersects(b)) return 1.0;
  return u.entry(a, b);
}

double belief_unchecked(const DNumber& d, const NonExclusivityMatrix& u, SubsetMask a) {
  const SubsetMask not_a = complement(u.frame(), a);
  double bel = 0.0;
  for (const auto& f : d.focal()) {
    if (f.set.is_subset_of(a)) bel += f.mass * (1.0 - degree(u, f.set, not_a));
  }
  return bel;
}

}  // namespace

double belief(const DNumber& d, const NonExclusivityMatrix& u, SubsetMask a) {
  require_inputs(d, u, a, "belief");
  return belief_unchecked(d, u, a);
}

double plausibility(const DNumber& d, const NonExclusivityMatrix& u, SubsetMask a) {
  require_inputs(d, u, a, "plausibility");
  double pl = 0.0;
  for (const auto& f : d.focal()) pl += degree(u, f.set, a) * f.mass;
  return pl;
}

BeliefInterval belief_interval(const DNumber& d, const NonExclusivityMatrix& u, SubsetMask a) {
  BeliefInterval iv{belief(d, u, a), plausibility(d, u, a)};
  if (iv.lower > iv.upper + kMassTolerance) {
    throw Error(Errc::InternalInvariant, "Bel exceeds Pl on " + u.frame().format(a));
  }
  return iv;
}

std::vector<double> pl_vector(const DNumber& d, const NonExclusivityMatrix& u) {
  require_same_frame(d.frame(), u.frame(), "pl_vector");
  require_complete(d, "pl_vector");
  const auto& k = simd::active();
  std::vector<double> pl(u.dimension(), 0.0);
  for (const auto& f : d.focal()) k.axpy(f.mass, u.row(f.set).data(), pl.data(), pl.size());
  return pl;
}

double imprecision(const DNumber& d, const NonExclusivityMatrix& u, SubsetMask a) {
  require_inputs(d, u, a, "imprecision");
  const SubsetMask not_a = complement(u.frame(), a);
  double inside = 0.0, outside = 0.0, straddling = 0.0;
  for (const auto& f : d.focal()) {
    if (f.set.is_subset_of(a)) {
      inside += f.mass * degree(u, f.set, not_a);
    } else if (f.set.is_subset_of(not_a)) {
      outside += f.mass * degree(u, f.set, a);
    } else {
      straddling += f.mass;
    }
  }
  return inside + outside + straddling;
}

BeliefFunctionReport check_belief_function(const DNumber& d, const NonExclusivityMatrix& u, std::size_t n,
                                           std::size_t trials, std::uint64_t seed) {
  if (n < 2) throw Error(Errc::PreconditionFailed, "superadditivity needs a family of at least 2 sets");
  if (n > 16) throw Error(Errc::PreconditionFailed, "families above 16 sets are not enumerable");
  const Frame& frame = u.frame();
  if (frame.size() > kBeliefFunctionMaxFrame) {
    throw Error(Errc::PreconditionFailed, "belief-function check is limited to frames of " +
                                              std::to_string(kBeliefFunctionMaxFrame) + " elements");
  }
  require_inputs(d, u, SubsetMask(), "check_belief_function");

  const std::uint32_t full = frame.full().bits;
  std::vector<double> bel(full + 1);
  for (std::uint32_t a = 0; a <= full; ++a) bel[a] = belief_unchecked(d, u, SubsetMask(a));

  BeliefFunctionReport report;
  report.order = n;
  report.trials = trials;
  report.worst_margin = std::numeric_limits<double>::infinity();
  Rng rng(seed);
  std::vector<std::uint32_t> family(n);
  for (std::size_t t = 0; t < trials; ++t) {
    std::uint32_t uni = 0;
    for (auto& s : family) {
      s = static_cast<std::uint32_t>(rng.below(std::uint64_t{full} + 1));
      uni |= s;
    }
    double rhs = 0.0;
    for (std::uint32_t pick = 1; pick < (1u << n); ++pick) {
      std::uint32_t inter = full;
      for (std::size_t i = 0; i < n; ++i) {
        if ((pick >> i) & 1u) inter &= family[i];
      }
      rhs += (std::popcount(pick) % 2 == 1 ? 1.0 : -1.0) * bel[inter];
    }
    const double lhs = bel[uni];
    report.worst_margin = std::min(report.worst_margin, lhs - rhs);
    if (lhs < rhs - kSuperadditivitySlack) {
      if (report.violations == 0) {
        for (auto s : family) report.counterexample.emplace_back(s);
        report.lhs = lhs;
        report.rhs = rhs;
      }
      ++report.violations;
    }
  }
  return report;
}

MassRecovery recover_masses(std::span<const double> pl, const NonExclusivityMatrix& u) {
  const std::size_t dim = u.dimension();
  if (pl.size() != dim) {
    throw Error(Errc::PreconditionFailed, "plausibility vector has the wrong length");
  }
  // Pl = D·U as a column system: Uᵀ Dᵀ = Plᵀ
  std::vector<double> ut(dim * dim);
  const auto e = u.entries();
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) ut[j * dim + i] = e[i * dim + j];
  }
  MassRecovery out;
  out.masses = linalg::solve(ut, {pl.begin(), pl.end()}, dim, kPivotTolerance);

  const auto& k = simd::active();
  std::vector<double> back(dim, 0.0);
  for (std::size_t i = 0; i < dim; ++i) k.axpy(out.masses[i], &e[i * dim], back.data(), dim);
  for (std::size_t j = 0; j < dim; ++j) out.residual = std::max(out.residual, std::abs(back[j] - pl[j]));
  if (out.residual > kRecoveryTolerance) {
    throw Error(Errc::SingularMatrix, "residual " + std::to_string(out.residual) + " exceeds tolerance");
  }
  return out;
}

}  // namespace dnt
