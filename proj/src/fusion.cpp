#include "dnt/fusion.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace dnt {

std::string_view rule_name(Rule r) noexcept {
  switch (r) {
    case Rule::Dempster: return "dempster";
    case Rule::Ecr2: return "ecr2";
    case Rule::EcrN: return "ecrN";
  }
  return "?";
}

namespace {

struct Accumulation {
  std::vector<double> table;  // indexed by mask; slot 0 unused
  double conflict = 0.0;
};

double degree(const NonExclusivityMatrix& u, SubsetMask a, SubsetMask b) noexcept {
  if (a.intersects(b)) return 1.0;
  return u.entry(a, b);
}

DNumber normalize(const Frame& frame, const Accumulation& acc) {
  if (std::abs(1.0 - acc.conflict) <= kTotalConflictTolerance) {
    throw Error(Errc::TotalConflict, "conflict coefficient is 1; the combination is undefined");
  }
  const double scale = 1.0 / (1.0 - acc.conflict);
  std::vector<FocalElement> out;
  for (std::size_t m = 1; m < acc.table.size(); ++m) {
    // min() only absorbs rounding, e.g. a lone focal set landing on 1 + 1 ulp
    if (acc.table[m] != 0.0) {
      out.push_back({SubsetMask(static_cast<std::uint32_t>(m)), std::min(1.0, acc.table[m] * scale)});
    }
  }
  return DNumber::make(frame, out);
}

void require_common(std::span<const DNumber> ds, const NonExclusivityMatrix& u, const char* what) {
  if (ds.size() < 2) throw Error(Errc::FewerThanTwoInputs, std::string(what) + " needs at least two inputs");
  for (const auto& d : ds) {
    require_same_frame(d.frame(), u.frame(), what);
    require_complete(d, what);
  }
  double tuples = 1.0;
  for (const auto& d : ds) tuples *= static_cast<double>(d.focal_count());
  if (tuples > kMaxTuples) {
    throw Error(Errc::ComplexityBudget, std::to_string(static_cast<long long>(tuples)) +
                                            " focal tuples exceed the budget of 10^7");
  }
}

std::vector<double> qs(std::span<const DNumber> ds) {
  std::vector<double> out;
  for (const auto& d : ds) out.push_back(q_value(d));
  return out;
}

Accumulation accumulate_n(std::span<const DNumber> ds, const NonExclusivityMatrix& u) {
  const std::size_t n = ds.size();
  Accumulation acc;
  acc.table.assign(std::size_t{u.frame().full().bits} + 1, 0.0);
  for (const auto& d : ds) {
    if (d.focal_count() == 0) return acc;  // no tuples at all
  }

  std::vector<std::size_t> idx(n, 0);
  std::vector<SubsetMask> sets(n);
  while (true) {
    double product = 1.0;
    std::uint32_t inter = u.frame().full().bits;
    std::uint32_t uni = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& f = ds[i].focal()[idx[i]];
      sets[i] = f.set;
      product *= f.mass;
      inter &= f.set.bits;
      uni |= f.set.bits;
    }
    if (inter != 0) {
      acc.table[inter] += product;
    } else {
      double weight = 1.0;
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = k + 1; l < n; ++l) weight = std::min(weight, degree(u, sets[k], sets[l]));
      }
      acc.table[uni] += weight * product;
      acc.conflict += (1.0 - weight) * product;
    }

    // odometer, last input fastest
    std::size_t pos = n;
    while (pos > 0) {
      --pos;
      if (++idx[pos] < ds[pos].focal_count()) break;
      idx[pos] = 0;
      if (pos == 0) return acc;
    }
  }
}

}  // namespace

FusionReport dempster_combine(const Bpa& m1, const Bpa& m2) {
  require_same_frame(m1.frame(), m2.frame(), "dempster_combine");
  Accumulation acc;
  acc.table.assign(std::size_t{m1.frame().full().bits} + 1, 0.0);
  for (const auto& b : m1.focal()) {
    for (const auto& c : m2.focal()) {
      const double p = b.mass * c.mass;
      const SubsetMask a = b.set & c.set;
      if (a.empty()) {
        acc.conflict += p;
      } else {
        acc.table[a.bits] += p;
      }
    }
  }
  return FusionReport{normalize(m1.frame(), acc), acc.conflict, Rule::Dempster, {1.0, 1.0}, std::nullopt};
}

FusionReport dempster_combine_all(std::span<const Bpa> ms) {
  if (ms.size() < 2) throw Error(Errc::FewerThanTwoInputs, "Dempster's rule needs at least two inputs");
  FusionReport r = dempster_combine(ms[0], ms[1]);
  for (std::size_t i = 2; i < ms.size(); ++i) {
    const double previous = r.conflict;
    r = dempster_combine(to_bpa(r.result), ms[i]);
    // total conflict of the fold: 1 - Π(1 - K_step)
    r.conflict = 1.0 - (1.0 - previous) * (1.0 - r.conflict);
  }
  r.input_q.assign(ms.size(), 1.0);
  return r;
}

FusionReport ecr_combine(const DNumber& d1, const DNumber& d2, const NonExclusivityMatrix& u) {
  const std::array<DNumber, 2> pair{d1, d2};
  require_common(pair, u, "ecr_combine");
  Accumulation acc;
  acc.table.assign(std::size_t{u.frame().full().bits} + 1, 0.0);
  for (const auto& b : d1.focal()) {
    for (const auto& c : d2.focal()) {
      const double p = b.mass * c.mass;
      const SubsetMask inter = b.set & c.set;
      if (!inter.empty()) {
        acc.table[inter.bits] += p;
      } else {
        const double w = u.entry(b.set, c.set);
        acc.table[(b.set | c.set).bits] += w * p;
        acc.conflict += (1.0 - w) * p;
      }
    }
  }
  return FusionReport{normalize(u.frame(), acc), acc.conflict, Rule::Ecr2, qs(pair), std::nullopt};
}

FusionReport ecr_combine_n(std::span<const DNumber> ds, const NonExclusivityMatrix& u) {
  require_common(ds, u, "ecr_combine_n");
  const Accumulation acc = accumulate_n(ds, u);
  return FusionReport{normalize(u.frame(), acc), acc.conflict, Rule::EcrN, qs(ds), std::nullopt};
}

double conflict_of(std::span<const DNumber> ds, const NonExclusivityMatrix& u) {
  require_common(ds, u, "conflict_of");
  return std::clamp(accumulate_n(ds, u).conflict, 0.0, 1.0);
}

}  // namespace dnt
