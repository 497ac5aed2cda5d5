#include <gmpxx.h>

#include <cmath>
#include <map>

#include "dnt/oracle.hpp"

namespace dnt::oracle {
namespace {

class Exact {
 public:
  mpq_class operator()(double v) {
    const double k = std::nearbyint(v * 1e6);
    if (std::abs(k) < 9e15 && k / 1e6 == v) {
      mpq_class q(mpz_class(k), mpz_class(1000000));
      q.canonicalize();
      return q;
    }
    decimal_ = false;
    return mpq_class(v);
  }
  bool decimal() const noexcept { return decimal_; }

 private:
  bool decimal_ = true;
};

// element-wise set algebra, deliberately not using the mask operators
bool contains(std::uint32_t set, std::size_t e) { return (set >> e) & 1u; }

std::uint32_t meet(const std::vector<std::uint32_t>& sets, std::size_t n) {
  std::uint32_t out = 0;
  for (std::size_t e = 0; e < n; ++e) {
    bool all = true;
    for (auto s : sets) all = all && contains(s, e);
    if (all) out |= 1u << e;
  }
  return out;
}

std::uint32_t join(const std::vector<std::uint32_t>& sets, std::size_t n) {
  std::uint32_t out = 0;
  for (std::size_t e = 0; e < n; ++e) {
    for (auto s : sets) {
      if (contains(s, e)) out |= 1u << e;
    }
  }
  return out;
}

bool share_element(std::uint32_t a, std::uint32_t b, std::size_t n) {
  for (std::size_t e = 0; e < n; ++e) {
    if (contains(a, e) && contains(b, e)) return true;
  }
  return false;
}

struct Tables {
  std::size_t n = 0;
  std::vector<std::vector<std::pair<std::uint32_t, mpq_class>>> inputs;
  const NonExclusivityMatrix* u = nullptr;
  Exact* exact = nullptr;
  std::map<std::uint32_t, mpq_class> acc;
  mpq_class conflict = 0;

  mpq_class degree(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    if (share_element(a, b, n)) return 1;
    return (*exact)(u->entry(SubsetMask(a), SubsetMask(b)));
  }

  void visit(std::size_t level, const mpq_class& product, std::vector<std::uint32_t>& sets) {
    if (level == inputs.size()) {
      const std::uint32_t inter = meet(sets, n);
      if (inter != 0) {
        acc[inter] += product;
        return;
      }
      mpq_class weight = 1;
      for (std::size_t k = 0; k < sets.size(); ++k) {
        for (std::size_t l = k + 1; l < sets.size(); ++l) {
          const mpq_class d = degree(sets[k], sets[l]);
          if (d < weight) weight = d;
        }
      }
      acc[join(sets, n)] += weight * product;
      conflict += (1 - weight) * product;
      return;
    }
    for (const auto& [set, mass] : inputs[level]) {
      sets.push_back(set);
      visit(level + 1, product * mass, sets);
      sets.pop_back();
    }
  }
};

}  // namespace

EcrResult brute_force_ecr(std::span<const DNumber> ds, const NonExclusivityMatrix& u) {
  if (ds.size() < 2) throw Error(Errc::FewerThanTwoInputs, "oracle needs at least two inputs");
  double tuples = 1.0;
  for (const auto& d : ds) {
    require_same_frame(d.frame(), u.frame(), "brute_force_ecr");
    require_complete(d, "brute_force_ecr");
    tuples *= static_cast<double>(d.focal_count());
  }
  if (tuples > kMaxOracleTuples) throw Error(Errc::ComplexityBudget, "oracle is capped at 10^6 tuples");

  Exact exact;
  Tables t;
  t.n = u.frame().size();
  t.u = &u;
  t.exact = &exact;
  for (const auto& d : ds) {
    auto& in = t.inputs.emplace_back();
    for (const auto& f : d.focal()) in.emplace_back(f.set.bits, exact(f.mass));
  }
  std::vector<std::uint32_t> sets;
  t.visit(0, mpq_class(1), sets);

  const mpq_class keep = 1 - t.conflict;
  if (keep.get_d() <= 1e-12) throw Error(Errc::TotalConflict, "oracle: conflict coefficient is 1");
  std::vector<FocalElement> out;
  for (const auto& [set, mass] : t.acc) {
    if (mass != 0) out.push_back({SubsetMask(set), mpq_class(mass / keep).get_d()});
  }
  return EcrResult{DNumber::make(u.frame(), out), t.conflict.get_d(), exact.decimal()};
}

MeasureValues brute_force_measures(const DNumber& d, const NonExclusivityMatrix& u, SubsetMask a) {
  const std::size_t n = u.frame().size();
  if (n > 4) throw Error(Errc::PreconditionFailed, "measure oracle is limited to frames of 4 elements");
  require_same_frame(d.frame(), u.frame(), "brute_force_measures");
  u.frame().require_valid(a);

  Exact exact;
  Tables t;
  t.n = n;
  t.u = &u;
  t.exact = &exact;
  const std::uint32_t full = (1u << n) - 1;
  const std::uint32_t not_a = full & ~a.bits;
  mpq_class bel = 0, pl = 0;
  for (std::uint32_t b = 1; b <= full; ++b) {
    const mpq_class m = exact(d.mass(SubsetMask(b)));
    if (m == 0) continue;
    bool inside = true;
    for (std::size_t e = 0; e < n; ++e) {
      if (contains(b, e) && !contains(a.bits, e)) inside = false;
    }
    if (inside) bel += m * (1 - t.degree(b, not_a));
    pl += t.degree(b, a.bits) * m;
  }
  return MeasureValues{bel.get_d(), pl.get_d()};
}

}  // namespace dnt::oracle
