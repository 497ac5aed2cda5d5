#include "dnt/exclusivity.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <sstream>

#include "dnt/rng.hpp"
#include "dnt/simd.hpp"
#include "linalg.hpp"

namespace dnt {

FuzzyRelation FuzzyRelation::make(std::size_t n, std::vector<double> values) {
  if (values.size() != n * n) {
    throw Error(Errc::InvalidRelation, "expected " + std::to_string(n * n) + " entries, got " +
                                           std::to_string(values.size()));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (values[i * n + i] != 1.0) {
      throw Error(Errc::InvalidRelation, "diagonal entry " + std::to_string(i) + " must be 1");
    }
    for (std::size_t j = 0; j < n; ++j) {
      const double v = values[i * n + j];
      if (!(v >= 0.0 && v <= 1.0)) {
        throw Error(Errc::InvalidRelation,
                    "entry (" + std::to_string(i) + "," + std::to_string(j) + ") is outside [0,1]");
      }
      if (v != values[j * n + i]) {
        throw Error(Errc::InvalidRelation,
                    "entries (" + std::to_string(i) + "," + std::to_string(j) + ") and its mirror differ");
      }
    }
  }
  return FuzzyRelation(n, std::move(values));
}

FuzzyRelation FuzzyRelation::crisp(std::size_t n) {
  std::vector<double> v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;
  return FuzzyRelation(n, std::move(v));
}

NonExclusivityMatrix::NonExclusivityMatrix(Frame frame, std::vector<double> entries, Provenance p)
    : frame_(std::move(frame)), dim_(frame_.subset_count()), entries_(std::move(entries)), provenance_(p) {
  if (entries_.size() != dim_ * dim_) {
    throw Error(Errc::PreconditionFailed, "matrix needs " + std::to_string(dim_ * dim_) + " entries");
  }
}

NonExclusivityMatrix NonExclusivityMatrix::classical(const Frame& frame) {
  const std::size_t dim = frame.subset_count();
  std::vector<double> e(dim * dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      e[i * dim + j] = from_canonical_index(i).intersects(from_canonical_index(j)) ? 1.0 : 0.0;
    }
  }
  return NonExclusivityMatrix(frame, std::move(e), Provenance::Explicit);
}

NonExclusivityMatrix NonExclusivityMatrix::unchecked(const Frame& frame, std::vector<double> entries) {
  return NonExclusivityMatrix(frame, std::move(entries), Provenance::Unchecked);
}

NonExclusivityMatrix u_from_relation(const Frame& frame, const FuzzyRelation& r) {
  const std::size_t n = frame.size();
  if (r.size() != n) {
    throw Error(Errc::InvalidRelation, "relation is " + std::to_string(r.size()) + "x" +
                                           std::to_string(r.size()) + " but the frame has " +
                                           std::to_string(n) + " elements");
  }
  const std::size_t dim = frame.subset_count();
  const auto& k = simd::active();

  // per_element[i][B] = max over j in B of R(i, j)
  std::vector<double> per_element(n * dim);
  for (std::size_t i = 0; i < n; ++i) {
    double* g = &per_element[i * dim];
    for (std::uint32_t b = 1; b <= frame.full().bits; ++b) {
      const std::uint32_t rest = b & (b - 1);
      const double here = r(i, static_cast<std::size_t>(std::countr_zero(b)));
      g[b - 1] = rest == 0 ? here : std::max(g[rest - 1], here);
    }
  }

  // row(A) = elementwise max of row(A minus lowest element) and that element's row
  std::vector<double> e(dim * dim);
  for (std::uint32_t a = 1; a <= frame.full().bits; ++a) {
    const std::uint32_t rest = a & (a - 1);
    const double* elem = &per_element[static_cast<std::size_t>(std::countr_zero(a)) * dim];
    double* out = &e[(a - 1) * dim];
    if (rest == 0) {
      std::copy(elem, elem + dim, out);
    } else {
      k.max_into(&e[(rest - 1) * dim], elem, out, dim);
    }
  }

  NonExclusivityMatrix u(frame, std::move(e), Provenance::FromRelation);
  u.relation_ = r;
  auto report = validate_axioms(u);
  if (!report.all_passed()) throw AxiomViolationError(std::move(report), frame);
  return u;
}

NonExclusivityMatrix u_explicit(const Frame& frame, std::span<const DisjointPair> disjoint_pairs) {
  NonExclusivityMatrix u = NonExclusivityMatrix::classical(frame);
  std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
  const std::size_t dim = u.dim_;
  for (const auto& p : disjoint_pairs) {
    frame.require_valid(p.a);
    frame.require_valid(p.b);
    if (p.a.empty() || p.b.empty()) {
      throw Error(Errc::InvalidMask, "listed pairs must be nonempty sets");
    }
    if (p.a.intersects(p.b)) {
      throw Error(Errc::NonDisjointPair, frame.format(p.a) + " and " + frame.format(p.b) + " intersect");
    }
    if (!(p.degree >= 0.0 && p.degree <= 1.0)) {
      throw Error(Errc::ParameterOutOfRange, "degree for " + frame.format(p.a) + "," + frame.format(p.b) +
                                                 " is outside [0,1]");
    }
    const auto key = std::minmax(p.a.bits, p.b.bits);
    if (!seen.insert(key).second) {
      throw Error(Errc::DuplicatePair, frame.format(p.a) + "," + frame.format(p.b) + " listed twice");
    }
    u.entries_[canonical_index(p.a) * dim + canonical_index(p.b)] = p.degree;
    u.entries_[canonical_index(p.b) * dim + canonical_index(p.a)] = p.degree;
  }
  auto report = validate_axioms(u);
  if (!report.all_passed()) throw AxiomViolationError(std::move(report), frame);
  return u;
}

double lookup_u(const NonExclusivityMatrix& u, SubsetMask a, SubsetMask b) {
  u.frame().require_valid(a);
  u.frame().require_valid(b);
  if (a.empty() || b.empty()) return 0.0;
  if (a.intersects(b)) return 1.0;
  return u.entry(a, b);
}

// ---------------------------------------------------------------------------
// Axioms

bool AxiomReport::all_passed() const noexcept {
  return std::all_of(results.begin(), results.end(), [](const AxiomResult& r) { return r.passed; });
}

std::string AxiomReport::describe(const Frame& frame) const {
  std::ostringstream os;
  for (const auto& r : results) {
    os << r.axiom << ' ' << (r.passed ? "pass" : "FAIL");
    if (!r.exhaustive) os << " (sampled)";
    if (!r.passed) {
      os << ": " << r.message << " [A=" << frame.format(r.a) << " B=" << frame.format(r.b);
      if (!r.c.empty()) os << " C=" << frame.format(r.c);
      os << " lhs=" << r.lhs << " rhs=" << r.rhs << ']';
    }
    os << '\n';
  }
  return os.str();
}

namespace {

void fail(AxiomResult& r, SubsetMask a, SubsetMask b, SubsetMask c, double lhs, double rhs, std::string msg) {
  r.passed = false;
  r.a = a;
  r.b = b;
  r.c = c;
  r.lhs = lhs;
  r.rhs = rhs;
  r.message = std::move(msg);
}

AxiomResult check_p1(const NonExclusivityMatrix& u, const simd::KernelSet& k) {
  AxiomResult r;
  r.axiom = "P1";
  const std::size_t dim = u.dimension();
  for (std::size_t i = 0; i < dim; ++i) {
    const auto row = u.row(from_canonical_index(i));
    const std::size_t bad = k.find_outside(row.data(), 0.0, 1.0, dim);
    if (bad != simd::npos) {
      fail(r, from_canonical_index(i), from_canonical_index(bad), {}, row[bad], 1.0, "degree outside [0,1]");
      return r;
    }
  }
  for (std::size_t i = 0; i < dim; ++i) {
    const SubsetMask a = from_canonical_index(i);
    const auto row = u.row(a);
    for (std::size_t j = 0; j < dim; ++j) {
      if (a.intersects(from_canonical_index(j)) && std::abs(row[j] - 1.0) > kAxiomTolerance) {
        fail(r, a, from_canonical_index(j), {}, row[j], 1.0, "intersecting sets must have degree 1");
        return r;
      }
    }
  }
  return r;
}

AxiomResult check_p2(const NonExclusivityMatrix& u) {
  AxiomResult r;
  r.axiom = "P2";
  const std::size_t dim = u.dimension();
  const auto e = u.entries();
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i + 1; j < dim; ++j) {
      if (std::abs(e[i * dim + j] - e[j * dim + i]) > kAxiomTolerance) {
        fail(r, from_canonical_index(i), from_canonical_index(j), {}, e[i * dim + j], e[j * dim + i],
             "u(A,B) != u(B,A)");
        return r;
      }
    }
  }
  return r;
}

// cols[B] holds u(·, B) contiguously, so P3/P4 for every A is one row scan.
AxiomResult check_p3(const double* cols, const Frame& frame, const simd::KernelSet& k) {
  AxiomResult r;
  r.axiom = "P3";
  const std::size_t dim = frame.subset_count();
  for (std::uint32_t b = 1; b <= frame.full().bits; ++b) {
    for (std::size_t e = 0; e < frame.size(); ++e) {
      const std::uint32_t bigger = b | (1u << e);
      if (bigger == b) continue;
      const double* small_col = &cols[(b - 1) * dim];
      const double* big_col = &cols[(bigger - 1) * dim];
      const std::size_t bad = k.find_greater(small_col, big_col, kAxiomTolerance, dim);
      if (bad != simd::npos) {
        fail(r, from_canonical_index(bad), SubsetMask(b), SubsetMask(bigger), small_col[bad], big_col[bad],
             "u(A,B) > u(A,C) although B is a subset of C");
        return r;
      }
    }
  }
  return r;
}

AxiomResult check_p4(const double* cols, const Frame& frame, const simd::KernelSet& k,
                     std::uint64_t seed) {
  AxiomResult r;
  r.axiom = "P4";
  const std::size_t dim = frame.subset_count();
  const std::uint32_t full = frame.full().bits;
  auto col = [&](std::uint32_t m) { return &cols[(m - 1) * dim]; };

  if (frame.size() <= kExhaustiveTriangleMaxFrame) {
    for (std::uint32_t bi = 1; bi <= full; ++bi) {
      for (std::uint32_t bj = bi + 1; bj <= full; ++bj) {
        const std::uint32_t un = bi | bj;
        const std::size_t bad = k.find_triangle_violation(col(bi), col(bj), col(un), kAxiomTolerance, dim);
        if (bad != simd::npos) {
          fail(r, from_canonical_index(bad), SubsetMask(bi), SubsetMask(bj), col(bi)[bad] + col(bj)[bad],
               col(un)[bad], "u(A,B) + u(A,C) < u(A, B∪C)");
          return r;
        }
      }
    }
    return r;
  }

  r.exhaustive = false;
  Rng rng(seed);
  for (std::size_t t = 0; t < kSampledTriangleTriples; ++t) {
    const auto a = static_cast<std::uint32_t>(rng.between(1, full));
    const auto bi = static_cast<std::uint32_t>(rng.between(1, full));
    const auto bj = static_cast<std::uint32_t>(rng.between(1, full));
    const double lhs = col(bi)[a - 1] + col(bj)[a - 1];
    const double rhs = col(bi | bj)[a - 1];
    if (lhs < rhs - kAxiomTolerance) {
      fail(r, SubsetMask(a), SubsetMask(bi), SubsetMask(bj), lhs, rhs, "u(A,B) + u(A,C) < u(A, B∪C)");
      return r;
    }
  }
  return r;
}

}  // namespace

AxiomReport validate_axioms(const NonExclusivityMatrix& u, std::uint64_t sample_seed) {
  const auto& k = simd::active();
  const Frame& frame = u.frame();
  AxiomReport report;
  report.results[0] = check_p1(u, k);
  report.results[1] = check_p2(u);

  // Column-major copy only when the matrix is not symmetric; otherwise rows are columns.
  std::vector<double> transposed;
  const double* cols = u.entries().data();
  if (!report.results[1].passed) {
    const std::size_t dim = u.dimension();
    transposed.resize(dim * dim);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) transposed[j * dim + i] = cols[i * dim + j];
    }
    cols = transposed.data();
  }
  report.results[2] = check_p3(cols, frame, k);
  report.results[3] = check_p4(cols, frame, k, sample_seed);
  report.results[4].axiom = "P5";
  report.results[4].message = "u(A,∅) = u(∅,∅) = 0 is applied by lookup_u";
  return report;
}

// ---------------------------------------------------------------------------
// Determinant and rank

namespace {

constexpr int kDecimalDigits = 6;

bool to_scaled_decimals(std::span<const double> entries, std::vector<long long>& out) {
  out.resize(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const double scaled = std::nearbyint(entries[i] * 1e6);
    if (scaled / 1e6 != entries[i]) return false;
    out[i] = static_cast<long long>(scaled);
  }
  return true;
}

}  // namespace

DeterminantRank determinant_and_rank(const NonExclusivityMatrix& u) {
  DeterminantRank out;
  out.dimension = u.dimension();
  std::vector<long long> scaled;
  if (u.dimension() <= kExactEliminationMaxDim && to_scaled_decimals(u.entries(), scaled)) {
    const auto r = linalg::eliminate_exact_decimal(scaled, u.dimension(), kDecimalDigits);
    out.determinant = r.determinant;
    out.rank = r.rank;
    out.exact = true;
    return out;
  }
  const auto r = linalg::eliminate({u.entries().begin(), u.entries().end()}, u.dimension(), kPivotTolerance);
  out.determinant = r.determinant;
  out.rank = r.rank;
  return out;
}

}  // namespace dnt
