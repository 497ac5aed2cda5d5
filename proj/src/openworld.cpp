#include "dnt/openworld.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace dnt {

CompletenessDegree CompletenessDegree::make(double delta) {
  if (!(delta >= 0.0 && delta <= 1.0)) {
    throw Error(Errc::ParameterOutOfRange, "completeness degree must lie in [0,1]");
  }
  return CompletenessDegree(delta);
}

DNumber transform_complete(const DNumber& d, CompletenessDegree delta) {
  if (d.extended()) throw Error(Errc::PreconditionFailed, "D number is already on an extended frame");
  const Frame ext = d.frame().with_unknown();
  const SubsetMask theta = d.frame().full();
  const double missing = is_information_complete(d) ? 0.0 : std::max(0.0, 1.0 - q_value(d));

  std::vector<FocalElement> out;
  out.reserve(d.focal_count() + 2);
  for (const auto& f : d.focal()) {
    if (f.set != theta) out.push_back(f);
  }
  const double on_theta = std::min(1.0, d.mass(theta) + delta.value() * missing);
  out.push_back({theta, on_theta});
  out.push_back({ext.unknown_mask(), (1.0 - delta.value()) * missing});
  return DNumber::make(ext, out);
}

NonExclusivityMatrix extend_u(const NonExclusivityMatrix& u) {
  const Frame& base = u.frame();
  const Frame ext = base.with_unknown();
  const std::uint32_t base_bits = base.full().bits;
  const std::size_t dim = ext.subset_count();
  std::vector<double> e(dim * dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const SubsetMask a = from_canonical_index(i);
    for (std::size_t j = 0; j < dim; ++j) {
      const SubsetMask b = from_canonical_index(j);
      double v;
      if (a.intersects(b)) {
        v = 1.0;
      } else {
        const SubsetMask ab(a.bits & base_bits), bb(b.bits & base_bits);
        v = (ab.empty() || bb.empty()) ? 0.0 : u.entry(ab, bb);
      }
      e[i * dim + j] = v;
    }
  }
  NonExclusivityMatrix out(ext, std::move(e), u.provenance());
  if (u.relation()) {
    const std::size_t n = base.size();
    std::vector<double> r((n + 1) * (n + 1), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) r[i * (n + 1) + j] = (*u.relation())(i, j);
    }
    r[n * (n + 1) + n] = 1.0;
    out.relation_ = FuzzyRelation::make(n + 1, std::move(r));
  }
  auto report = validate_axioms(out);
  if (!report.all_passed()) throw AxiomViolationError(std::move(report), ext);
  return out;
}

namespace {

void require_base_inputs(std::span<const DNumber> ds, const NonExclusivityMatrix& u, const char* what) {
  if (u.frame().has_unknown()) {
    throw Error(Errc::PreconditionFailed, std::string(what) + " expects U on the base frame");
  }
  for (const auto& d : ds) require_same_frame(d.frame(), u.frame(), what);
}

double base_conflict(const DNumber& d1, const DNumber& d2, const NonExclusivityMatrix& u) {
  double k1 = 0.0;
  for (const auto& b : d1.focal()) {
    for (const auto& c : d2.focal()) {
      if (!b.set.intersects(c.set)) k1 += (1.0 - u.entry(b.set, c.set)) * b.mass * c.mass;
    }
  }
  return k1;
}

}  // namespace

double k2_closed_form(double q1, double q2, double delta) noexcept {
  return q2 * (1.0 - q1) * (1.0 - delta) + q1 * (1.0 - q2) * (1.0 - delta) +
         2.0 * (1.0 - q1) * (1.0 - q2) * delta * (1.0 - delta);
}

double k2_from_unknown_masses(double d1x, double d2x) noexcept { return d1x + d2x - 2.0 * d1x * d2x; }

ConflictDecomposition conflict_decomposition(const DNumber& d1, const DNumber& d2, CompletenessDegree delta,
                                             const NonExclusivityMatrix& u) {
  const std::array<DNumber, 2> pair{d1, d2};
  require_base_inputs(pair, u, "conflict_decomposition");
  const double q1 = q_value(d1), q2 = q_value(d2), dv = delta.value();

  ConflictDecomposition out;
  out.k1 = base_conflict(d1, d2, u);
  out.k2 = k2_closed_form(q1, q2, dv);
  out.total = out.k1 + out.k2;

  const DNumber t1 = transform_complete(d1, delta);
  const DNumber t2 = transform_complete(d2, delta);
  const SubsetMask x = t1.frame().unknown_mask();
  const double second_form = k2_from_unknown_masses(t1.mass(x), t2.mass(x));
  if (std::abs(second_form - out.k2) > 1e-12) {
    throw Error(Errc::InternalInvariant, "the two K_D^2 forms disagree");
  }
  const std::array<DNumber, 2> transformed{t1, t2};
  const double extended_kd = conflict_of(transformed, extend_u(u));
  if (std::abs(extended_kd - out.total) > 1e-12) {
    throw Error(Errc::InternalInvariant, "K_D^1 + K_D^2 differs from the extended-frame K_D");
  }
  return out;
}

FusionReport combine_incomplete(const DNumber& d1, const DNumber& d2, CompletenessDegree delta,
                                const NonExclusivityMatrix& u) {
  const std::array<DNumber, 2> pair{d1, d2};
  require_base_inputs(pair, u, "combine_incomplete");
  const DNumber t1 = transform_complete(d1, delta);
  const DNumber t2 = transform_complete(d2, delta);
  FusionReport report = ecr_combine(t1, t2, extend_u(u));
  report.input_q = {q_value(d1), q_value(d2)};

  ConflictDecomposition dec;
  dec.k1 = base_conflict(d1, d2, u);
  dec.k2 = k2_closed_form(q_value(d1), q_value(d2), delta.value());
  dec.total = dec.k1 + dec.k2;
  report.open_world = OpenWorldDiagnostics{delta.value(), dec, report.result.mass(report.result.frame().unknown_mask())};
  return report;
}

FusionReport combine_incomplete_n(std::span<const DNumber> ds, CompletenessDegree delta,
                                  const NonExclusivityMatrix& u) {
  require_base_inputs(ds, u, "combine_incomplete_n");
  std::vector<DNumber> transformed;
  transformed.reserve(ds.size());
  for (const auto& d : ds) transformed.push_back(transform_complete(d, delta));
  FusionReport report = ecr_combine_n(transformed, extend_u(u));
  report.input_q.clear();
  for (const auto& d : ds) report.input_q.push_back(q_value(d));
  report.open_world =
      OpenWorldDiagnostics{delta.value(), std::nullopt, report.result.mass(report.result.frame().unknown_mask())};
  return report;
}

double dx_closed_form(double q1, double q2, double delta, double k1) {
  auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!in_unit(q1) || !in_unit(q2) || !in_unit(delta)) {
    throw Error(Errc::ParameterOutOfRange, "Q1, Q2 and delta must lie in [0,1]");
  }
  if (!(k1 >= -kTieTolerance && k1 <= q1 * q2 + kTieTolerance)) {
    throw Error(Errc::ParameterOutOfRange, "K_D^1 must lie in [0, Q1*Q2]");
  }
  const double denominator = 1.0 - k1 - k2_closed_form(q1, q2, delta);
  if (denominator <= kTotalConflictTolerance) {
    throw Error(Errc::TotalConflict, "1 - K_D^1 - K_D^2 vanishes");
  }
  return (1.0 - q1) * (1.0 - q2) * (1.0 - delta) * (1.0 - delta) / denominator;
}

RegionReport dx_region_classify(double d1x, double d2x, double one_minus_kd, std::optional<double> delta) {
  auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!in_unit(d1x) || !in_unit(d2x) || !in_unit(one_minus_kd)) {
    throw Error(Errc::ParameterOutOfRange, "D1(X), D2(X) and 1-K_D must lie in [0,1]");
  }
  if (delta && !in_unit(*delta)) throw Error(Errc::ParameterOutOfRange, "delta must lie in [0,1]");
  if (one_minus_kd <= kTieTolerance) throw Error(Errc::DegenerateDenominator, "1 - K_D is zero");

  const double omk = one_minus_kd;
  RegionReport rep;
  rep.dx = d1x * d2x / omk;
  const double dx = rep.dx;

  auto eq = [](double a, double b) { return std::abs(a - b) <= kTieTolerance; };
  auto lt = [](double a, double b) { return a < b - kTieTolerance; };
  auto gt = [](double a, double b) { return a > b + kTieTolerance; };
  auto nz = [](double a) { return a > kTieTolerance; };
  // A tie in the condition of size kTieTolerance moves D(X) by at most this much.
  const double agree_tol = 4.0 * kTieTolerance / omk;
  auto close = [&](double a, double b) { return std::abs(a - b) <= agree_tol; };

  auto add = [](std::vector<RegionCase>& v, std::string_view tag, std::string_view pred, bool ok) {
    v.push_back(RegionCase{tag, pred, ok});
  };

  auto& p4 = rep.property4;
  if (!nz(d1x) || !nz(d2x)) add(p4, "P4.1", "D(X)=0", close(dx, 0.0));
  if (eq(omk, d2x)) add(p4, "P4.2", "D(X)=D1(X)", close(dx, d1x));
  if (eq(omk, d1x)) add(p4, "P4.3", "D(X)=D2(X)", close(dx, d2x));
  if (lt(omk, d2x) && nz(d1x)) add(p4, "P4.4", "D(X)>D1(X)", dx > d1x);
  if (gt(omk, d2x) && nz(d2x) && nz(d1x)) add(p4, "P4.5", "0<D(X)<D1(X)", dx > 0.0 && dx < d1x);
  if (lt(omk, d1x) && nz(d2x)) add(p4, "P4.6", "D(X)>D2(X)", dx > d2x);
  if (gt(omk, d1x) && nz(d1x) && nz(d2x)) add(p4, "P4.7", "0<D(X)<D2(X)", dx > 0.0 && dx < d2x);
  if (eq(omk, 1.0) && nz(d1x) && nz(d2x)) add(p4, "P4.8", "D(X)=1", close(dx, 1.0));

  if (delta && lt(omk, 1.0) && nz(d1x) && nz(d2x)) {
    const double keep = 1.0 - *delta;  // > 0 here since D1(X) ≠ 0
    const double miss1 = d1x / keep;    // 1 - Q1
    const double miss2 = d2x / keep;    // 1 - Q2
    auto& p5 = rep.property5;
    const double t1 = keep * d2x, t2 = keep * d1x;
    if (eq(omk, t1)) add(p5, "P5.1", "D(X)=1-Q1", close(dx, miss1));
    if (eq(omk, t2)) add(p5, "P5.2", "D(X)=1-Q2", close(dx, miss2));
    if (lt(omk, t1)) add(p5, "P5.3", "D(X)>1-Q1", dx > miss1);
    if (lt(omk, t2)) add(p5, "P5.4", "D(X)>1-Q2", dx > miss2);
    if (gt(omk, t1)) add(p5, "P5.5", "D(X)<1-Q1", dx < miss1);
    if (gt(omk, t2)) add(p5, "P5.6", "D(X)<1-Q2", dx < miss2);
  }
  return rep;
}

}  // namespace dnt
