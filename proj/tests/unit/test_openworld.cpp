#include "dnt/openworld.hpp"

#include <cmath>

#include "dnt/oracle.hpp"
#include "support.hpp"

using namespace dnt;

namespace {

struct OpenFixture {
  Frame fr = make_frame({"a", "b"});
  SubsetMask a = subset_of(fr, {"a"}), b = subset_of(fr, {"b"});
  NonExclusivityMatrix u = NonExclusivityMatrix::classical(fr);
  DNumber d1 = make_dnumber(fr, {{a, 0.5}, {b, 0.2}});
  DNumber d2 = make_dnumber(fr, {{a, 0.5}, {fr.full(), 0.3}});
  CompletenessDegree delta = CompletenessDegree::make(0.5);
};

}  // namespace

TEST_CASE("completeness degree range") {
  CHECK(CompletenessDegree::make(0.0).value() == 0.0);
  CHECK(CompletenessDegree::make(1.0).value() == 1.0);
  CHECK_ERRC(CompletenessDegree::make(-0.1), Errc::ParameterOutOfRange);
  CHECK_ERRC(CompletenessDegree::make(1.5), Errc::ParameterOutOfRange);
  CHECK_ERRC(CompletenessDegree::make(std::nan("")), Errc::ParameterOutOfRange);
}

TEST_CASE_FIXTURE(OpenFixture, "transformation splits the missing mass") {
  const DNumber t = transform_complete(d2, CompletenessDegree::make(0.6));
  REQUIRE(t.extended());
  const SubsetMask x = t.frame().unknown_mask();
  CHECK(t.mass(a) == doctest::Approx(0.5));
  CHECK(t.mass(fr.full()) == doctest::Approx(0.3 + 0.6 * 0.2));
  CHECK(t.mass(x) == doctest::Approx(0.4 * 0.2));
  CHECK(is_information_complete(t));
  CHECK_ERRC(transform_complete(t, delta), Errc::PreconditionFailed);

  const DNumber full = make_dnumber(fr, {{a, 1.0}});
  const DNumber tf = transform_complete(full, delta);
  CHECK(tf.mass(tf.frame().unknown_mask()) == 0.0);
  CHECK(tf.mass(a) == 1.0);
}

TEST_CASE_FIXTURE(OpenFixture, "extended U") {
  const auto ue = extend_u(NonExclusivityMatrix(u_from_relation(fr, FuzzyRelation::make(2, {1, 0.4, 0.4, 1}))));
  const Frame& e = ue.frame();
  const SubsetMask x = e.unknown_mask();
  CHECK(ue.entry(a, b) == 0.4);
  CHECK(ue.entry(x, a) == 0.0);
  CHECK(ue.entry(x, fr.full()) == 0.0);
  CHECK(ue.entry(a | x, b) == 0.4);
  CHECK(ue.entry(a | x, b | x) == 1.0);
  CHECK(validate_axioms(ue).all_passed());
  REQUIRE(ue.relation());
  CHECK((*ue.relation())(2, 2) == 1.0);
  CHECK((*ue.relation())(0, 2) == 0.0);
}

TEST_CASE_FIXTURE(OpenFixture, "open-world combination and its conflict split") {
  const auto r = combine_incomplete(d1, d2, delta, u);
  REQUIRE(r.open_world);
  const auto& ow = *r.open_world;
  REQUIRE(ow.decomposition);
  CHECK(ow.decomposition->k1 == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(ow.decomposition->k2 == doctest::Approx(0.22).epsilon(1e-15));
  CHECK(r.conflict == doctest::Approx(0.32).epsilon(1e-15));
  CHECK(ow.dx == doctest::Approx(0.015 / 0.68).epsilon(1e-12));
  CHECK(std::abs(ow.dx - dx_closed_form(0.7, 0.8, 0.5, 0.1)) <= 1e-12);
  CHECK(std::round(ow.dx * 1e6) / 1e6 == doctest::Approx(0.022059));

  const auto dec = conflict_decomposition(d1, d2, delta, u);
  CHECK(dec.total == doctest::Approx(0.32));
  CHECK(k2_from_unknown_masses(0.15, 0.1) == doctest::Approx(0.22));
  CHECK(k2_closed_form(0.7, 0.8, 0.5) == doctest::Approx(0.22));

  const std::array<DNumber, 2> pair{d1, d2};
  const auto n = combine_incomplete_n(pair, delta, u);
  CHECK(std::abs(n.open_world->dx - ow.dx) <= 1e-12);
  CHECK_FALSE(n.open_world->decomposition);

  CHECK_ERRC(combine_incomplete(d1, d2, delta, extend_u(u)), Errc::PreconditionFailed);
}

TEST_CASE("closed form edge cases") {
  CHECK(dx_closed_form(1.0, 0.3, 0.2, 0.1) == 0.0);
  CHECK(dx_closed_form(0.3, 0.4, 1.0, 0.0) == 0.0);
  // δ = 0 and Q = 0 on both sides: all mass is on X
  CHECK(dx_closed_form(0.0, 0.0, 0.0, 0.0) == doctest::Approx(1.0));
  CHECK_ERRC(dx_closed_form(1.1, 0.5, 0.5, 0.0), Errc::ParameterOutOfRange);
  CHECK_ERRC(dx_closed_form(0.5, 0.5, -0.1, 0.0), Errc::ParameterOutOfRange);
  CHECK_ERRC(dx_closed_form(0.5, 0.5, 0.5, 0.3), Errc::ParameterOutOfRange);
  // Q1 = 1, Q2 = 0, δ = 0 puts all of D2 on X and none of D1 there
  CHECK_ERRC(dx_closed_form(1.0, 0.0, 0.0, 0.0), Errc::TotalConflict);
}

TEST_CASE("closed form agrees with the extended-frame combination") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    oracle::InstanceSpec spec;
    spec.seed = seed;
    spec.frame_size = 3;
    spec.q_lo = 0.3;
    spec.q_hi = 0.95;
    const auto inst = oracle::generate_instance(spec);
    const auto& d1 = inst.inputs[0];
    const auto& d2 = inst.inputs[1];
    for (double dv : {0.0, 0.25, 0.5, 0.9}) {
      const auto delta = CompletenessDegree::make(dv);
      const auto r = combine_incomplete(d1, d2, delta, inst.u);
      const auto& dec = *r.open_world->decomposition;
      const double closed = dx_closed_form(q_value(d1), q_value(d2), dv, dec.k1);
      CHECK(std::abs(closed - r.open_world->dx) <= 1e-12);
    }
  }
}

TEST_CASE("D(X) does not increase with delta") {
  int draws = 0;
  for (std::uint64_t seed = 1; draws < 120; ++seed) {
    oracle::InstanceSpec spec;
    spec.seed = seed;
    spec.frame_size = 2 + seed % 3;
    spec.q_lo = 0.1;
    spec.q_hi = 0.9;
    const auto inst = oracle::generate_instance(spec);
    const double q1 = q_value(inst.inputs[0]), q2 = q_value(inst.inputs[1]);
    const double k1 = conflict_decomposition(inst.inputs[0], inst.inputs[1], CompletenessDegree::make(1.0), inst.u).k1;
    double previous = 2.0;
    for (int i = 0; i <= 20; ++i) {
      const double dx = dx_closed_form(q1, q2, i / 20.0, k1);
      CHECK(dx <= previous + 1e-12);
      previous = dx;
    }
    ++draws;
  }
}

TEST_CASE("region classifier") {
  auto tags = [](const std::vector<RegionCase>& cs) {
    std::vector<std::string> out;
    for (const auto& c : cs) {
      if (c.tag != "P4.8") CHECK(c.numeric_agrees);
      out.emplace_back(c.tag);
    }
    return out;
  };
  using V = std::vector<std::string>;

  CHECK(tags(dx_region_classify(0.0, 0.3, 0.5).property4) == V{"P4.1"});
  CHECK(tags(dx_region_classify(0.2, 0.3, 0.3).property4) == V{"P4.2", "P4.7"});
  CHECK(tags(dx_region_classify(0.3, 0.2, 0.3).property4) == V{"P4.3", "P4.5"});
  CHECK(tags(dx_region_classify(0.4, 0.4, 0.2).property4) == V{"P4.4", "P4.6"});
  CHECK(tags(dx_region_classify(0.1, 0.2, 0.5).property4) == V{"P4.5", "P4.7"});
  // 1-K_D = 1 with both X-masses nonzero: the case tag is reported but the
  // computed value is D1(X)D2(X), not 1
  const auto whole = dx_region_classify(0.3, 0.4, 1.0);
  CHECK(tags(whole.property4) == V{"P4.5", "P4.7", "P4.8"});
  CHECK_FALSE(whole.property4.back().numeric_agrees);

  const auto r = dx_region_classify(0.4, 0.3, 0.8, 0.5);
  CHECK(r.dx == doctest::Approx(0.15));
  // 1-K_D = 0.8 against (1-δ)D2(X) = 0.15 and (1-δ)D1(X) = 0.2
  CHECK(tags(r.property5) == V{"P5.5", "P5.6"});
  CHECK(tags(dx_region_classify(0.4, 0.3, 0.1, 0.5).property5) == V{"P5.3", "P5.4"});
  CHECK(tags(dx_region_classify(0.4, 0.3, 0.15, 0.5).property5) == V{"P5.1", "P5.4"});
  CHECK(dx_region_classify(0.4, 0.3, 0.8).property5.empty());

  CHECK_ERRC(dx_region_classify(0.4, 0.3, 0.0), Errc::DegenerateDenominator);
  CHECK_ERRC(dx_region_classify(1.2, 0.3, 0.5), Errc::ParameterOutOfRange);
  CHECK_ERRC(dx_region_classify(0.2, 0.3, 0.5, 2.0), Errc::ParameterOutOfRange);
}
