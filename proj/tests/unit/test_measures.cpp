#include "dnt/measures.hpp"

#include "dnt/oracle.hpp"
#include "support.hpp"

using namespace dnt;

namespace {

struct Fixture {
  Frame fr = make_frame({"a", "b"});
  SubsetMask a = subset_of(fr, {"a"}), b = subset_of(fr, {"b"});
  NonExclusivityMatrix u = u_from_relation(fr, FuzzyRelation::make(2, {1, 0.4, 0.4, 1}));
  DNumber d = make_dnumber(fr, {{a, 0.5}, {b, 0.3}, {fr.full(), 0.2}});
};

}  // namespace

TEST_CASE_FIXTURE(Fixture, "belief and plausibility on the two-element instance") {
  CHECK(belief(d, u, a) == doctest::Approx(0.30).epsilon(1e-15));
  CHECK(plausibility(d, u, a) == doctest::Approx(0.82).epsilon(1e-15));
  const auto iv = belief_interval(d, u, a);
  CHECK(iv.lower == doctest::Approx(0.30));
  CHECK(iv.upper == doctest::Approx(0.82));
  CHECK(iv.width() == doctest::Approx(0.52));
  CHECK(imprecision(d, u, a) == doctest::Approx(0.52).epsilon(1e-15));
  CHECK(belief(d, u, a) + plausibility(d, u, b) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(belief(d, u, fr.full()) == doctest::Approx(1.0));
  CHECK(plausibility(d, u, SubsetMask()) == 0.0);
  CHECK(belief(d, u, SubsetMask()) == 0.0);
}

TEST_CASE_FIXTURE(Fixture, "plausibility vector is D times U") {
  const auto pl = pl_vector(d, u);
  REQUIRE(pl.size() == 3);
  CHECK(pl[0] == doctest::Approx(0.82).epsilon(1e-15));
  CHECK(pl[1] == doctest::Approx(0.70).epsilon(1e-15));
  CHECK(pl[2] == doctest::Approx(1.0).epsilon(1e-15));

  const auto rec = recover_masses(pl, u);
  CHECK(rec.masses[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(rec.masses[1] == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(rec.masses[2] == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(rec.residual <= 1e-12);
}

TEST_CASE_FIXTURE(Fixture, "measures require complete inputs on the same frame") {
  CHECK_ERRC(belief(make_dnumber(fr, {{a, 0.5}}), u, a), Errc::IncompleteDNumber);
  const Frame g = make_frame({"x", "y"});
  CHECK_ERRC(plausibility(make_dnumber(g, {{SubsetMask(1), 1.0}}), u, a), Errc::FrameMismatch);
  CHECK_ERRC(belief(d, u, SubsetMask(0b100)), Errc::FrameMismatch);
}

TEST_CASE("mass recovery fails on a rank-deficient U") {
  const Frame fr = make_frame({"a", "b"});
  const auto u = u_from_relation(fr, FuzzyRelation::make(2, {1, 1, 1, 1}));
  const DNumber d = make_dnumber(fr, {{SubsetMask(1), 1.0}});
  CHECK_ERRC(recover_masses(pl_vector(d, u), u), Errc::SingularMatrix);
}

TEST_CASE("vacuous D number under classical U is the vacuous belief function") {
  const Frame fr = make_frame({"a", "b", "c"});
  const auto u = NonExclusivityMatrix::classical(fr);
  const DNumber d = make_dnumber(fr, {{fr.full(), 1.0}});
  for (auto s : enumerate_nonempty_subsets(fr)) {
    CHECK(belief(d, u, s) == (s == fr.full() ? 1.0 : 0.0));
    CHECK(plausibility(d, u, s) == 1.0);
  }
}

TEST_CASE("relation-built U gives a belief function") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    oracle::InstanceSpec spec;
    spec.seed = seed;
    spec.frame_size = 4;
    spec.input_count = 1;
    const auto inst = oracle::generate_instance(spec);
    for (std::size_t n = 2; n <= 4; ++n) {
      const auto r = check_belief_function(inst.inputs[0], inst.u, n, 500, seed);
      CHECK(r.passed());
      CHECK(r.trials == 500);
    }
  }
}

// Superadditivity is not implied by P1-P5 alone. Here u({a}, .) is not
// submodular: Bel({a,b,d}) = 0.5 while inclusion-exclusion over {a,d} and
// {a,b} asks for 0.9.
TEST_CASE("axiom-valid U whose belief measure is not superadditive") {
  const Frame fr = make_frame({"a", "b", "c", "d"});
  const SubsetMask a(1);
  auto row = [](std::uint32_t rest) {
    switch (rest) {
      case 0b0010: return 0.4;  // b
      case 0b0100: return 0.5;  // c
      case 0b1000: return 0.4;  // d
      case 0b0110: return 0.5;  // bc
      case 0b1010: return 0.8;  // bd
      case 0b1100: return 0.5;  // cd
      case 0b1110: return 0.9;  // bcd
    }
    return 0.0;
  };
  std::vector<DisjointPair> pairs;
  for (std::uint32_t x = 1; x < 16; ++x) {
    for (std::uint32_t y = x + 1; y < 16; ++y) {
      if ((x & y) != 0) continue;
      const std::uint32_t with_a = (x & 1u) ? y : ((y & 1u) ? x : 0u);
      if (with_a != 0) pairs.push_back({SubsetMask(x), SubsetMask(y), row(with_a)});
    }
  }
  const auto u = u_explicit(fr, pairs);  // passes P1-P5
  const DNumber d = make_dnumber(fr, {{a, 1.0}});

  const SubsetMask a1 = subset_of(fr, {"a", "d"}), a2 = subset_of(fr, {"a", "b"});
  const double lhs = belief(d, u, a1 | a2);
  const double rhs = belief(d, u, a1) + belief(d, u, a2) - belief(d, u, a1 & a2);
  CHECK(lhs == doctest::Approx(0.5));
  CHECK(rhs == doctest::Approx(0.9));

  const auto r = check_belief_function(d, u, 2, 4000, 3);
  CHECK_FALSE(r.passed());
  CHECK(r.lhs < r.rhs);
}

TEST_CASE("belief-function check limits") {
  const Frame fr = make_frame({"a", "b"});
  const DNumber d = make_dnumber(fr, {{SubsetMask(1), 1.0}});
  const auto u = NonExclusivityMatrix::classical(fr);
  CHECK_ERRC(check_belief_function(d, u, 1, 10, 1), Errc::PreconditionFailed);
  CHECK_ERRC(check_belief_function(d, u, 17, 10, 1), Errc::PreconditionFailed);
  const Frame g = make_frame({"a", "b", "c", "d", "e", "f"});
  CHECK_ERRC(check_belief_function(make_dnumber(g, {{SubsetMask(1), 1.0}}), NonExclusivityMatrix::classical(g), 2, 10, 1),
             Errc::PreconditionFailed);
}
