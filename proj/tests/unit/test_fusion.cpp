#include "dnt/fusion.hpp"

#include <cmath>

#include "dnt/oracle.hpp"
#include "support.hpp"

using namespace dnt;

namespace {

double max_deviation(const DNumber& x, const DNumber& y) {
  double dev = 0.0;
  for (std::uint32_t m = 1; m <= x.frame().full().bits; ++m) {
    dev = std::max(dev, std::abs(x.mass(SubsetMask(m)) - y.mass(SubsetMask(m))));
  }
  return dev;
}

}  // namespace

TEST_CASE("ECR on the two-element example") {
  const Frame f = make_frame({"a", "b"});
  const auto a = subset_of(f, {"a"}), b = subset_of(f, {"b"});
  const auto u = u_from_relation(f, FuzzyRelation::make(2, {1, 0.4, 0.4, 1}));
  const DNumber d1 = make_dnumber(f, {{a, 0.6}, {b, 0.4}});
  const DNumber d2 = make_dnumber(f, {{a, 0.5}, {b, 0.5}});

  const auto r = ecr_combine(d1, d2, u);
  CHECK(r.rule == Rule::Ecr2);
  CHECK(r.conflict == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(r.result.mass(a) == doctest::Approx(3.0 / 7).epsilon(1e-15));
  CHECK(r.result.mass(b) == doctest::Approx(2.0 / 7).epsilon(1e-15));
  CHECK(r.result.mass(f.full()) == doctest::Approx(2.0 / 7).epsilon(1e-15));
  CHECK(is_information_complete(r.result));

  const std::array<DNumber, 2> pair{d1, d2};
  CHECK(conflict_of(pair, u) == doctest::Approx(0.3));
  CHECK(max_deviation(ecr_combine_n(pair, u).result, r.result) <= 1e-12);
  CHECK(max_deviation(ecr_combine(d2, d1, u).result, r.result) <= 1e-12);
}

TEST_CASE("Dempster's rule on the textbook pair") {
  const Frame f = make_frame({"a", "b"});
  const auto a = subset_of(f, {"a"}), b = subset_of(f, {"b"});
  const Bpa m1 = Bpa::make(f, {{a, 0.6}, {f.full(), 0.4}});
  const Bpa m2 = Bpa::make(f, {{b, 0.5}, {f.full(), 0.5}});
  const auto r = dempster_combine(m1, m2);
  CHECK(r.conflict == doctest::Approx(0.3));
  CHECK(r.result.mass(a) == doctest::Approx(3.0 / 7));
  CHECK(r.result.mass(b) == doctest::Approx(2.0 / 7));
  CHECK(r.result.mass(f.full()) == doctest::Approx(2.0 / 7));

  // with classical U the ECR rule agrees
  const auto e = ecr_combine(m1.as_dnumber(), m2.as_dnumber(), NonExclusivityMatrix::classical(f));
  CHECK(max_deviation(e.result, r.result) <= 1e-12);
}

TEST_CASE("vacuous input is neutral") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    oracle::InstanceSpec spec;
    spec.seed = seed;
    spec.frame_size = 3;
    spec.input_count = 1;
    const auto inst = oracle::generate_instance(spec);
    const DNumber vac = make_dnumber(inst.frame, {{inst.frame.full(), 1.0}});
    CHECK(max_deviation(ecr_combine(inst.inputs[0], vac, inst.u).result, inst.inputs[0]) <= 1e-12);
  }
}

TEST_CASE("three inputs whose sets meet pairwise but not jointly") {
  // min pairwise u is 1 for {a,b},{b,c},{a,c}: the product goes to the union,
  // where Dempster's rule would count it as conflict.
  const Frame f = make_frame({"a", "b", "c"});
  const auto u = NonExclusivityMatrix::classical(f);
  const std::vector<DNumber> ds{make_dnumber(f, {{subset_of(f, {"a", "b"}), 1.0}}),
                                make_dnumber(f, {{subset_of(f, {"b", "c"}), 1.0}}),
                                make_dnumber(f, {{subset_of(f, {"a", "c"}), 0.5}, {subset_of(f, {"b"}), 0.5}})};
  const auto r = ecr_combine_n(ds, u);
  CHECK(r.conflict == 0.0);
  CHECK(r.result.mass(subset_of(f, {"b"})) == doctest::Approx(0.5));
  CHECK(r.result.mass(f.full()) == doctest::Approx(0.5));

  std::vector<Bpa> bpas;
  for (const auto& d : ds) bpas.push_back(to_bpa(d));
  const auto dem = dempster_combine_all(bpas);
  CHECK(dem.conflict == doctest::Approx(0.5));
  CHECK(dem.result.mass(subset_of(f, {"b"})) == doctest::Approx(1.0));
}

TEST_CASE("on two elements the n-ary rule with classical U is Dempster's rule") {
  // no three subsets of {a,b} meet pairwise without a common element
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    oracle::InstanceSpec spec;
    spec.seed = seed;
    spec.frame_size = 2;
    spec.input_count = 3;
    spec.u_mode = oracle::UMode::Classical;
    const auto inst = oracle::generate_instance(spec);
    std::vector<Bpa> bpas;
    for (const auto& d : inst.inputs) bpas.push_back(to_bpa(d));
    try {
      const auto dem = dempster_combine_all(bpas);
      const auto ecr = ecr_combine_n(inst.inputs, inst.u);
      CHECK(max_deviation(dem.result, ecr.result) <= 1e-12);
      CHECK(dem.conflict == doctest::Approx(ecr.conflict).epsilon(1e-12));
    } catch (const Error& e) {
      CHECK(e.code() == Errc::TotalConflict);
      CHECK_ERRC(ecr_combine_n(inst.inputs, inst.u), Errc::TotalConflict);
    }
  }
}

TEST_CASE("ECR is commutative but not associative") {
  bool witness = false;
  for (std::uint64_t seed = 1; seed <= 200 && !witness; ++seed) {
    oracle::InstanceSpec spec;
    spec.seed = seed;
    spec.frame_size = 3;
    spec.input_count = 3;
    const auto inst = oracle::generate_instance(spec);
    const auto& in = inst.inputs;
    const auto left = ecr_combine(ecr_combine(in[0], in[1], inst.u).result, in[2], inst.u).result;
    const auto right = ecr_combine(in[0], ecr_combine(in[1], in[2], inst.u).result, inst.u).result;
    CHECK(max_deviation(ecr_combine(in[0], in[1], inst.u).result, ecr_combine(in[1], in[0], inst.u).result) <= 1e-12);
    witness = max_deviation(left, right) > 1e-6;
  }
  CHECK(witness);
}

TEST_CASE("fusion errors") {
  const Frame f = make_frame({"a", "b"});
  const auto u = NonExclusivityMatrix::classical(f);
  const DNumber a = make_dnumber(f, {{SubsetMask(1), 1.0}});
  const DNumber b = make_dnumber(f, {{SubsetMask(2), 1.0}});
  CHECK_ERRC(ecr_combine(a, b, u), Errc::TotalConflict);
  const std::array<DNumber, 2> ab{a, b};
  CHECK(conflict_of(ab, u) == 1.0);
  const std::array<DNumber, 2> same{a, a};
  CHECK(conflict_of(same, u) == 0.0);

  CHECK_ERRC(ecr_combine(a, make_dnumber(f, {{SubsetMask(1), 0.5}}), u), Errc::IncompleteDNumber);
  const std::array<DNumber, 1> one{a};
  CHECK_ERRC(ecr_combine_n(one, u), Errc::FewerThanTwoInputs);
  const Frame g = make_frame({"x", "y"});
  CHECK_ERRC(ecr_combine(a, make_dnumber(g, {{SubsetMask(1), 1.0}}), u), Errc::FrameMismatch);

  const Frame big = make_frame({"a", "b", "c", "d"});
  std::vector<FocalElement> spread;
  for (std::uint32_t m = 1; m < 16; ++m) spread.push_back({SubsetMask(m), m < 15 ? 0.06 : 1.0 - 14 * 0.06});
  const std::vector<DNumber> many(7, make_dnumber(big, spread));
  CHECK_ERRC(ecr_combine_n(many, NonExclusivityMatrix::classical(big)), Errc::ComplexityBudget);
}
