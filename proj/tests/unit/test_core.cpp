#include "dnt/core.hpp"

#include "support.hpp"

using namespace dnt;

TEST_CASE("frame construction and labels") {
  const Frame f = make_frame({"a", "b", "c"});
  CHECK(f.size() == 3);
  CHECK(f.subset_count() == 7);
  CHECK(f.full() == SubsetMask(0b111));
  CHECK(f.index_of("c") == 2);
  CHECK(f.format(subset_of(f, {"a", "c"})) == "{a,c}");
  CHECK(f.format(SubsetMask()) == "{}");
  CHECK_ERRC(f.index_of("z"), Errc::UnknownLabel);
  CHECK_ERRC(make_frame({"a", "a"}), Errc::DuplicateLabel);
  CHECK_ERRC(make_frame({}), Errc::EmptyFrame);
}

TEST_CASE("frame cap") {
  std::vector<std::string> labels;
  for (int i = 0; i < 13; ++i) labels.push_back("e" + std::to_string(i));
  CHECK_ERRC(make_frame(labels), Errc::FrameTooLarge);
  CHECK(make_frame(labels, FrameOptions{13}).size() == 13);
  CHECK_ERRC(make_frame(labels, FrameOptions{21}), Errc::ParameterOutOfRange);
}

TEST_CASE("masks outside the frame are rejected") {
  const Frame f = make_frame({"a", "b"});
  CHECK(f.is_valid(SubsetMask(0b11)));
  CHECK_FALSE(f.is_valid(SubsetMask(0b100)));
  CHECK_ERRC(f.require_valid(SubsetMask(0b100)), Errc::FrameMismatch);
}

TEST_CASE("canonical order and complements") {
  const Frame f = make_frame({"a", "b"});
  const auto subsets = enumerate_nonempty_subsets(f);
  REQUIRE(subsets.size() == 3);
  CHECK(f.format(subsets[0]) == "{a}");
  CHECK(f.format(subsets[1]) == "{b}");
  CHECK(f.format(subsets[2]) == "{a,b}");
  for (std::size_t i = 0; i < subsets.size(); ++i) CHECK(canonical_index(subsets[i]) == i);
  CHECK(complement(f, subset_of(f, {"a"})) == subset_of(f, {"b"}));
  CHECK(complement(f, f.full()).empty());
}

TEST_CASE("unknown element") {
  const Frame f = make_frame({"a", "b"});
  const Frame e = f.with_unknown();
  CHECK(e.has_unknown());
  CHECK(e.size() == 3);
  CHECK(e.label(2) == "X");
  CHECK(e.unknown_mask() == SubsetMask(0b100));
  CHECK(e.base_mask() == SubsetMask(0b011));
  CHECK(e.base() == f);
  CHECK_FALSE(e == make_frame({"a", "b", "X"}));

  const Frame clash = make_frame({"X", "Y"});
  CHECK(clash.with_unknown().label(2) == "X'");

  std::vector<std::string> labels;
  for (int i = 0; i < 12; ++i) labels.push_back("e" + std::to_string(i));
  CHECK_ERRC(make_frame(labels).with_unknown(), Errc::FrameTooLarge);
}

TEST_CASE("frames with equal labels compare equal; mixing frames is an error") {
  const Frame a = make_frame({"a", "b"});
  const Frame b = make_frame({"a", "b"});
  const Frame c = make_frame({"b", "a"});
  CHECK(a == b);
  CHECK_FALSE(a == c);
  CHECK_ERRC(require_same_frame(a, c, "test"), Errc::FrameMismatch);
}
