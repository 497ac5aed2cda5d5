#include "cli.hpp"

#include <cmath>
#include <sstream>

#include "evidence.hpp"
#include "support.hpp"

using namespace dnt;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(DNT_SOURCE_DIR) + "/data/" + name; }
std::string bad(const std::string& name) { return std::string(DNT_SOURCE_DIR) + "/tests/data/" + name; }

bool contains(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("combine prints the combined masses and K_D") {
  const auto r = run({"combine", data("example.json"), "--inputs", "D1,D2"});
  CHECK(r.code == cli::kExitOk);
  CHECK(contains(r.out, "{a}    0.428571"));
  CHECK(contains(r.out, "{b}    0.285714"));
  CHECK(contains(r.out, "K_D=0.300000"));

  const auto ow = run({"combine", data("open_world.json"), "--inputs", "D1,D2"});
  CHECK(ow.code == cli::kExitOk);
  CHECK(contains(ow.out, "D(X)=0.022059"));
  CHECK(contains(ow.out, "K_D^2=0.220000"));
}

TEST_CASE("machine output is stable") {
  const std::vector<std::string> args{"combine", data("example.json"), "--inputs", "D1,D2", "--json"};
  const auto a = run(args), b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const auto j = nlohmann::json::parse(a.out);
  CHECK(j.at("masses").size() == 3);
}

TEST_CASE("measures") {
  const auto r = run({"measures", data("example.json"), "--dnumber", "D3", "--sets", "a|a,b"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "{a}    0.300000  0.820000  0.520000"));
  CHECK(contains(r.out, "{a,b}  1.000000  1.000000  0.000000"));
  CHECK(run({"measures", data("example.json"), "--dnumber", "D3", "--sets", "z"}).code == cli::kExitInvalidInput);
  CHECK(run({"measures", data("example.json"), "--dnumber", "D4"}).code == cli::kExitDomainError);
}

TEST_CASE("transform output parses back") {
  const auto r = run({"transform", data("example.json"), "--dnumber", "D4"});
  REQUIRE(r.code == 0);
  const auto doc = cli::parse_evidence(r.out);
  CHECK(doc.frame.size() == 3);
  const auto& t = doc.find("D4");
  CHECK(t.mass(subset_of(doc.frame, {"X"})) == doctest::Approx(0.4 * 0.3));
  CHECK(t.mass(subset_of(doc.frame, {"a", "b"})) == doctest::Approx(0.18));
}

TEST_CASE("invalid inputs exit 2") {
  const auto heavy = run({"validate", bad("bad_total.json")});
  CHECK(heavy.code == cli::kExitInvalidInput);
  CHECK(contains(heavy.err, "Heavy"));
  CHECK(run({"validate", bad("bad_field.json")}).code == cli::kExitInvalidInput);
  CHECK(run({"validate", bad("bad_axiom.json")}).code == cli::kExitInvalidInput);
  CHECK(run({"validate", bad("malformed.json")}).code == cli::kExitInvalidInput);
  CHECK(run({"validate", bad("missing.json")}).code == cli::kExitInvalidInput);
  CHECK(run({"combine", data("example.json"), "--inputs", "D1,Nope"}).code == cli::kExitInvalidInput);
  CHECK(run({"combine", data("example.json"), "--inputs", "D1"}).code == cli::kExitInvalidInput);
  CHECK(run({"combine", data("example.json"), "--inputs", "D1,D4", "--delta", "1.5"}).code == cli::kExitInvalidInput);
  CHECK(run({"combine", bad("no_delta.json"), "--inputs", "P,Q"}).code == cli::kExitInvalidInput);
  CHECK(run({"dx-curve", "--q1", "0.5", "--q2", "0.5", "--k1", "0.9"}).code == cli::kExitInvalidInput);
}

TEST_CASE("domain errors and budget") {
  CHECK(run({"combine", bad("conflict.json"), "--inputs", "A,B"}).code == cli::kExitDomainError);
  CHECK(run({"combine", data("example.json"), "--inputs", "D1,D4", "--rule", "dempster"}).code ==
        cli::kExitDomainError);
  CHECK(run({"combine", bad("budget.json"), "--inputs", "D1,D2,D3,D4,D5,D6,D7"}).code == cli::kExitBudget);
}

TEST_CASE("rank and dx-curve") {
  const auto r = run({"rank", data("example.json")});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "-0.36"));
  const auto c = run({"dx-curve", "--q1", "0.7", "--q2", "0.8", "--k1", "0.1", "--delta-steps", "4"});
  CHECK(c.code == 0);
  CHECK(contains(c.out, "P4"));
}

TEST_CASE("round12") {
  CHECK(cli::round12(0.1 + 0.2) == 0.3);
  CHECK(!std::signbit(cli::round12(-0.0)));
}
