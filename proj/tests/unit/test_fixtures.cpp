#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "divalg/fixtures.hpp"
#include "support.hpp"

using namespace divalg;
using testing_support::raw;

namespace {

std::string slurp(std::string const& path) {
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string const two_elt = "bimagma 2\n0 1\n0 1\n1 1\n1 1\n";

}  // namespace

TEST_SUITE("fixtures") {

TEST_CASE("inventory") {
  std::vector<std::string> const ids = {
      "band4",
      "cliffindep-not-B1", "cliffindep-not-B2", "cliffindep-not-B3", "cliffindep-not-cr4",
      "cliffindep-not-invcase",
      "einv-not-B1", "einv-not-comp1", "einv-not-comp2",
      "indep-not-B1", "indep-not-B2", "indep-not-B3", "indep-not-ir4", "indep-not-reginv1",
      "reg-not-B1", "reg-not-B2", "reg-not-reg2",
      "str-not-B1", "str-not-B2", "str-not-B3", "str-not-str3"};
  CHECK(fixture_ids() == ids);
  for (auto const& id : ids) {
    auto const f = load_fixture(id);
    CHECK_FALSE(f.provenance.empty());
    CHECK_FALSE(f.expected.empty());
  }
  CHECK(size_of(load_fixture("cliffindep-not-cr4").algebra) == 5);
  CHECK(size_of(load_fixture("indep-not-ir4").algebra) == 4);
  CHECK(kind_of(load_fixture("band4").algebra) == AlgebraKind::unary_semigroup);
  CHECK_THROWS_AS(load_fixture("no-such-model"), UnknownFixture);
}

TEST_CASE("every fixture verifies") {
  auto const rep = verify_all_fixtures();
  CHECK(rep.results.size() == 21);
  for (auto const& r : rep.results) {
    CHECK_MESSAGE(r.ok(), r.to_string());
    CHECK(r.roundtrip);
  }
  CHECK(rep.seconds < 1.0);
}

TEST_CASE("recorded values agree with the reference laws") {
  for (auto const& id : fixture_ids()) {
    auto const f = load_fixture(id);
    bool const sg = kind_of(f.algebra) == AlgebraKind::unary_semigroup;
    bool const right = f.reading == PrimeExpansion::right;
    auto const r = raw(f.algebra);
    for (auto const& [name, v] : f.expected) {
      CHECK_MESSAGE(oracle::holds(name, r, sg, right) == v, id << " expected " << name);
    }
    for (auto const& [name, v] : f.observed) {
      CHECK_MESSAGE(oracle::holds(name, r, sg, right) == v, id << " observed " << name);
    }
    for (auto const& [name, v] : f.discrepancy) {
      CHECK_MESSAGE(oracle::holds(name, r, sg, right) == !v, id << " discrepancy " << name);
    }
  }
}

TEST_CASE("known discrepancies and readings") {
  auto const band = load_fixture("band4");
  CHECK(band.discrepancy == std::map<std::string, bool>{{"I4a", true}, {"I4b", true}});
  CHECK(band.observed.at("I3") == false);
  auto const reg = load_fixture("reg-not-B1");
  CHECK(reg.discrepancy.at("B1") == false);
  CHECK(reg.expected.at("reg2") == true);
  CHECK(load_fixture("cliffindep-not-B1").reading == PrimeExpansion::right);
  auto const r = verify_fixture(load_fixture("cliffindep-not-B1"));
  CHECK_FALSE(r.prime_flips.empty());
  CHECK(verify_fixture(band).confirmed_discrepancies ==
        std::vector<std::string>{"I4a", "I4b"});
}

TEST_CASE("the inline witnesses of the basis theorems") {
  auto const& reg = Registry::builtin();
  auto const e = load_fixture("einv-not-comp2").algebra;
  CHECK(holds(reg.at("B1"), e));
  CHECK(holds(reg.at("comp1"), e));
  CHECK_FALSE(holds(reg.at("comp2"), e));
  // Its opposite swaps the roles of comp1 and comp2.
  auto const op = load_fixture("einv-not-comp1").algebra;
  CHECK(isomorphic(anti(e), op));
  CHECK_FALSE(holds(reg.at("B1"), load_fixture("einv-not-B1").algebra));
  CHECK(isomorphic(anti(load_fixture("str-not-str3").algebra),
                   load_fixture("str-not-B3").algebra));
}

TEST_CASE("expect files parse strictly") {
  CHECK_NOTHROW(parse_fixture("t", two_elt, "[expected]\nB1=true\n"));
  CHECK_THROWS_AS(parse_fixture("t", two_elt, "[expected]\nB9=true\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_fixture("t", two_elt, "[expected]\nB1=true\n[observed]\nB1=false\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_fixture("t", two_elt, "[expected]\nB1=yes\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_fixture("t", two_elt, "B1=true\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_fixture("t", two_elt, "# prime: middle\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_fixture("t", "bimagma 2\n0 1\n", ""), FormatError);
}

TEST_CASE("an unrecorded readable identity is a mismatch") {
  auto f = parse_fixture("t", two_elt, "[expected]\nB1=true\n");
  auto r = verify_fixture(f);
  CHECK_FALSE(r.ok());
  record_observed(f);
  r = verify_fixture(f);
  CHECK_MESSAGE(r.ok(), r.to_string());
  CHECK_FALSE(f.observed.count("B1"));
  f.expected["comp2"] = true;
  f.observed.erase("comp2");
  r = verify_fixture(f);
  REQUIRE(r.mismatches.size() == 1);
  CHECK(r.mismatches[0].identity == "comp2");
  CHECK(r.mismatches[0].witness.has_value());
}

TEST_CASE("write_expect reproduces the shipped files") {
  for (auto const& id : fixture_ids()) {
    auto const f = load_fixture(id);
    auto const text = write_expect(f);
    CHECK_MESSAGE(text == slurp(default_fixture_dir() + "/" + id + ".expect"), id);
    auto const g = parse_fixture(id, f.source, text);
    CHECK(g.expected == f.expected);
    CHECK(g.discrepancy == f.discrepancy);
    CHECK(g.observed == f.observed);
    CHECK(g.notes == f.notes);
    CHECK(g.reading == f.reading);
  }
}

TEST_CASE("independence specs") {
  auto const s = independence_spec(load_fixture("einv-not-comp2"));
  REQUIRE(s);
  CHECK(s->require == std::vector<std::string>{"B1", "comp1"});
  CHECK(s->forbid == "comp2");
  CHECK(s->size == 2);
  CHECK_FALSE(independence_spec(load_fixture("band4")));
  CHECK_FALSE(independence_spec(load_fixture("reg-not-B1")));
}

TEST_CASE("small witnesses are rediscovered") {
  SearchOptions o;
  o.workers = 1;
  for (auto const& id : fixture_ids()) {
    auto const f = load_fixture(id);
    if (!independence_spec(f) || size_of(f.algebra) > 3) {
      continue;
    }
    auto const r = rediscover(f, size_of(f.algebra) - 1, o);
    CHECK_MESSAGE(r.found, r.to_string());
  }
}

}
