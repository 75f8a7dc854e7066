#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "divalg/algebra.hpp"
#include "divalg/algebra_io.hpp"
#include "divalg/fixtures.hpp"
#include "support.hpp"

using namespace divalg;
using testing_support::raw;

namespace {

FiniteUnarySemigroup z2() {
  return validate_unary_semigroup({{0, 1}, {1, 0}}, {0, 1});
}

FiniteUnarySemigroup left_zero() {
  return validate_unary_semigroup({{0, 0}, {1, 1}}, {0, 1});
}

}  // namespace

TEST_SUITE("algebra") {

TEST_CASE("validation reports the offending cell") {
  try {
    validate_semigroup({{0, 1}, {2, 0}});
    FAIL("accepted an out-of-range entry");
  } catch (OutOfRangeEntry const& e) {
    CHECK(e.table() == "mul");
    CHECK(e.row() == 1);
    CHECK(e.col() == 0);
  }
  CHECK_THROWS_AS(validate_semigroup({{0, 1}, {1}}), ShapeError);
  CHECK_THROWS_AS(validate_semigroup({}), ShapeError);
  CHECK_THROWS_AS(validate_unary_semigroup({{0, 1}, {1, 0}}, {0}), ShapeError);
  CHECK_THROWS_AS(validate_unary_semigroup({{0, 1}, {1, 0}}, {0, 2}), OutOfRangeEntry);
  CHECK_THROWS_AS(validate_bimagma({{0}}, {{0, 0}, {0, 0}}), ShapeError);
  CHECK_THROWS_AS(validate_bimagma({{0, -1}, {0, 0}}, {{0, 0}, {0, 0}}), OutOfRangeEntry);
}

TEST_CASE("non-associative triple is the lexicographically first") {
  // x*y = 1-y: (0*0)*0 = 1, 0*(0*0) = 0.
  try {
    validate_semigroup({{1, 0}, {1, 0}});
    FAIL("accepted a non-associative table");
  } catch (NonAssociative const& e) {
    CHECK(int(e.i()) == 0);
    CHECK(int(e.j()) == 0);
    CHECK(int(e.k()) == 0);
  }
}

TEST_CASE("validation agrees with a direct triple scan on every 2-element table") {
  int accepted = 0;
  oracle::each_table(2, [&](oracle::Cells const& t) {
    std::vector<std::vector<long long>> rows{{t[0], t[1]}, {t[2], t[3]}};
    bool const assoc = oracle::associative(2, t);
    bool ok = true;
    try {
      validate_semigroup(rows);
    } catch (NonAssociative const&) {
      ok = false;
    }
    CHECK(ok == assoc);
    accepted += ok;
  });
  CHECK(accepted == 8);
}

TEST_CASE("is_idempotent reads the diagonal") {
  CHECK(is_idempotent(z2(), 0));
  CHECK_FALSE(is_idempotent(z2(), 1));
  auto const band = std::get<FiniteUnarySemigroup>(load_fixture("band4").algebra);
  for (Element e = 0; e < band.size(); ++e) {
    CHECK(is_idempotent(band, e));
    CHECK(is_idempotent(band, e) == (band.mul(e, e) == e));
  }
}

TEST_CASE("canonical forms") {
  auto const one = validate_bimagma({{0}}, {{0}});
  auto const one_sg = validate_unary_semigroup({{0}}, {0});
  CHECK(canonical_form(one).size == 1);
  CHECK(canonical_form(one) == canonical_form(relabel(one, std::vector<Element>{0})));
  CHECK_FALSE(canonical_form(one) == canonical_form(one_sg));

  std::vector<Element> const swap{1, 0};
  CHECK(canonical_form(z2()) == canonical_form(relabel(z2(), swap)));
  CHECK_FALSE(canonical_form(z2()) == canonical_form(left_zero()));
  CHECK(isomorphic(z2(), relabel(z2(), swap)));
  CHECK_FALSE(isomorphic(z2(), left_zero()));
}

TEST_CASE("canonical form is invariant under every relabeling of each fixture") {
  for (auto const& id : fixture_ids()) {
    auto const a = load_fixture(id).algebra;
    auto const n = size_of(a);
    if (n > 4) {
      continue;
    }
    std::vector<Element> p(n);
    std::iota(p.begin(), p.end(), Element{0});
    auto const c = canonical_form(a);
    do {
      CHECK_MESSAGE(canonical_form(relabel(a, p)) == c, id);
    } while (std::next_permutation(p.begin(), p.end()));
    CHECK(from_canonical(c) == from_canonical(canonical_form(from_canonical(c))));
    CHECK(isomorphic(from_canonical(c), a));
  }
}

TEST_CASE("canonical form agrees with the reference canonicalizer on classes") {
  // Two semigroups share a library form iff they share a reference form.
  for (int n = 1; n <= 3; ++n) {
    std::map<CanonicalForm, oracle::Raw> by_lib;
    std::map<CanonicalForm, oracle::Raw> by_lib_anti;
    for (auto const& s : oracle::semigroups(n)) {
      Algebra const a = testing_support::algebra(s);
      auto [it, fresh] = by_lib.emplace(canonical_form(a), oracle::canon(s));
      if (!fresh) {
        CHECK(it->second == oracle::canon(s));
      }
      auto [jt, fresh2] = by_lib_anti.emplace(canonical_form_up_to_anti(a), oracle::canon_anti(s));
      if (!fresh2) {
        CHECK(jt->second == oracle::canon_anti(s));
      }
    }
    auto const counts = oracle::semigroup_counts(n);
    CHECK(by_lib.size() == counts.iso);
    CHECK(by_lib_anti.size() == counts.anti);
  }
}

TEST_CASE("anti is an involution and matches the opposite structure") {
  for (auto const& id : fixture_ids()) {
    auto const a = load_fixture(id).algebra;
    CHECK(anti(anti(a)) == a);
    CHECK(raw(anti(a)) == oracle::opposite(raw(a)));
  }
}

TEST_CASE("text format round-trips") {
  std::string const text =
      "# a comment\n"
      "unary_semigroup 2\n"
      "0 1   # trailing comment\n"
      "\n"
      "1 0\n"
      "inv: 0 1\n";
  auto const a = parse_algebra(text);
  CHECK(a == Algebra(z2()));
  auto const out = write_algebra(a);
  CHECK(parse_algebra(out) == a);
  CHECK(write_algebra(parse_algebra(out)) == out);

  auto const b = validate_bimagma({{0, 1}, {0, 1}}, {{1, 1}, {1, 1}});
  CHECK(parse_algebra(write_algebra(b)) == Algebra(b));
  auto const s = validate_semigroup({{0, 0}, {0, 1}});
  CHECK(parse_algebra(write_algebra(s)) == Algebra(s));
}

TEST_CASE("format errors carry a line number") {
  auto line_of = [](std::string const& text) -> std::size_t {
    try {
      parse_algebra(text);
    } catch (FormatError const& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("") == 1);
  CHECK(line_of("magma 2\n0 1\n1 0\n") == 1);
  CHECK(line_of("semigroup 2\n0 1\n1 x\n") == 3);
  CHECK(line_of("semigroup 2\n0 1\n") > 0);
  CHECK(line_of("unary_semigroup 2\n0 1\n1 0\n") > 0);
  CHECK_THROWS_AS(parse_algebra("semigroup 2\n0 5\n1 0\n"), AlgebraError);
}

}
