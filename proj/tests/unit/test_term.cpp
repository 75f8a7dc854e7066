#include <doctest.h>

#include "divalg/fixtures.hpp"
#include "divalg/functors.hpp"
#include "divalg/registry.hpp"
#include "divalg/term.hpp"
#include "support.hpp"

using namespace divalg;
using testing_support::raw;

namespace {

Algebra z2() {
  return validate_unary_semigroup({{0, 1}, {1, 0}}, {0, 1});
}

Assignment env(std::initializer_list<std::pair<char, Element>> vs) {
  Assignment a;
  for (auto [v, e] : vs) {
    a.set(v, e);
  }
  return a;
}

}  // namespace

TEST_SUITE("term") {

TEST_CASE("parsing displayed identities") {
  auto const b1 = parse_identity("(x\\y)/z = x\\(y/z)");
  CHECK(b1.side == Side::bimagma);
  CHECK(alpha_equivalent(b1, Registry::builtin().at("B1")));
  auto const b2 = parse_identity("x/y' = x'\\y");
  CHECK(alpha_equivalent(b2, Registry::builtin().at("B2")));
  CHECK(parse_identity("x*y = y*x").side == Side::semigroup);
  CHECK(parse_identity("x'' = x").side == Side::semigroup);
  CHECK(parse_identity("(x*y)' = y/x").side == Side::mixed);

  auto const triv = parse_identity("x = x");
  CHECK(triv.lhs == triv.rhs);
  CHECK(holds(triv, z2()));
  CHECK(holds(triv, load_fixture("indep-not-ir4").algebra));
}

TEST_CASE("syntax errors and ambiguity") {
  CHECK_THROWS_AS(parse_term("x\\y/z"), AmbiguousTerm);
  CHECK_THROWS_AS(parse_term("x*y/z"), AmbiguousTerm);
  CHECK_NOTHROW(parse_term("x*y*z"));
  CHECK(parse_term("x*y*z") == parse_term("(x*y)*z"));
  CHECK_THROWS_AS(parse_identity("x = "), SyntaxError);
  CHECK_THROWS_AS(parse_identity("x y = x"), SyntaxError);
  CHECK_THROWS_AS(parse_identity("X = x"), SyntaxError);
  try {
    parse_term("(x\\y");
    FAIL("accepted an unclosed parenthesis");
  } catch (SyntaxError const& e) {
    CHECK(e.position() == 4);
    CHECK_FALSE(e.expected().empty());
  }
}

TEST_CASE("printing round-trips through the parser") {
  for (auto const& e : Registry::builtin().entries()) {
    auto const& id = e.identity;
    CHECK_MESSAGE(parse_term(id.lhs.to_string()) == id.lhs, id.name);
    CHECK_MESSAGE(parse_term(id.rhs.to_string()) == id.rhs, id.name);
    CHECK(alpha_equivalent(parse_identity(id.to_string()), id));
  }
}

TEST_CASE("positions, replacement and matching") {
  auto const t = parse_term("(x\\y)/z'");
  CHECK(positions(t).size() == t.node_count());
  CHECK(subterm_at(t, {0, 1}) == parse_term("y"));
  CHECK(subterm_at(t, {1}) == parse_term("z'"));
  CHECK_THROWS_AS(subterm_at(t, {2}), PositionError);
  CHECK_THROWS_AS(subterm_at(t, {0, 0, 0}), PositionError);
  CHECK(replace_at(t, {0}, parse_term("w")) == parse_term("w/z'"));
  CHECK(to_string(Position{}) == "root");

  Substitution s;
  REQUIRE(match(parse_term("(a\\b)/c"), t, s));
  CHECK(s.at('a') == parse_term("x"));
  CHECK(s.at('c') == parse_term("z'"));
  CHECK(instantiate(parse_term("a\\(b/c)"), s) == parse_term("x\\(y/z')"));
  Substitution s2;
  CHECK_FALSE(match(parse_term("a/a"), parse_term("x/y"), s2));
}

TEST_CASE("evaluation on the division bimagma of Z2") {
  auto const b = to_division_bimagma(std::get<FiniteUnarySemigroup>(z2()));
  CHECK(eval_term(parse_term("x\\y"), b, env({{'x', 1}, {'y', 1}})) == 0);
  CHECK(eval_term(parse_term("x\\y"), z2(), env({{'x', 1}, {'y', 1}})) == 0);
  CHECK_THROWS_AS(eval_term(parse_term("x*y"), b, env({{'x', 0}, {'y', 0}})),
                  SignatureMismatch);
  CHECK_THROWS_AS(eval_term(parse_term("x\\y"), z2(), env({{'x', 0}})), UnboundVariable);
  CHECK_THROWS_AS(check_signature(parse_identity("x*y = y*x"), b), SignatureMismatch);
}

TEST_CASE("prime on a bimagma expands per the chosen reading") {
  for (auto const& id : fixture_ids()) {
    auto const a = load_fixture(id).algebra;
    auto const* b = std::get_if<FiniteBimagma>(&a);
    if (!b) {
      continue;
    }
    for (Element i = 0; i < b->size(); ++i) {
      auto const e = env({{'x', i}});
      CHECK(eval_term(parse_term("x'"), a, e) == b->rd(b->ld(i, i), i));
      CHECK(eval_term(parse_term("x'"), a, e, PrimeExpansion::right) ==
            b->ld(i, b->rd(i, i)));
    }
  }
}

TEST_CASE("evaluation of a composite term is a double table lookup") {
  auto const a = load_fixture("indep-not-B1").algebra;
  auto const& b = std::get<FiniteBimagma>(a);
  auto const t = parse_term("(x/y)\\z");
  for (Element x = 0; x < 3; ++x) {
    for (Element y = 0; y < 3; ++y) {
      for (Element z = 0; z < 3; ++z) {
        CHECK(eval_term(t, a, env({{'x', x}, {'y', y}, {'z', z}})) == b.ld(b.rd(x, y), z));
      }
    }
  }
}

TEST_CASE("evaluation is compositional") {
  // Replacing a subterm by a fresh variable bound to its value changes nothing.
  std::vector<Algebra> algebras;
  for (auto const& id : fixture_ids()) {
    algebras.push_back(load_fixture(id).algebra);
  }
  for (auto const& e : Registry::builtin().entries()) {
    for (auto const& a : algebras) {
      for (Term const& t : {e.identity.lhs, e.identity.rhs}) {
        try {
          check_signature({"", t, t, Side::mixed}, a);
        } catch (SignatureMismatch const&) {
          continue;
        }
        auto const n = Element(size_of(a));
        Assignment as = env({{'x', Element(1 % n)}, {'y', 0}, {'z', Element(2 % n)},
                             {'e', Element(1 % n)}});
        auto const whole = eval_term(t, a, as);
        for (auto const& p : positions(t)) {
          Assignment bs = as;
          bs.set('w', eval_term(subterm_at(t, p), a, as));
          CHECK(eval_term(replace_at(t, p, Term::variable('w')), a, bs) == whole);
        }
      }
    }
  }
}

TEST_CASE("holds agrees with find_violation and with hand-written laws") {
  auto const& reg = Registry::builtin();
  for (auto const& id : fixture_ids()) {
    auto const f = load_fixture(id);
    bool const sg = kind_of(f.algebra) == AlgebraKind::unary_semigroup;
    for (auto const& [name, entry] : oracle::laws()) {
      if (!sg && !entry.bimagma) {
        continue;
      }
      for (auto mode : {PrimeExpansion::left, PrimeExpansion::right}) {
        auto const& idn = reg.at(name);
        bool const h = holds(idn, f.algebra, mode);
        auto const v = find_violation(idn, f.algebra, mode);
        CHECK(h == !v);
        bool const expect = oracle::holds(name, raw(f.algebra), sg, mode == PrimeExpansion::right);
        CHECK_MESSAGE(h == expect, id << " " << name);
        if (v) {
          CHECK(eval_term(idn.lhs, f.algebra, *v, mode) != eval_term(idn.rhs, f.algebra, *v, mode));
        }
      }
    }
  }
}

TEST_CASE("violations are the lexicographically first assignment") {
  auto const a = load_fixture("einv-not-B1").algebra;
  auto const v = find_violation(Registry::builtin().at("B1"), a);
  REQUIRE(v);
  auto const& b = std::get<FiniteBimagma>(a);
  bool found = false;
  for (Element x = 0; x < 3 && !found; ++x) {
    for (Element y = 0; y < 3 && !found; ++y) {
      for (Element z = 0; z < 3 && !found; ++z) {
        if (b.rd(b.ld(x, y), z) != b.ld(x, b.rd(y, z))) {
          CHECK(*v == env({{'x', x}, {'y', y}, {'z', z}}));
          found = true;
        }
      }
    }
  }
  CHECK(found);
  CHECK_FALSE(holds(Registry::builtin().at("comp2"), load_fixture("einv-not-comp2").algebra));
}

TEST_CASE("the two readings of ' agree on every bimagma with B1") {
  for (int n = 1; n <= 2; ++n) {
    for (auto const& r : oracle::models({false, {"B1"}, ""}, n)) {
      auto const a = testing_support::algebra(r);
      for (Element i = 0; i < n; ++i) {
        auto const e = env({{'x', i}});
        CHECK(eval_term(parse_term("x'"), a, e) ==
              eval_term(parse_term("x'"), a, e, PrimeExpansion::right));
      }
    }
  }
}

TEST_CASE("lowering preserves meaning") {
  auto const& reg = Registry::builtin();
  auto const band = load_fixture("band4").algebra;
  auto const b = load_fixture("cliffindep-not-B1").algebra;
  for (auto const& e : reg.entries()) {
    auto const& id = e.identity;
    Identity lowered{id.name, lower_for_unary_semigroup(id.lhs),
                     lower_for_unary_semigroup(id.rhs), Side::semigroup};
    CHECK_FALSE(lowered.lhs.contains(Op::ld));
    CHECK_FALSE(lowered.rhs.contains(Op::rd));
    CHECK(holds(lowered, band) == holds(id, band));
    if (id.lhs.contains(Op::mul) || id.rhs.contains(Op::mul)) {
      continue;
    }
    for (auto mode : {PrimeExpansion::left, PrimeExpansion::right}) {
      Identity lb{id.name, lower_for_bimagma(id.lhs, mode), lower_for_bimagma(id.rhs, mode),
                  Side::bimagma};
      CHECK_FALSE(lb.lhs.contains(Op::inv));
      CHECK(holds(lb, b) == holds(id, b, mode));
    }
  }
}

}
