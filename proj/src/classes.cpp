#include "divalg/classes.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "divalg/algebra_io.hpp"
#include "divalg/functors.hpp"

namespace divalg {

std::vector<ClassSpec> const& class_table() {
  static std::vector<ClassSpec> const table = {
      {"e-inversive-tech", {"I1", "tech-left", "tech-right"}, {"B1", "comp1", "comp2"}},
      {"regular-I3", {"I1", "I2", "I3"}, {"B1", "B2", "reg2"}},
      {"regular-involuted", {"I1", "I2", "I3", "I6"}, {"B1", "B2", "B3", "reginv1"}},
      {"regular-involuted-I5",
       {"I1", "I2", "I3", "I6", "I5"},
       {"B1", "B2", "B3", "reginv1", "ir4"}},
      {"inverse", {"I1", "I2", "I3", "I6", "I8"}, {"B1", "B2", "B3", "invcase"}},
      {"completely-regular", {"I1", "I2", "I7"}, {"B1", "B2", "B3", "cr4"}},
      {"clifford",
       {"I1", "I2", "I7", "I3", "I6", "I8"},
       {"B1", "B2", "B3", "cr4", "invcase"}},
      {"regular-I3-I4", {"I1", "I2", "I3", "I4a", "I4b"}, {"B1", "B2", "B3", "str3"}},
      {"regular-I3-I5", {"I1", "I2", "I3", "I5"}, {"B1", "B2", "B3", "ir4"}},
      {"tamura-regular-involuted", {"I1", "I2", "I3", "I6"}, {"T1", "T2", "T3"}},
      {"tamura-inverse", {"I1", "I2", "I3", "I6", "I8"}, {"T1", "T2", "T3", "T5"}},
      {"group", {}, {"T1", "KS2"}, true},
  };
  return table;
}

ClassSpec const& find_class(std::string const& name) {
  for (auto const& c : class_table()) {
    if (c.name == name) {
      return c;
    }
  }
  throw std::invalid_argument("unknown class '" + name + "'");
}

std::optional<bool> Profile::get(std::string const& name) const {
  for (auto const& v : identities) {
    if (v.name == name) {
      return v.holds;
    }
  }
  for (auto const& [n, b] : classes) {
    if (n == name) {
      return b;
    }
  }
  return std::nullopt;
}

std::string Profile::to_string() const {
  std::ostringstream os;
  for (auto const& v : identities) {
    os << v.name << '=' << (v.holds ? "true" : "false");
    if (v.witness) {
      os << "  # fails at " << v.witness->to_string();
    }
    os << '\n';
  }
  for (auto const& [name, b] : classes) {
    os << "class " << name << '=' << (b ? "true" : "false") << '\n';
  }
  return os.str();
}

namespace {

bool readable(Identity const& id, Algebra const& a) {
  try {
    check_signature(id, a);
    return true;
  } catch (SignatureMismatch const&) {
    return false;
  }
}

bool all_hold(Algebra const& a, Registry const& reg,
              std::vector<std::string> const& names, PrimeExpansion mode) {
  return std::all_of(names.begin(), names.end(), [&](std::string const& n) {
    return holds(reg.at(n), a, mode);
  });
}

}  // namespace

Profile classify(Algebra const& a, Registry const& reg, PrimeExpansion mode) {
  Profile p;
  for (auto const& e : reg.entries()) {
    if (e.definition || !readable(e.identity, a)) {
      continue;
    }
    auto w = find_violation(e.identity, a, mode);
    p.identities.push_back({e.identity.name, !w, w});
  }
  if (auto const* s = std::get_if<FiniteUnarySemigroup>(&a)) {
    for (auto const& c : class_table()) {
      p.classes.emplace_back(c.name, in_semigroup_class(*s, c, reg));
    }
  } else if (auto const* b = std::get_if<FiniteBimagma>(&a)) {
    for (auto const& c : class_table()) {
      p.classes.emplace_back(c.name, all_hold(a, reg, c.bimagma_axioms, mode));
    }
    (void)b;
  }
  return p;
}

Profile classify_semigroup(FiniteUnarySemigroup const& s, Registry const& reg) {
  return classify(Algebra(s), reg);
}

Profile classify_bimagma(FiniteBimagma const& b, Registry const& reg,
                         PrimeExpansion mode) {
  return classify(Algebra(b), reg, mode);
}

bool satisfies_all(Algebra const& a, std::vector<Identity> const& ids) {
  return std::all_of(ids.begin(), ids.end(),
                     [&](Identity const& id) { return holds(id, a); });
}

bool in_semigroup_class(FiniteUnarySemigroup const& s, ClassSpec const& c,
                        Registry const& reg) {
  if (c.group) {
    return is_group(s);
  }
  return all_hold(Algebra(s), reg, c.semigroup_axioms, PrimeExpansion::left);
}

bool in_bimagma_class(FiniteBimagma const& b, ClassSpec const& c,
                      Registry const& reg) {
  return all_hold(Algebra(b), reg, c.bimagma_axioms, PrimeExpansion::left);
}

bool is_group(FiniteUnarySemigroup const& s) {
  std::size_t const n = s.size();
  for (std::size_t e = 0; e < n; ++e) {
    bool unit = true;
    for (std::size_t x = 0; x < n && unit; ++x) {
      unit = s.mul(Element(e), Element(x)) == x && s.mul(Element(x), Element(e)) == x;
    }
    if (!unit) {
      continue;
    }
    for (std::size_t x = 0; x < n; ++x) {
      auto xi = s.inv(Element(x));
      if (s.mul(xi, Element(x)) != e || s.mul(Element(x), xi) != e) {
        return false;
      }
    }
    return true;
  }
  return false;
}

bool fixes_idempotents(FiniteUnarySemigroup const& s) {
  for (std::size_t e = 0; e < s.size(); ++e) {
    if (is_idempotent(s, Element(e)) && s.inv(Element(e)) != e) {
      return false;
    }
  }
  return true;
}

std::string describe(Algebra const& a) {
  auto text = write_algebra(a);
  std::replace(text.begin(), text.end(), '\n', ';');
  if (!text.empty() && text.back() == ';') {
    text.pop_back();
  }
  return text;
}

std::string SweepReport::summary() const {
  std::ostringstream os;
  os << name << " n<=" << bound << ": " << checked << " checked, "
     << counterexamples.size() << " counterexamples";
  if (!counterexamples.empty()) {
    os << "; first: " << counterexamples.front();
  }
  return os.str();
}

std::string EquivalenceReport::summary() const {
  std::ostringstream os;
  os << class_name << " n<=" << bound << ": forward " << forward_checked
     << ", converse " << converse_checked << ", " << counterexamples.size()
     << " counterexamples";
  if (!counterexamples.empty()) {
    os << "; first: " << counterexamples.front();
  }
  return os.str();
}

namespace {

// Labeled models of every size 1..n.
template <typename F>
void for_each_model(AlgebraKind kind, std::size_t n,
                    std::vector<Identity> const& require,
                    SearchOptions const& options, F&& f) {
  for (std::size_t s = 1; s <= n; ++s) {
    auto r = enumerate_models(kind, s, require, std::nullopt, Dedup::none, options);
    for (auto const& m : r.models) {
      f(m);
    }
  }
}

}  // namespace

EquivalenceReport check_equivalence(ClassSpec const& c, std::size_t n,
                                    SearchOptions const& options,
                                    Registry const& reg) {
  EquivalenceReport rep;
  rep.class_name = c.name;
  rep.bound = n;
  auto const basis = reg.resolve(c.bimagma_axioms);

  for_each_model(
      AlgebraKind::unary_semigroup, n, reg.resolve(c.semigroup_axioms), options,
      [&](Algebra const& a) {
        auto const& s = std::get<FiniteUnarySemigroup>(a);
        if (c.group && !is_group(s)) {
          return;
        }
        ++rep.forward_checked;
        auto b = to_division_bimagma(s);
        for (auto const& id : basis) {
          if (auto w = find_violation(id, Algebra(b))) {
            rep.counterexamples.push_back("forward: " + describe(a) + " violates " +
                                          id.name + " at " + w->to_string());
            return;
          }
        }
        if (!roundtrip_check(s)) {
          rep.counterexamples.push_back("forward roundtrip: " + describe(a));
        }
      });

  for_each_model(AlgebraKind::bimagma, n, basis, options, [&](Algebra const& a) {
    auto const& b = std::get<FiniteBimagma>(a);
    ++rep.converse_checked;
    auto r = try_to_unary_semigroup(b);
    if (!r.semigroup) {
      rep.counterexamples.push_back("converse: " + describe(a) + ": " +
                                    r.report.to_string());
      return;
    }
    if (!in_semigroup_class(*r.semigroup, c, reg)) {
      rep.counterexamples.push_back("converse: " + describe(a) +
                                    " reconstructs outside the class");
      return;
    }
    if (!(to_division_bimagma(*r.semigroup) == b)) {
      rep.counterexamples.push_back("converse roundtrip: " + describe(a));
    }
  });
  return rep;
}

SweepReport check_semigroup_roundtrip(std::size_t n, SearchOptions const& options) {
  auto const& reg = Registry::builtin();
  SweepReport rep{"semigroup-roundtrip", n, 0, {}};
  for_each_model(AlgebraKind::unary_semigroup, n,
                 reg.resolve({"I1", "tech-left", "tech-right"}), options,
                 [&](Algebra const& a) {
                   ++rep.checked;
                   if (!roundtrip_check(std::get<FiniteUnarySemigroup>(a))) {
                     rep.counterexamples.push_back(describe(a));
                   }
                 });
  return rep;
}

SweepReport check_bimagma_roundtrip(std::size_t n, SearchOptions const& options) {
  auto const& reg = Registry::builtin();
  SweepReport rep{"bimagma-roundtrip", n, 0, {}};
  for_each_model(AlgebraKind::bimagma, n, reg.resolve({"B1", "comp1", "comp2"}), options,
                 [&](Algebra const& a) {
                   ++rep.checked;
                   auto const& b = std::get<FiniteBimagma>(a);
                   auto r = try_to_unary_semigroup(b);
                   if (!r.semigroup) {
                     rep.counterexamples.push_back(describe(a) + ": " +
                                                   r.report.to_string());
                   } else if (!(to_division_bimagma(*r.semigroup) == b)) {
                     rep.counterexamples.push_back(describe(a));
                   }
                 });
  return rep;
}

SweepReport check_doubleprime_lemma(std::size_t n, SearchOptions const& options) {
  auto const& reg = Registry::builtin();
  SweepReport rep{"doubleprime", n, 0, {}};
  auto const i2 = reg.at("I2");
  auto const i3 = reg.at("I3");
  for_each_model(AlgebraKind::unary_semigroup, n,
                 reg.resolve({"I1", "tech-left", "tech-right"}), options,
                 [&](Algebra const& a) {
                   ++rep.checked;
                   if (holds(i3, a) != holds(i2, a)) {
                     rep.counterexamples.push_back(describe(a));
                   }
                 });
  return rep;
}

SweepReport check_inverse_sufficiency(std::size_t n, SearchOptions const& options) {
  auto const& reg = Registry::builtin();
  SweepReport rep{"inverse-sufficiency", n, 0, {}};
  auto const goals = reg.resolve({"I1", "I6"});
  for_each_model(AlgebraKind::unary_semigroup, n, reg.resolve({"I2", "I3", "I8"}),
                 options, [&](Algebra const& a) {
                   ++rep.checked;
                   if (!satisfies_all(a, goals)) {
                     rep.counterexamples.push_back(describe(a));
                   }
                 });
  return rep;
}

SweepReport check_idempotent_fixing(std::size_t n, SearchOptions const& options) {
  auto const& reg = Registry::builtin();
  SweepReport rep{"idempotent-fixing", n, 0, {}};
  auto const i5 = reg.at("I5");
  for_each_model(AlgebraKind::unary_semigroup, n, reg.resolve({"I1", "I2"}), options,
                 [&](Algebra const& a) {
                   ++rep.checked;
                   auto const& s = std::get<FiniteUnarySemigroup>(a);
                   if (holds(i5, a) != fixes_idempotents(s)) {
                     rep.counterexamples.push_back(describe(a));
                   }
                 });
  return rep;
}

SweepReport check_hierarchy(std::size_t n, SearchOptions const& options) {
  SweepReport rep{"hierarchy", n, 0, {}};
  auto const& reg = Registry::builtin();
  // (stronger, weaker) pairs.
  std::vector<std::pair<std::string, std::string>> const implications = {
      {"clifford", "inverse"},
      {"clifford", "completely-regular"},
      {"inverse", "regular-involuted"},
      {"completely-regular", "regular-I3"},
      {"regular-involuted", "regular-I3"},
      {"regular-I3", "e-inversive-tech"},
      {"group", "clifford"},
  };
  for_each_model(AlgebraKind::unary_semigroup, n, {}, options, [&](Algebra const& a) {
    ++rep.checked;
    auto const& s = std::get<FiniteUnarySemigroup>(a);
    for (auto const& [strong, weak] : implications) {
      if (in_semigroup_class(s, find_class(strong), reg) &&
          !in_semigroup_class(s, find_class(weak), reg)) {
        rep.counterexamples.push_back(strong + " but not " + weak + ": " + describe(a));
      }
    }
  });
  return rep;
}

SweepReport check_tamura_basis(std::size_t n, SearchOptions const& options) {
  auto const& reg = Registry::builtin();
  SweepReport rep{"tamura-basis", n, 0, {}};
  for (std::size_t s = 1; s <= n; ++s) {
    auto t = enumerate_models(AlgebraKind::bimagma, s, reg.resolve({"T1", "T2", "T3"}),
                              std::nullopt, Dedup::none, options);
    auto b = enumerate_models(AlgebraKind::bimagma, s,
                              reg.resolve({"B1", "B2", "B3", "reginv1"}),
                              std::nullopt, Dedup::none, options);
    rep.checked += t.models.size() + b.models.size();
    std::set<std::vector<Element>> ts, bs;
    for (auto const& m : t.models) {
      ts.insert(serialize(m));
    }
    for (auto const& m : b.models) {
      bs.insert(serialize(m));
    }
    for (auto const& m : t.models) {
      if (!bs.contains(serialize(m))) {
        rep.counterexamples.push_back("T1-T3 only: " + describe(m));
      }
    }
    for (auto const& m : b.models) {
      if (!ts.contains(serialize(m))) {
        rep.counterexamples.push_back("B1,B2,B3,reginv1 only: " + describe(m));
      }
    }
  }
  return rep;
}

SweepReport check_tamura_t4(std::size_t n, SearchOptions const& options) {
  SweepReport rep{"tamura-T4", n, 0, {}};
  for (std::size_t s = 1; s <= n; ++s) {
    SearchSpec spec{AlgebraKind::bimagma, s, {"T1", "T2", "T3"}, "T4", Dedup::iso};
    auto r = enumerate(spec, options);
    rep.checked += r.nodes;
    for (auto const& m : r.models) {
      rep.counterexamples.push_back(describe(m));
    }
    if (!r.exhausted) {
      rep.counterexamples.push_back("search budget exhausted at size " +
                                    std::to_string(s));
    }
  }
  return rep;
}

SweepReport check_identity_aliases(Registry const& reg) {
  SweepReport rep{"aliases", 0, 0, {}};
  for (auto const& [a, b] : {std::pair{"T3", "B2"}, std::pair{"T2", "str3"}}) {
    ++rep.checked;
    if (!alpha_equivalent(reg.at(a), reg.at(b))) {
      rep.counterexamples.push_back(std::string(a) + " differs from " + b);
    }
  }
  return rep;
}

}  // namespace divalg
