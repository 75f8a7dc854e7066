#pragma once

// Classes of unary semigroups and the bimagma bases that characterize them,
// identity profiles of concrete algebras, and the exhaustive sweeps that
// confirm each characterization at small sizes.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "divalg/algebra.hpp"
#include "divalg/registry.hpp"
#include "divalg/search.hpp"
#include "divalg/term.hpp"

namespace divalg {

struct ClassSpec {
  std::string name;
  std::vector<std::string> semigroup_axioms;
  std::vector<std::string> bimagma_axioms;
  // Semigroup side is "is a group with ' as inverse" rather than identities.
  bool group = false;
};

// Main table rows first, then the (I4) row, the Tamura bases and groups.
std::vector<ClassSpec> const& class_table();
// Throws std::invalid_argument.
ClassSpec const& find_class(std::string const& name);

struct Verdict {
  std::string name;
  bool holds;
  std::optional<Assignment> witness;
};

struct Profile {
  std::vector<Verdict> identities;
  std::vector<std::pair<std::string, bool>> classes;

  std::optional<bool> get(std::string const& name) const;
  std::string to_string() const;
};

// Every non-definitional registry identity that can be read on the algebra,
// then every class whose axioms are all readable.  Bimagma profiles read '
// per `mode`.
Profile classify(Algebra const& a, Registry const& reg = Registry::builtin(),
                 PrimeExpansion mode = PrimeExpansion::left);
Profile classify_semigroup(FiniteUnarySemigroup const& s,
                           Registry const& reg = Registry::builtin());
Profile classify_bimagma(FiniteBimagma const& b,
                         Registry const& reg = Registry::builtin(),
                         PrimeExpansion mode = PrimeExpansion::left);

bool satisfies_all(Algebra const& a, std::vector<Identity> const& ids);
bool in_semigroup_class(FiniteUnarySemigroup const& s, ClassSpec const& c,
                        Registry const& reg = Registry::builtin());
bool in_bimagma_class(FiniteBimagma const& b, ClassSpec const& c,
                      Registry const& reg = Registry::builtin());

// Has a two-sided identity e with x'x = xx' = e for all x.
bool is_group(FiniteUnarySemigroup const& s);
// e' = e for every idempotent e.
bool fixes_idempotents(FiniteUnarySemigroup const& s);

// Result of an exhaustive sweep.  `checked` counts algebras examined.
struct SweepReport {
  std::string name;
  std::size_t bound = 0;
  std::uint64_t checked = 0;
  std::vector<std::string> counterexamples;

  bool ok() const noexcept { return counterexamples.empty(); }
  std::string summary() const;
};

struct EquivalenceReport {
  std::string class_name;
  std::size_t bound = 0;
  std::uint64_t forward_checked = 0;
  std::uint64_t converse_checked = 0;
  std::vector<std::string> counterexamples;

  bool ok() const noexcept { return counterexamples.empty(); }
  std::string summary() const;
};

// Over all labeled algebras of every size up to n: the division bimagma of
// each class member satisfies the basis and maps back exactly; each model of
// the basis reconstructs to an associative class member and maps back
// exactly.
EquivalenceReport check_equivalence(ClassSpec const& c, std::size_t n,
                                    SearchOptions const& options = {},
                                    Registry const& reg = Registry::builtin());

// Unary semigroups with I1 and x''y = xy = xy'' map to a bimagma and back
// exactly.
SweepReport check_semigroup_roundtrip(std::size_t n, SearchOptions const& options = {});
// Bimagmas with B1, comp1 and comp2 reconstruct to a unary semigroup whose
// division bimagma is the original.
SweepReport check_bimagma_roundtrip(std::size_t n, SearchOptions const& options = {});
// E-inversive unary semigroups with x''y = xy = xy'': I3 iff I2.
SweepReport check_doubleprime_lemma(std::size_t n, SearchOptions const& options = {});
// I2, I3, I8 imply I1 and I6.
SweepReport check_inverse_sufficiency(std::size_t n, SearchOptions const& options = {});
// On regular unary semigroups, I5 iff ' fixes idempotents.
SweepReport check_idempotent_fixing(std::size_t n, SearchOptions const& options = {});
// Class implications on every unary semigroup of size <= n.
SweepReport check_hierarchy(std::size_t n, SearchOptions const& options = {});
// Bimagmas satisfying {T1,T2,T3} are exactly those satisfying
// {B1,B2,B3,reginv1}.
SweepReport check_tamura_basis(std::size_t n, SearchOptions const& options = {});
// No bimagma of size <= n satisfies T1, T2, T3 and violates T4.
SweepReport check_tamura_t4(std::size_t n, SearchOptions const& options = {});
// T3 is B2 and T2 is str3, up to renaming variables.
SweepReport check_identity_aliases(Registry const& reg = Registry::builtin());

// One-line rendering used in reports.
std::string describe(Algebra const& a);

}  // namespace divalg
