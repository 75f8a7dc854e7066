#pragma once

// Equational proofs as explicit rewrite chains.
//
// File format (`#` starts a comment):
//
//   proof <name> from <hyp>,<hyp>,... goal <identity>
//   <rule> <l2r|r2l> at <root|i.j.k> with x:=<term>, y:=<term> -> <term> [synthetic]
//
// A proof starts at goal.lhs and must end exactly at goal.rhs.  Each step
// instantiates the rule with the given substitution, checks that the
// source side equals the subterm at the position, and replaces it.  The
// printed result term is mandatory and must match.
//
// A rule is usable in proof P when it is
//   - one of P's hypotheses (a registry identity or an earlier proof's goal);
//   - ldrd-L, ldrd-R or assoc (always);
//   - prime-def-L / prime-def-R, if B1 is a hypothesis of P or an earlier
//     proof named `same` is usable in P;
//   - an earlier accepted proof whose hypotheses are all hypotheses of P or
//     themselves usable earlier proofs.
// Naming a later proof is a structural error.

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "divalg/registry.hpp"
#include "divalg/search.hpp"
#include "divalg/term.hpp"

namespace divalg {

enum class Direction : std::uint8_t { l2r, r2l };

struct ProofStep {
  std::string rule;
  Direction direction = Direction::l2r;
  Position position;
  Substitution substitution;
  Term result = Term::variable('x');
  bool synthetic = false;
  std::size_t line = 0;
};

struct Proof {
  std::string name;
  std::vector<std::string> hypotheses;
  Identity goal;
  std::vector<ProofStep> steps;
  std::size_t line = 0;
};

struct ProofSuite {
  std::vector<Proof> proofs;
};

enum class RejectReason : std::uint8_t {
  no_match,
  bad_position,
  unknown_rule,
  result_mismatch,
  incomplete,
  structural,
};
std::string to_string(RejectReason r);

class ProofError : public std::runtime_error {
 public:
  ProofError(RejectReason reason, std::string const& what)
      : std::runtime_error(what), reason_(reason) {}
  RejectReason reason() const noexcept { return reason_; }

 private:
  RejectReason reason_;
};

class ProofSyntaxError : public std::runtime_error {
 public:
  ProofSyntaxError(std::size_t line, std::string const& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

ProofSuite parse_suite(std::string_view text);
ProofSuite read_suite_file(std::string const& path);
std::string write_step(ProofStep const& s);

// Rewrites the subterm of `t` at s.position from the rule's source side to
// its target side.  Throws ProofError (no_match, bad_position).
Term apply_step(Term const& t, ProofStep const& s, Identity const& rule);

struct ProofVerdict {
  bool accepted = false;
  // Index of the first failing step; absent for header-level failures.
  std::optional<std::size_t> step;
  RejectReason reason = RejectReason::incomplete;
  std::string detail;

  std::string to_string() const;
};

struct ProofResult {
  std::string name;
  std::size_t steps = 0;
  ProofVerdict verdict;
};

// Rule lookup for the proofs of one suite, in order.
class SuiteContext {
 public:
  SuiteContext(ProofSuite const& suite, Registry const& reg);

  // The identity a rule name denotes inside proof `index`, or a ProofError
  // (unknown_rule / structural).
  Identity const& rule(std::size_t index, std::string const& name) const;
  // Hypothesis identities of proof `index`.
  std::vector<Identity> hypotheses(std::size_t index) const;
  // Whether prime-def-L / prime-def-R may be used in proof `index`.
  bool prime_definitions(std::size_t index) const;

  void mark_accepted(std::size_t index, bool ok) { accepted_.at(index) = ok; }
  ProofSuite const& suite() const noexcept { return suite_; }

 private:
  bool usable(std::size_t lemma, std::size_t in) const;
  std::optional<std::size_t> index_of(std::string const& name) const;

  ProofSuite const& suite_;
  Registry const& reg_;
  std::map<std::string, std::size_t> names_;
  std::vector<bool> accepted_;
};

ProofVerdict check_proof(SuiteContext const& ctx, std::size_t index);
// Checks every proof in order; a rejected proof is not usable later.
std::vector<ProofResult> check_suite(ProofSuite const& suite,
                                     Registry const& reg = Registry::builtin());

// Whether the goal holds on every model of the hypotheses up to size n.
// Proofs mentioning `*` or using ldrd-L/ldrd-R/assoc are read on unary
// semigroups, the rest on bimagmas.  On unary semigroups the prime
// definitions join the hypotheses whenever the proof may use them, since
// ' then denotes the reconstructed operation.
struct SoundnessReport {
  std::string name;
  AlgebraKind kind = AlgebraKind::bimagma;
  std::uint64_t models = 0;
  std::optional<std::string> counterexample;
  bool ok() const noexcept { return !counterexample; }
};
SoundnessReport check_soundness(SuiteContext const& ctx, std::size_t index,
                                std::size_t n, SearchOptions const& options = {});
// Same reading over the given labeled models; models of the other kind or
// failing a hypothesis are skipped.
SoundnessReport check_soundness_on(
    SuiteContext const& ctx, std::size_t index,
    std::vector<std::pair<std::string, Algebra>> const& models);

// Fills in direction, position and substitution for draft steps of the form
// `<rule> [l2r|r2l] [at <pos>] -> <term>`; complete steps pass through.
// Returns the annotated text.  Throws ProofSyntaxError with the line of the
// first step no rewrite explains.
std::string annotate(std::string_view draft,
                     Registry const& reg = Registry::builtin());

}  // namespace divalg
