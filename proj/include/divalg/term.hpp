#pragma once

// Terms and identities over the signature {\, /, *, '}.
//
// Grammar (whitespace ignored):
//   term     := atom { "'" }
//   atom     := var | "(" group ")"
//   group    := term { op term }
//   op       := "\" | "/" | "*"
//   identity := group "=" group
//
// A group with more than one operator is accepted only when every operator
// is `*` (read left-associatively); any other unparenthesized chain is
// rejected as ambiguous.  The outermost parentheses of each side may be
// omitted.

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "divalg/algebra.hpp"

namespace divalg {

enum class Op : std::uint8_t { var, ld, rd, mul, inv };

class Term {
 public:
  static Term variable(char name);
  static Term ld(Term a, Term b);
  static Term rd(Term a, Term b);
  static Term mul(Term a, Term b);
  static Term inv(Term a);
  static Term binary(Op op, Term a, Term b);

  Op op() const noexcept { return node_->op; }
  bool is_var() const noexcept { return node_->op == Op::var; }
  char var_name() const noexcept { return node_->name; }
  std::size_t arity() const noexcept;
  Term const& child(std::size_t i) const;

  std::set<char> vars() const;
  void collect_vars(std::set<char>& out) const;
  std::size_t node_count() const;
  bool contains(Op op) const;

  std::string to_string() const;

  friend bool operator==(Term const& a, Term const& b);
  friend bool operator<(Term const& a, Term const& b);

 private:
  struct Node {
    Op op;
    char name;
    std::vector<Term> kids;
  };
  explicit Term(std::shared_ptr<Node const> n) : node_(std::move(n)) {}

  std::shared_ptr<Node const> node_;
};

using Position = std::vector<std::size_t>;
using Substitution = std::map<char, Term>;

class PositionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Term const& subterm_at(Term const& t, Position const& p);
Term replace_at(Term const& t, Position const& p, Term replacement);
Term instantiate(Term const& t, Substitution const& s);
std::string to_string(Position const& p);

// Every position in pre-order, root first.
std::vector<Position> positions(Term const& t);

// One-sided first-order matching: extends `s` so that instantiate(pattern, s)
// equals `t`.  Returns false (leaving `s` in an unspecified state) on failure.
bool match(Term const& pattern, Term const& t, Substitution& s);

enum class Side : std::uint8_t { semigroup, bimagma, mixed };
std::string to_string(Side s);

struct Identity {
  std::string name;
  Term lhs;
  Term rhs;
  Side side;

  std::set<char> vars() const;
  std::string to_string() const;
};

Side infer_side(Term const& lhs, Term const& rhs);

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(std::size_t position, std::string expected);
  std::size_t position() const noexcept { return position_; }
  std::string const& expected() const noexcept { return expected_; }

 private:
  std::size_t position_;
  std::string expected_;
};

class AmbiguousTerm : public SyntaxError {
 public:
  explicit AmbiguousTerm(std::size_t position);
};

Term parse_term(std::string_view text);
Identity parse_identity(std::string_view text, std::string name = {});

// Same shape up to a bijective renaming of variables.
bool alpha_equivalent(Term const& a, Term const& b);
bool alpha_equivalent(Identity const& a, Identity const& b);

// Values for variables a..z.
class Assignment {
 public:
  Assignment() { values_.fill(-1); }

  void set(char var, Element v) { values_[index(var)] = static_cast<int>(v); }
  bool contains(char var) const { return values_[index(var)] >= 0; }
  Element get(char var) const;

  std::string to_string() const;
  friend bool operator==(Assignment const&, Assignment const&) = default;

 private:
  static std::size_t index(char var);
  std::array<int, 26> values_;
};

class SignatureMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnboundVariable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// How x' is read on a bimagma, where ' is not part of the signature.
enum class PrimeExpansion : std::uint8_t {
  left,   // (x\x)/x
  right,  // x\(x/x)
};

// On unary semigroups x\y and x/y are x'y and xy'.  On bimagmas t' is
// expanded per `mode` and `*` is a signature mismatch.  Plain semigroups
// admit only `*`.
Element eval_term(Term const& t, Algebra const& a, Assignment const& env,
                  PrimeExpansion mode = PrimeExpansion::left);

// Raises SignatureMismatch if `id` cannot be evaluated on `a`.
void check_signature(Identity const& id, Algebra const& a);

std::optional<Assignment> find_violation(
    Identity const& id, Algebra const& a,
    PrimeExpansion mode = PrimeExpansion::left);
bool holds(Identity const& id, Algebra const& a,
           PrimeExpansion mode = PrimeExpansion::left);

// Rewrites \ and / into * and ' (unary semigroup reading) or ' into
// (t\t)/t (bimagma reading).
Term lower_for_unary_semigroup(Term const& t);
Term lower_for_bimagma(Term const& t, PrimeExpansion mode = PrimeExpansion::left);

}  // namespace divalg
