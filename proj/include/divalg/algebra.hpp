#pragma once

// Finite algebras given by operation tables: plain semigroups, unary
// semigroups (S, *, ') and bimagmas (S, \, /).  Values are immutable once
// constructed; every constructor validates its input.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace divalg {

using Element = std::uint8_t;

// Largest carrier size accepted anywhere in the library.
inline constexpr std::size_t kMaxElements = 16;

class AlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ShapeError : public AlgebraError {
 public:
  using AlgebraError::AlgebraError;
};

class OutOfRangeEntry : public AlgebraError {
 public:
  OutOfRangeEntry(std::string table, std::size_t row, std::size_t col,
                  long long value);
  std::string const& table() const noexcept { return table_; }
  std::size_t row() const noexcept { return row_; }
  std::size_t col() const noexcept { return col_; }

 private:
  std::string table_;
  std::size_t row_;
  std::size_t col_;
};

class NonAssociative : public AlgebraError {
 public:
  NonAssociative(Element i, Element j, Element k);
  Element i() const noexcept { return i_; }
  Element j() const noexcept { return j_; }
  Element k() const noexcept { return k_; }

 private:
  Element i_, j_, k_;
};

// Square n x n table of element indices, row-major: at(i, j) = i op j.
class Table {
 public:
  Table() = default;
  Table(std::size_t n, std::vector<Element> cells);

  // Validates shape and range; `name` is used in error messages.
  static Table from_rows(std::vector<std::vector<long long>> const& rows,
                         std::string const& name);

  std::size_t size() const noexcept { return n_; }
  Element at(std::size_t i, std::size_t j) const noexcept {
    return cells_[i * n_ + j];
  }
  std::span<Element const> row(std::size_t i) const noexcept {
    return {cells_.data() + i * n_, n_};
  }
  std::vector<Element> const& cells() const noexcept { return cells_; }

  Table transposed() const;
  Table relabeled(std::span<Element const> perm) const;

  friend bool operator==(Table const&, Table const&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Element> cells_;
};

// Returns the first triple (i, j, k) in lexicographic order with
// (ij)k != i(jk), if any.
struct Triple {
  Element i, j, k;
};
std::optional<Triple> first_nonassociative_triple(Table const& mul);

class FiniteSemigroup {
 public:
  explicit FiniteSemigroup(Table mul);

  std::size_t size() const noexcept { return mul_.size(); }
  Element mul(Element i, Element j) const noexcept { return mul_.at(i, j); }
  Table const& mul_table() const noexcept { return mul_; }

  friend bool operator==(FiniteSemigroup const&,
                         FiniteSemigroup const&) = default;

 private:
  Table mul_;
};

class FiniteUnarySemigroup {
 public:
  FiniteUnarySemigroup(Table mul, std::vector<Element> inv);

  std::size_t size() const noexcept { return mul_.size(); }
  Element mul(Element i, Element j) const noexcept { return mul_.at(i, j); }
  Element inv(Element i) const noexcept { return inv_[i]; }
  Table const& mul_table() const noexcept { return mul_; }
  std::vector<Element> const& inv_map() const noexcept { return inv_; }

  friend bool operator==(FiniteUnarySemigroup const&,
                         FiniteUnarySemigroup const&) = default;

 private:
  Table mul_;
  std::vector<Element> inv_;
};

// No laws are assumed.
class FiniteBimagma {
 public:
  FiniteBimagma(Table ld, Table rd);

  std::size_t size() const noexcept { return ld_.size(); }
  Element ld(Element i, Element j) const noexcept { return ld_.at(i, j); }
  Element rd(Element i, Element j) const noexcept { return rd_.at(i, j); }
  Table const& ld_table() const noexcept { return ld_; }
  Table const& rd_table() const noexcept { return rd_; }

  friend bool operator==(FiniteBimagma const&, FiniteBimagma const&) = default;

 private:
  Table ld_;
  Table rd_;
};

using Algebra = std::variant<FiniteSemigroup, FiniteUnarySemigroup, FiniteBimagma>;

enum class AlgebraKind : std::uint8_t { semigroup, unary_semigroup, bimagma };

AlgebraKind kind_of(Algebra const& a) noexcept;
std::size_t size_of(Algebra const& a) noexcept;
std::string to_string(AlgebraKind k);

// Raw-table validation entry points.
FiniteSemigroup validate_semigroup(std::vector<std::vector<long long>> const& mul);
FiniteUnarySemigroup validate_unary_semigroup(
    std::vector<std::vector<long long>> const& mul,
    std::vector<long long> const& inv);
FiniteBimagma validate_bimagma(std::vector<std::vector<long long>> const& ld,
                               std::vector<std::vector<long long>> const& rd);

bool is_idempotent(FiniteUnarySemigroup const& s, Element e);
bool is_idempotent(FiniteSemigroup const& s, Element e);

// perm[old] = new.
Algebra relabel(Algebra const& a, std::span<Element const> perm);

// The opposite structure: transposed product for semigroups, and for
// bimagmas ld'(x, y) = rd(y, x), rd'(x, y) = ld(y, x), which is the division
// bimagma of the opposite unary semigroup.
Algebra anti(Algebra const& a);

// Tables flattened in a fixed order (mul[, inv] or ld, rd).
std::vector<Element> serialize(Algebra const& a);

struct CanonicalForm {
  AlgebraKind kind;
  std::uint8_t size;
  std::vector<Element> bytes;

  friend auto operator<=>(CanonicalForm const&, CanonicalForm const&) = default;
  friend bool operator==(CanonicalForm const&, CanonicalForm const&) = default;
};

// Lexicographically least serialization over all relabelings.
CanonicalForm canonical_form(Algebra const& a);
// Least of the canonical forms of `a` and `anti(a)`.
CanonicalForm canonical_form_up_to_anti(Algebra const& a);

bool isomorphic(Algebra const& a, Algebra const& b);

// Rebuilds the algebra that `canonical_form` serialized.
Algebra from_canonical(CanonicalForm const& f);

}  // namespace divalg
