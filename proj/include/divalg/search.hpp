#pragma once

// Bounded exhaustive model search.
//
// Tables are filled one cell at a time.  Every required identity is expanded
// into its ground instances over the carrier; after each assignment the
// instances that were waiting on that cell are re-evaluated, which either
// settles them, rejects the branch, or forces a single remaining cell.
// When isomorphism classes are all that is wanted, values beyond the largest
// element seen so far are only tried once (least-number heuristic).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "divalg/algebra.hpp"
#include "divalg/registry.hpp"
#include "divalg/term.hpp"

namespace divalg {

enum class Dedup : std::uint8_t { none, iso, iso_anti };

enum class CellOrder : std::uint8_t {
  // All of the first table row by row, then the next table.
  table_major,
  // Cells ordered by their largest index, tables interleaved.
  interleaved,
};

std::string to_string(Dedup d);
Dedup parse_dedup(std::string const& s);
AlgebraKind parse_kind(std::string const& s);

struct SearchBounds {
  std::size_t unconstrained_bimagma = 3;
  std::size_t constrained_bimagma = 6;
  std::size_t semigroup = 4;
  std::size_t constrained_semigroup = 6;
};

struct SearchOptions {
  // 0 selects the hardware concurrency.
  std::size_t workers = 0;
  CellOrder order = CellOrder::interleaved;
  SearchBounds bounds;
  // Truncates the sorted model list; does not stop the search early.
  std::optional<std::size_t> limit;
  // Stop after this many search nodes per worker (0 = no budget).
  std::uint64_t node_budget = 0;
  Registry const* registry = nullptr;
};

struct SearchSpec {
  AlgebraKind kind = AlgebraKind::bimagma;
  std::size_t size = 1;
  std::vector<std::string> require;
  std::optional<std::string> forbid;
  Dedup dedup = Dedup::iso;
};

struct SearchResult {
  // Labeled models (Dedup::none), or per class the least canonical form of
  // a model of the spec, sorted by serialization.  Under iso_anti a class
  // is never represented by an opposite structure that fails the spec.
  std::vector<Algebra> models;
  // Complete models reached by the search before dedup.
  std::uint64_t count_raw = 0;
  std::uint64_t nodes = 0;
  bool exhausted = true;
};

class BoundExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Search over explicit identities.  Identities are read per `kind`: on
// bimagmas ' is expanded to (t\t)/t; on unary semigroups \ and / become
// x'y and xy'; plain semigroups admit only `*`.  Associativity is always
// imposed on semigroup kinds.
SearchResult enumerate_models(AlgebraKind kind, std::size_t size,
                              std::vector<Identity> const& require,
                              std::optional<Identity> const& forbid,
                              Dedup dedup, SearchOptions const& options = {});

SearchResult enumerate(SearchSpec const& spec, SearchOptions const& options = {});

// The least model (by canonical serialization) satisfying `require` and
// violating `forbid`.
std::optional<Algebra> find_witness(SearchSpec const& spec,
                                    SearchOptions const& options = {});

std::uint64_t count_models(AlgebraKind kind, std::size_t size, Dedup dedup,
                           SearchOptions const& options = {});

}  // namespace divalg
