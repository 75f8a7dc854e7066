#pragma once

// The division bimagma of a unary semigroup (x\y = x'y, x/y = xy') and the
// reconstruction of a unary semigroup from a bimagma (x' = (x\x)/x,
// x*y = x/y').

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "divalg/algebra.hpp"

namespace divalg {

struct ReconstructionReport {
  // x with (x\x)/x != x\(x/x).
  std::vector<Element> prime_disagreements;
  // (x, y) with x/y' != x'\y.
  std::vector<std::pair<Element, Element>> mul_disagreements;
  // First failing triple of the reconstructed product, if any.  Only
  // computed when the two lists above are empty.
  std::optional<Triple> nonassociative;

  bool ok() const noexcept {
    return prime_disagreements.empty() && mul_disagreements.empty();
  }
  // Well defined but not associative.
  bool pre_semigroup() const noexcept { return ok() && nonassociative; }
  std::string to_string() const;
};

class IllDefined : public std::runtime_error {
 public:
  explicit IllDefined(ReconstructionReport r);
  ReconstructionReport const& report() const noexcept { return report_; }

 private:
  ReconstructionReport report_;
};

FiniteBimagma to_division_bimagma(FiniteUnarySemigroup const& s);

// Never throws; the report says whether the reconstruction is usable.
ReconstructionReport reconstruction_report(FiniteBimagma const& b);

// Throws IllDefined when the report is not ok and NonAssociative when the
// reconstructed product is not associative.
FiniteUnarySemigroup to_unary_semigroup(FiniteBimagma const& b);

struct Reconstruction {
  ReconstructionReport report;
  std::optional<FiniteUnarySemigroup> semigroup;
};
Reconstruction try_to_unary_semigroup(FiniteBimagma const& b);

// Table equality (not isomorphism) after applying both maps.  A bimagma
// whose reconstruction is ill defined or non-associative fails.
bool roundtrip_check(FiniteUnarySemigroup const& s);
bool roundtrip_check(FiniteBimagma const& b);

}  // namespace divalg
