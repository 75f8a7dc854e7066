#pragma once

// One-shot reproduction run: fixtures, functor sweeps, class
// characterizations, lemmas, independence rediscovery and the proof suite,
// in that order.  Every check yields one line `<check-id> PASS|FAIL <detail>`.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "divalg/registry.hpp"

namespace divalg {

struct VerifyConfig {
  // Size bound for every exhaustive sweep.
  std::size_t bound = 3;
  // T1-T3 counterexample search bound (4 with --deep).
  std::size_t tamura_bound = 3;
  // Independence witnesses larger than this are not searched for; 0 means
  // bound + 2.
  std::size_t witness_bound = 0;
  std::size_t workers = 0;
  // Root holding fixtures/ and proofs/.
  std::string data_dir;
  // Defaults to <data_dir>/proofs/suite.proof.
  std::string proof_file;
  Registry const* registry = nullptr;
};

struct CheckLine {
  std::string id;
  bool pass = false;
  std::string detail;

  std::string to_string() const;
};

struct TraceRow {
  std::string claim;
  // Check-id prefixes the row aggregates.
  std::vector<std::string> checks;
  std::size_t passed = 0;
  std::size_t total = 0;

  bool ok() const noexcept { return total > 0 && passed == total; }
};

struct VerifyReport {
  std::vector<CheckLine> lines;
  std::vector<TraceRow> table;
  double seconds = 0;

  bool ok() const noexcept;
  std::optional<CheckLine> first_failure() const;
  // Line-oriented, one check per line.
  std::string machine() const;
  // Traceability table and totals.
  std::string human() const;
};

// Check lines are also written to `live` as they complete.
VerifyReport verify_paper(VerifyConfig const& config, std::ostream* live = nullptr);

}  // namespace divalg
