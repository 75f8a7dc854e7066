#pragma once

// Concrete models with their recorded identity profiles.
//
// A fixture is a pair of files in the fixture directory:
//   <id>.alg     the algebra (see algebra_io.hpp)
//   <id>.expect  `# provenance: ...`, optional `# prime: left|right`, then
//                sections of `identity=true|false`
//
//   [expected]     values stated for the model; must be reproduced
//   [discrepancy]  values stated for the model that do not hold; the opposite
//                  value must be observed
//   [observed]     every other readable identity, recorded from a run
//
// `# prime: right` evaluates bimagma identities with x' read as x\(x/x)
// instead of (x\x)/x.  Letters a, b, c in model descriptions are elements
// 0, 1, 2.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "divalg/algebra.hpp"
#include "divalg/classes.hpp"
#include "divalg/registry.hpp"
#include "divalg/search.hpp"

namespace divalg {

class UnknownFixture : public std::runtime_error {
 public:
  explicit UnknownFixture(std::string const& id)
      : std::runtime_error("unknown fixture '" + id + "'"), id_(id) {}
  std::string const& id() const noexcept { return id_; }

 private:
  std::string id_;
};

struct Fixture {
  std::string id;
  Algebra algebra;
  std::string provenance;
  std::map<std::string, bool> expected;
  std::map<std::string, bool> discrepancy;
  std::map<std::string, bool> observed;
  PrimeExpansion reading = PrimeExpansion::left;
  // Other comment lines, keyed by the section header they precede.
  std::map<std::string, std::vector<std::string>> notes;
  // Text of the .alg file as read.
  std::string source;
};

// $DIVALG_DATA if set, else the build-time data directory.
std::string default_data_dir();
// default_data_dir()/fixtures.
std::string default_fixture_dir();

// Sorted ids of the fixtures in `dir`.
std::vector<std::string> fixture_ids(std::string const& dir = default_fixture_dir());

// Throws UnknownFixture, FormatError, or std::invalid_argument for a bad
// .expect file or a key the registry does not know.
Fixture load_fixture(std::string const& id, std::string const& dir = default_fixture_dir(),
                     Registry const& reg = Registry::builtin());
Fixture parse_fixture(std::string const& id, std::string_view alg_text,
                      std::string_view expect_text,
                      Registry const& reg = Registry::builtin());

// .expect text for `f`.  Sections are written in the order above with keys in
// registry order; comments are kept before their section.
std::string write_expect(Fixture const& f, Registry const& reg = Registry::builtin());

// Fills `observed` with every readable identity not in the other sections.
void record_observed(Fixture& f, Registry const& reg = Registry::builtin());

struct FixtureMismatch {
  std::string identity;
  std::string section;
  bool recorded = false;
  bool evaluated = false;
  // Violating assignment when the identity evaluated false.
  std::optional<std::string> witness;

  std::string to_string() const;
};

struct FixtureResult {
  std::string id;
  std::size_t size = 0;
  std::size_t checked = 0;
  std::vector<FixtureMismatch> mismatches;
  // Discrepancy entries that are still present.
  std::vector<std::string> confirmed_discrepancies;
  PrimeExpansion reading = PrimeExpansion::left;
  // Identities whose verdict changes under the other reading of '.
  std::vector<std::string> prime_flips;
  // parse(write(algebra)) == algebra and write(parse(...)) is stable.
  bool roundtrip = false;

  bool ok() const noexcept { return mismatches.empty() && roundtrip; }
  std::string to_string() const;
};

struct FixtureReport {
  std::vector<FixtureResult> results;
  double seconds = 0;

  bool ok() const noexcept;
  std::string to_string() const;
};

FixtureResult verify_fixture(Fixture const& f, Registry const& reg = Registry::builtin());
FixtureReport verify_all_fixtures(std::string const& dir = default_fixture_dir(),
                                  Registry const& reg = Registry::builtin());

// For a bimagma fixture whose [expected] block has exactly one false entry:
// the search for models of the true entries violating the false one.
std::optional<SearchSpec> independence_spec(Fixture const& f);

struct RediscoveryReport {
  std::string id;
  std::size_t size = 0;
  // Non-isomorphic witnesses at the fixture's size.
  std::size_t witnesses = 0;
  bool found = false;
  // Least witness is isomorphic to the fixture.
  bool least = false;
  // Sizes below the fixture's that were searched and had no witness.
  std::vector<std::size_t> smaller_empty;
  std::optional<std::size_t> smaller_found;

  bool ok() const noexcept { return found && !smaller_found; }
  std::string to_string() const;
};

// Enumerates the independence spec at the fixture's size (up to iso) and
// checks the fixture is among the witnesses, then searches every smaller size
// up to `minimality_bound`.
RediscoveryReport rediscover(Fixture const& f, std::size_t minimality_bound,
                             SearchOptions const& options = {});

}  // namespace divalg
