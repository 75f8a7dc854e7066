#include "divalg/fixtures.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "divalg/algebra_io.hpp"
#include "divalg/term.hpp"

namespace divalg {

namespace fs = std::filesystem;

namespace {

std::string slurp(fs::path const& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot read " + p.string());
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string trim(std::string_view s) {
  auto const b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) {
    return {};
  }
  auto const e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

// Identities readable on `a`, in registry order.
std::vector<std::string> readable(Algebra const& a, Registry const& reg) {
  std::vector<std::string> out;
  for (auto const& v : classify(a, reg).identities) {
    out.push_back(v.name);
  }
  return out;
}

}  // namespace

std::string default_data_dir() {
  if (char const* env = std::getenv("DIVALG_DATA"); env && *env) {
    return env;
  }
  return DIVALG_DEFAULT_DATA_DIR;
}

std::string default_fixture_dir() {
  return (fs::path(default_data_dir()) / "fixtures").string();
}

std::vector<std::string> fixture_ids(std::string const& dir) {
  std::vector<std::string> ids;
  for (auto const& e : fs::directory_iterator(dir)) {
    if (e.path().extension() == ".alg") {
      ids.push_back(e.path().stem().string());
    }
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

Fixture parse_fixture(std::string const& id, std::string_view alg_text,
                      std::string_view expect_text, Registry const& reg) {
  Fixture f{id, parse_algebra(alg_text), {}, {}, {}, {}, PrimeExpansion::left, {},
            std::string(alg_text)};
  std::map<std::string, bool>* section = nullptr;
  std::vector<std::string> pending;
  std::set<std::string> seen;
  std::istringstream in{std::string(expect_text)};
  std::string raw;
  std::size_t lineno = 0;
  auto fail = [&](std::string const& what) {
    throw std::invalid_argument(id + ".expect:" + std::to_string(lineno) + ": " + what);
  };
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw);
    if (line.rfind("# provenance:", 0) == 0) {
      f.provenance = trim(std::string_view(line).substr(13));
      continue;
    }
    if (line.rfind("# prime:", 0) == 0) {
      std::string const mode = trim(std::string_view(line).substr(8));
      if (mode != "left" && mode != "right") {
        fail("prime reading must be left or right");
      }
      f.reading = mode == "left" ? PrimeExpansion::left : PrimeExpansion::right;
      continue;
    }
    if (line.empty()) {
      continue;
    }
    if (line[0] == '#') {
      pending.push_back(line);
      continue;
    }
    if (line == "[expected]" || line == "[discrepancy]" || line == "[observed]") {
      section = line == "[expected]"      ? &f.expected
                : line == "[discrepancy]" ? &f.discrepancy
                                          : &f.observed;
      if (!pending.empty()) {
        f.notes[line] = std::move(pending);
        pending.clear();
      }
    } else {
      auto const eq = line.find('=');
      if (eq == std::string::npos || !section) {
        fail("expected `identity=true|false` inside a section");
      }
      std::string const name = trim(std::string_view(line).substr(0, eq));
      std::string const value = trim(std::string_view(line).substr(eq + 1));
      if (value != "true" && value != "false") {
        fail("value must be true or false");
      }
      if (!reg.contains(name)) {
        fail("unknown identity '" + name + "'");
      }
      if (!seen.insert(name).second) {
        fail("duplicate key '" + name + "'");
      }
      (*section)[name] = value == "true";
    }
  }
  return f;
}

Fixture load_fixture(std::string const& id, std::string const& dir, Registry const& reg) {
  fs::path const alg = fs::path(dir) / (id + ".alg");
  fs::path const expect = fs::path(dir) / (id + ".expect");
  if (!fs::exists(alg) || !fs::exists(expect)) {
    throw UnknownFixture(id);
  }
  return parse_fixture(id, slurp(alg), slurp(expect), reg);
}

std::string write_expect(Fixture const& f, Registry const& reg) {
  std::ostringstream os;
  os << "# provenance: " << f.provenance << "\n";
  if (f.reading == PrimeExpansion::right) {
    os << "# prime: right\n";
  }
  auto section = [&](std::string const& head, std::map<std::string, bool> const& m) {
    if (m.empty()) {
      return;
    }
    if (auto it = f.notes.find(head); it != f.notes.end()) {
      for (auto const& n : it->second) {
        os << n << "\n";
      }
    }
    os << head << "\n";
    for (auto const& e : reg.entries()) {
      auto it = m.find(e.identity.name);
      if (it != m.end()) {
        os << it->first << "=" << (it->second ? "true" : "false") << "\n";
      }
    }
  };
  section("[expected]", f.expected);
  section("[discrepancy]", f.discrepancy);
  section("[observed]", f.observed);
  return os.str();
}

void record_observed(Fixture& f, Registry const& reg) {
  f.observed.clear();
  for (auto const& v : classify(f.algebra, reg, f.reading).identities) {
    if (!f.expected.count(v.name) && !f.discrepancy.count(v.name)) {
      f.observed[v.name] = v.holds;
    }
  }
}

std::string FixtureMismatch::to_string() const {
  std::ostringstream os;
  os << section << " " << identity << ": recorded " << (recorded ? "true" : "false")
     << ", evaluated " << (evaluated ? "true" : "false");
  if (witness) {
    os << " at " << *witness;
  }
  return os.str();
}

std::string FixtureResult::to_string() const {
  std::ostringstream os;
  os << id << " (n=" << size << ", " << checked << " identities";
  if (reading == PrimeExpansion::right) {
    os << ", ' read as x\\(x/x)";
  }
  os << "): " << (ok() ? "ok" : "MISMATCH");
  if (!roundtrip) {
    os << "; round trip failed";
  }
  for (auto const& m : mismatches) {
    os << "; " << m.to_string();
  }
  if (!confirmed_discrepancies.empty()) {
    os << "; known discrepancy:";
    for (auto const& d : confirmed_discrepancies) {
      os << " " << d;
    }
  }
  if (!prime_flips.empty()) {
    os << (reading == PrimeExpansion::left ? "; flips under x\\(x/x):"
                                           : "; flips under (x\\x)/x:");
    for (auto const& p : prime_flips) {
      os << " " << p;
    }
  }
  return os.str();
}

FixtureResult verify_fixture(Fixture const& f, Registry const& reg) {
  FixtureResult r;
  r.id = f.id;
  r.size = size_of(f.algebra);
  r.reading = f.reading;
  auto const is_bimagma = kind_of(f.algebra) == AlgebraKind::bimagma;
  auto check = [&](std::string const& section, std::map<std::string, bool> const& m,
                   bool negate) {
    for (auto const& [name, value] : m) {
      Identity const& id = reg.at(name);
      auto const v = find_violation(id, f.algebra, f.reading);
      bool const evaluated = !v;
      ++r.checked;
      bool const want = negate ? !value : value;
      if (evaluated != want) {
        r.mismatches.push_back({name, section, value, evaluated,
                                v ? std::optional<std::string>(v->to_string())
                                  : std::nullopt});
      } else if (negate) {
        r.confirmed_discrepancies.push_back(name);
      }
    }
  };
  check("expected", f.expected, false);
  check("discrepancy", f.discrepancy, true);
  check("observed", f.observed, false);

  // Every readable identity must be accounted for.
  for (auto const& name : readable(f.algebra, reg)) {
    if (!f.expected.count(name) && !f.discrepancy.count(name) && !f.observed.count(name)) {
      r.mismatches.push_back({name, "unrecorded", false,
                              holds(reg.at(name), f.algebra, f.reading), std::nullopt});
    }
  }

  if (is_bimagma) {
    for (auto const& name : readable(f.algebra, reg)) {
      Identity const& id = reg.at(name);
      if (holds(id, f.algebra, PrimeExpansion::left) !=
          holds(id, f.algebra, PrimeExpansion::right)) {
        r.prime_flips.push_back(name);
      }
    }
  }

  std::string const text = write_algebra(f.algebra);
  Algebra const back = parse_algebra(text);
  r.roundtrip = back == f.algebra && write_algebra(back) == text &&
                parse_algebra(f.source) == f.algebra;
  return r;
}

bool FixtureReport::ok() const noexcept {
  return std::all_of(results.begin(), results.end(),
                     [](FixtureResult const& r) { return r.ok(); });
}

std::string FixtureReport::to_string() const {
  std::ostringstream os;
  for (auto const& r : results) {
    os << r.to_string() << "\n";
  }
  return os.str();
}

FixtureReport verify_all_fixtures(std::string const& dir, Registry const& reg) {
  auto const t0 = std::chrono::steady_clock::now();
  FixtureReport rep;
  for (auto const& id : fixture_ids(dir)) {
    rep.results.push_back(verify_fixture(load_fixture(id, dir, reg), reg));
  }
  rep.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

std::optional<SearchSpec> independence_spec(Fixture const& f) {
  if (kind_of(f.algebra) != AlgebraKind::bimagma) {
    return std::nullopt;
  }
  SearchSpec spec;
  spec.kind = AlgebraKind::bimagma;
  spec.size = size_of(f.algebra);
  spec.dedup = Dedup::iso;
  for (auto const& [name, value] : f.expected) {
    if (value) {
      spec.require.push_back(name);
    } else if (spec.forbid) {
      return std::nullopt;
    } else {
      spec.forbid = name;
    }
  }
  if (!spec.forbid) {
    return std::nullopt;
  }
  return spec;
}

std::string RediscoveryReport::to_string() const {
  std::ostringstream os;
  os << id << ": " << witnesses << " witness(es) at n=" << size << ", fixture "
     << (found ? "found" : "NOT found") << (least ? " (least)" : "");
  if (smaller_found) {
    os << "; witness at n=" << *smaller_found;
  } else if (!smaller_empty.empty()) {
    os << "; none at n<=" << smaller_empty.back();
  }
  return os.str();
}

RediscoveryReport rediscover(Fixture const& f, std::size_t minimality_bound,
                             SearchOptions const& options) {
  auto spec = independence_spec(f);
  if (!spec) {
    throw std::invalid_argument(f.id + " is not an independence witness");
  }
  RediscoveryReport r;
  r.id = f.id;
  r.size = spec->size;
  auto const target = canonical_form(f.algebra);
  Registry const& reg = options.registry ? *options.registry : Registry::builtin();
  auto lowered = [&](std::string const& name) {
    Identity id = reg.at(name);
    id.lhs = lower_for_bimagma(id.lhs, f.reading);
    id.rhs = lower_for_bimagma(id.rhs, f.reading);
    return id;
  };
  std::vector<Identity> require;
  for (auto const& name : spec->require) {
    require.push_back(lowered(name));
  }
  Identity const forbid = lowered(*spec->forbid);
  auto search = [&](std::size_t n) {
    return enumerate_models(AlgebraKind::bimagma, n, require, forbid, Dedup::iso, options);
  };
  auto const res = search(spec->size);
  r.witnesses = res.models.size();
  for (std::size_t i = 0; i < res.models.size(); ++i) {
    if (canonical_form(res.models[i]) == target) {
      r.found = true;
      r.least = i == 0;
    }
  }
  for (std::size_t n = 1; n < r.size && n <= minimality_bound; ++n) {
    if (!search(n).models.empty()) {
      r.smaller_found = n;
      break;
    }
    r.smaller_empty.push_back(n);
  }
  return r;
}

}  // namespace divalg
