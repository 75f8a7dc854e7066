// divalg: command-line entry point.
//
//   divalg check <file> --identity NAME|'lhs = rhs' ...
//   divalg classify --in <file> [--axioms a,b]
//   divalg convert --in <file> --direction to-bimagma|to-semigroup [--out <file>]
//   divalg search --kind K --size N [--require a,b] [--forbid c] [--dedup iso]
//   divalg prove --suite <file> [--annotate] [--soundness]
//   divalg verify-paper [--bound N] [--deep]
//
// Global: --workers N, --bound N, --deep, --out DIR, --data DIR ($DIVALG_DATA).

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "divalg/algebra_io.hpp"
#include "divalg/classes.hpp"
#include "divalg/fixtures.hpp"
#include "divalg/functors.hpp"
#include "divalg/paper_check.hpp"
#include "divalg/proof.hpp"
#include "divalg/registry.hpp"
#include "divalg/search.hpp"

namespace fs = std::filesystem;
using namespace divalg;

namespace {

struct Globals {
  std::size_t workers = 0;
  std::size_t bound = 3;
  bool deep = false;
  std::string out;
  std::string data;
  std::string registry;
};

std::string data_dir(Globals const& g) {
  return g.data.empty() ? default_data_dir() : g.data;
}

Registry const& registry(Globals const& g) {
  static std::optional<Registry> loaded;
  if (g.registry.empty()) {
    return Registry::builtin();
  }
  if (!loaded) {
    loaded = Registry::load(g.registry);
  }
  return *loaded;
}

// A path as given, else relative to the data directory.
std::string locate(Globals const& g, std::string const& path) {
  if (fs::exists(path)) {
    return path;
  }
  auto alt = fs::path(data_dir(g)) / path;
  return fs::exists(alt) ? alt.string() : path;
}

std::string slurp(std::string const& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot read " + path);
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void emit(Globals const& g, std::string const& name, std::string const& text) {
  if (g.out.empty()) {
    return;
  }
  fs::create_directories(g.out);
  std::ofstream(fs::path(g.out) / name) << text;
}

SearchOptions search_options(Globals const& g) {
  SearchOptions o;
  o.workers = g.workers;
  o.registry = &registry(g);
  return o;
}

int cmd_check(Globals const& g, std::string const& file,
              std::vector<std::string> const& ids, std::string const& prime) {
  auto const a = read_algebra_file(locate(g, file));
  auto const mode = prime == "right" ? PrimeExpansion::right : PrimeExpansion::left;
  bool all = true;
  for (auto const& spec : ids) {
    Identity const id = spec.find('=') != std::string::npos ? parse_identity(spec, spec)
                                                            : registry(g).at(spec);
    auto w = find_violation(id, a, mode);
    all = all && !w;
    std::cout << id.name << ": " << (w ? "false" : "true");
    if (w) {
      std::cout << " at " << w->to_string();
    }
    std::cout << '\n';
  }
  return all ? 0 : 1;
}

int cmd_classify(Globals const& g, std::string const& file, std::string const& axioms,
                 std::string const& prime) {
  auto const a = read_algebra_file(locate(g, file));
  auto const mode = prime == "right" ? PrimeExpansion::right : PrimeExpansion::left;
  std::ostringstream os;
  if (!axioms.empty()) {
    bool all = true;
    for (auto const& name : split_names(axioms)) {
      bool const h = holds(registry(g).at(name), a, mode);
      all = all && h;
      os << name << "=" << (h ? "true" : "false") << '\n';
    }
    std::cout << os.str();
    emit(g, "classify.txt", os.str());
    return all ? 0 : 1;
  }
  os << classify(a, registry(g), mode).to_string();
  std::cout << os.str();
  emit(g, "classify.txt", os.str());
  return 0;
}

int cmd_convert(Globals const& g, std::string const& file, std::string const& direction,
                std::string const& out_file) {
  auto const a = read_algebra_file(locate(g, file));
  std::string text;
  if (direction == "to-bimagma") {
    auto const* s = std::get_if<FiniteUnarySemigroup>(&a);
    if (!s) {
      throw std::invalid_argument("to-bimagma needs a unary semigroup");
    }
    text = write_algebra(to_division_bimagma(*s));
  } else if (direction == "to-semigroup") {
    auto const* b = std::get_if<FiniteBimagma>(&a);
    if (!b) {
      throw std::invalid_argument("to-semigroup needs a bimagma");
    }
    auto r = try_to_unary_semigroup(*b);
    if (!r.semigroup) {
      std::cerr << r.report.to_string() << '\n';
      return 1;
    }
    text = write_algebra(*r.semigroup);
  } else {
    throw std::invalid_argument("direction must be to-bimagma or to-semigroup");
  }
  if (out_file.empty()) {
    std::cout << text;
  } else {
    std::ofstream(out_file) << text;
  }
  return 0;
}

int cmd_search(Globals const& g, SearchSpec const& spec, bool count_only) {
  auto const res = enumerate(spec, search_options(g));
  std::ostringstream os;
  os << "# " << to_string(spec.kind) << " n=" << spec.size << " dedup=" << to_string(spec.dedup)
     << ": " << res.models.size() << " model(s), " << res.count_raw << " raw, " << res.nodes
     << " nodes\n";
  if (!count_only) {
    for (auto const& m : res.models) {
      os << write_algebra(m) << '\n';
    }
  }
  std::cout << os.str();
  emit(g, "search.txt", os.str());
  return res.models.empty() ? 1 : 0;
}

int cmd_prove(Globals const& g, std::string const& file, bool annotate_only, bool soundness) {
  std::string text = slurp(locate(g, file));
  if (annotate_only) {
    text = annotate(text, registry(g));
    std::cout << text;
    emit(g, "annotated.proof", text);
    return 0;
  }
  auto const suite = parse_suite(text);
  SuiteContext ctx(suite, registry(g));
  std::ostringstream os;
  int status = 0;
  for (std::size_t i = 0; i < suite.proofs.size(); ++i) {
    auto const& p = suite.proofs[i];
    auto v = check_proof(ctx, i);
    ctx.mark_accepted(i, v.accepted);
    os << p.name << " (" << p.steps.size() << " steps): " << v.to_string();
    if (v.accepted && soundness) {
      auto s = check_soundness(ctx, i, g.bound, search_options(g));
      os << "; " << s.models << " models n<=" << g.bound << ": "
         << (s.ok() ? "sound" : *s.counterexample);
      status = s.ok() ? status : 1;
    }
    os << '\n';
    if (!v.accepted) {
      status = 1;
      break;
    }
  }
  std::cout << os.str();
  emit(g, "prove.txt", os.str());
  return status;
}

int cmd_verify(Globals const& g) {
  VerifyConfig c;
  c.bound = g.bound;
  c.tamura_bound = g.deep ? std::max<std::size_t>(4, g.bound) : g.bound;
  c.workers = g.workers;
  c.data_dir = data_dir(g);
  c.registry = &registry(g);
  auto const rep = verify_paper(c, &std::cout);
  std::cout << '\n' << rep.human();
  emit(g, "verify.txt", rep.machine());
  emit(g, "traceability.txt", rep.human());
  return rep.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unary semigroups and their division bimagmas"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--workers", g.workers, "search threads (0 = all cores)");
  app.add_option("--bound", g.bound, "size bound for sweeps")->check(CLI::PositiveNumber);
  app.add_flag("--deep", g.deep, "T1-T3 counterexample search up to size 4");
  app.add_option("--out", g.out, "directory for reports");
  app.add_option("--data", g.data, "data directory with fixtures/ and proofs/")
      ->envname("DIVALG_DATA");
  app.add_option("--registry", g.registry, "identity registry file");

  std::string file, ids_axioms, prime = "left", direction, out_file;
  std::vector<std::string> ids;

  auto* check = app.add_subcommand("check", "evaluate identities on an algebra");
  check->add_option("file", file)->required();
  check->add_option("--identity,-i", ids, "registry name or 'lhs = rhs'")->required();
  check->add_option("--prime", prime, "reading of ' on bimagmas")
      ->check(CLI::IsMember({"left", "right"}));

  auto* cls = app.add_subcommand("classify", "identity and class profile");
  cls->add_option("--in,file", file)->required();
  cls->add_option("--axioms", ids_axioms, "comma-separated names to check instead");
  cls->add_option("--prime", prime)->check(CLI::IsMember({"left", "right"}));

  auto* conv = app.add_subcommand("convert", "apply a functor");
  conv->add_option("--in,file", file)->required();
  conv->add_option("--direction", direction)
      ->required()
      ->check(CLI::IsMember({"to-bimagma", "to-semigroup"}));
  conv->add_option("--out", out_file, "output file (default stdout)");

  SearchSpec spec;
  std::string kind = "bimagma", require, forbid, dedup = "iso";
  bool count_only = false;
  auto* search = app.add_subcommand("search", "enumerate finite models");
  search->add_option("--kind", kind)->check(
      CLI::IsMember({"bimagma", "unary_semigroup", "unary-semigroup", "semigroup"}));
  search->add_option("--size", spec.size)->required()->check(CLI::PositiveNumber);
  search->add_option("--require", require, "comma-separated identity names");
  search->add_option("--forbid", forbid, "identity that must fail");
  search->add_option("--dedup", dedup)->check(
      CLI::IsMember({"none", "iso", "iso+anti-iso", "anti"}));
  search->add_flag("--count", count_only, "print only the count");

  bool annotate_only = false, soundness = false;
  auto* prove = app.add_subcommand("prove", "check a proof suite");
  prove->add_option("--suite,file", file)->required();
  prove->add_flag("--annotate", annotate_only, "fill in draft steps and print the suite");
  prove->add_flag("--soundness", soundness, "cross-check goals on models up to --bound");

  auto* verify = app.add_subcommand("verify-paper", "run every reproduction check");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*check) {
      return cmd_check(g, file, ids, prime);
    }
    if (*cls) {
      return cmd_classify(g, file, ids_axioms, prime);
    }
    if (*conv) {
      return cmd_convert(g, file, direction, out_file);
    }
    if (*search) {
      spec.kind = parse_kind(kind);
      spec.require = split_names(require);
      if (!forbid.empty()) {
        spec.forbid = forbid;
      }
      spec.dedup = parse_dedup(dedup);
      return cmd_search(g, spec, count_only);
    }
    if (*prove) {
      return cmd_prove(g, file, annotate_only, soundness);
    }
    if (*verify) {
      return cmd_verify(g);
    }
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
