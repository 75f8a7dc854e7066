#include "divalg/search.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <map>
#include <mutex>
#include <set>
#include <thread>

namespace divalg {

std::string to_string(Dedup d) {
  switch (d) {
    case Dedup::none:
      return "none";
    case Dedup::iso:
      return "iso";
    case Dedup::iso_anti:
      return "iso+anti-iso";
  }
  return "?";
}

Dedup parse_dedup(std::string const& s) {
  if (s == "none") {
    return Dedup::none;
  }
  if (s == "iso") {
    return Dedup::iso;
  }
  if (s == "iso+anti-iso" || s == "iso+anti" || s == "anti") {
    return Dedup::iso_anti;
  }
  throw std::invalid_argument("unknown dedup mode '" + s + "'");
}

AlgebraKind parse_kind(std::string const& s) {
  if (s == "bimagma") {
    return AlgebraKind::bimagma;
  }
  if (s == "unary_semigroup" || s == "unary-semigroup") {
    return AlgebraKind::unary_semigroup;
  }
  if (s == "semigroup") {
    return AlgebraKind::semigroup;
  }
  throw std::invalid_argument("unknown algebra kind '" + s + "'");
}

namespace {

constexpr std::int8_t kUnknown = -1;
constexpr std::size_t kMaxVars = 4;

// Operation slots per kind: bimagma {ld, rd}; unary semigroup {mul, inv};
// semigroup {mul}.
struct Signature {
  AlgebraKind kind;
  std::size_t n;
  std::vector<std::size_t> arity;
  std::vector<std::size_t> base;
  std::size_t cells = 0;

  Signature(AlgebraKind k, std::size_t size) : kind(k), n(size) {
    switch (k) {
      case AlgebraKind::bimagma:
        arity = {2, 2};
        break;
      case AlgebraKind::unary_semigroup:
        arity = {2, 1};
        break;
      case AlgebraKind::semigroup:
        arity = {2};
        break;
    }
    for (auto a : arity) {
      base.push_back(cells);
      cells += a == 2 ? n * n : n;
    }
  }

  std::size_t cell(std::size_t slot, Element a, Element b) const {
    return arity[slot] == 2 ? base[slot] + a * n + b : base[slot] + a;
  }

  std::size_t slot_of(Op op) const {
    switch (kind) {
      case AlgebraKind::bimagma:
        if (op == Op::ld) return 0;
        if (op == Op::rd) return 1;
        break;
      case AlgebraKind::unary_semigroup:
        if (op == Op::mul) return 0;
        if (op == Op::inv) return 1;
        break;
      case AlgebraKind::semigroup:
        if (op == Op::mul) return 0;
        break;
    }
    throw SignatureMismatch("operation not available on a " + to_string(kind));
  }

  // Row/column indices of a cell.
  std::pair<Element, Element> indices(std::size_t c) const {
    std::size_t slot = 0;
    while (slot + 1 < base.size() && c >= base[slot + 1]) {
      ++slot;
    }
    std::size_t const off = c - base[slot];
    if (arity[slot] == 2) {
      return {Element(off / n), Element(off % n)};
    }
    return {Element(off), Element(off)};
  }
};

// Operand encoding: >= 0 is a node index, < 0 is variable -(v + 1).
struct Node {
  std::uint8_t slot;
  std::int16_t a;
  std::int16_t b;
};

struct Program {
  std::vector<Node> nodes;
  std::int16_t lhs;
  std::int16_t rhs;
  std::size_t vars;
};

class Compiler {
 public:
  Compiler(Signature const& sig) : sig_(sig) {}

  Program compile(Identity const& id) {
    Term lhs = lower(id.lhs);
    Term rhs = lower(id.rhs);
    auto vs = id.vars();
    vars_.assign(vs.begin(), vs.end());
    if (vars_.size() > kMaxVars) {
      throw std::invalid_argument("identity " + id.name + " has too many variables");
    }
    prog_ = Program{};
    memo_.clear();
    prog_.lhs = emit(lhs);
    prog_.rhs = emit(rhs);
    prog_.vars = vars_.size();
    return prog_;
  }

 private:
  Term lower(Term const& t) const {
    switch (sig_.kind) {
      case AlgebraKind::bimagma:
        return lower_for_bimagma(t);
      case AlgebraKind::unary_semigroup:
        return lower_for_unary_semigroup(t);
      case AlgebraKind::semigroup:
        if (t.contains(Op::ld) || t.contains(Op::rd) || t.contains(Op::inv)) {
          throw SignatureMismatch("term " + t.to_string() +
                                  " cannot be read in a plain semigroup");
        }
        return t;
    }
    return t;
  }

  std::int16_t emit(Term const& t) {
    if (t.is_var()) {
      auto it = std::find(vars_.begin(), vars_.end(), t.var_name());
      return static_cast<std::int16_t>(-(it - vars_.begin()) - 1);
    }
    auto key = t.to_string();
    if (auto it = memo_.find(key); it != memo_.end()) {
      return it->second;
    }
    Node node{static_cast<std::uint8_t>(sig_.slot_of(t.op())), 0, 0};
    node.a = emit(t.child(0));
    node.b = t.arity() == 2 ? emit(t.child(1)) : node.a;
    auto idx = static_cast<std::int16_t>(prog_.nodes.size());
    prog_.nodes.push_back(node);
    memo_.emplace(std::move(key), idx);
    return idx;
  }

  Signature const& sig_;
  std::vector<char> vars_;
  Program prog_;
  std::map<std::string, std::int16_t> memo_;
};

struct Instance {
  std::uint16_t program;
  std::array<Element, kMaxVars> vals;
};

enum class Status : std::uint8_t { satisfied, violated, forced, pending };

struct EvalResult {
  Status status;
  std::int32_t cell_a = -1;  // forced cell, or first watch
  std::int32_t cell_b = -1;  // second watch
  Element value = 0;
};

struct Problem {
  Signature sig;
  std::vector<Program> programs;
  std::vector<Instance> instances;
  std::optional<Program> forbid;
  std::vector<std::size_t> order;
  bool symmetry_breaking;
  std::size_t max_nodes = 0;
};

Problem build_problem(AlgebraKind kind, std::size_t n,
                      std::vector<Identity> const& require,
                      std::optional<Identity> const& forbid, bool lnh,
                      CellOrder order) {
  Problem p{Signature(kind, n), {}, {}, std::nullopt, {}, lnh, 0};
  Compiler compiler(p.sig);
  std::vector<Identity> all = require;
  if (kind != AlgebraKind::bimagma) {
    all.push_back(parse_identity("(x*y)*z = x*(y*z)", "assoc"));
  }
  for (auto const& id : all) {
    p.programs.push_back(compiler.compile(id));
  }
  for (std::size_t k = 0; k < p.programs.size(); ++k) {
    auto const& prog = p.programs[k];
    p.max_nodes = std::max(p.max_nodes, prog.nodes.size());
    std::size_t total = 1;
    for (std::size_t v = 0; v < prog.vars; ++v) {
      total *= n;
    }
    for (std::size_t code = 0; code < total; ++code) {
      Instance inst{static_cast<std::uint16_t>(k), {}};
      std::size_t c = code;
      for (std::size_t v = prog.vars; v-- > 0;) {
        inst.vals[v] = Element(c % n);
        c /= n;
      }
      p.instances.push_back(inst);
    }
  }
  if (forbid) {
    p.forbid = compiler.compile(*forbid);
    p.max_nodes = std::max(p.max_nodes, p.forbid->nodes.size());
  }

  std::vector<std::size_t> cells(p.sig.cells);
  for (std::size_t c = 0; c < cells.size(); ++c) {
    cells[c] = c;
  }
  if (order == CellOrder::interleaved) {
    auto key = [&](std::size_t c) {
      auto [i, j] = p.sig.indices(c);
      std::size_t slot = 0;
      while (slot + 1 < p.sig.base.size() && c >= p.sig.base[slot + 1]) {
        ++slot;
      }
      return std::make_tuple(std::max(i, j), i, j, slot);
    };
    std::stable_sort(cells.begin(), cells.end(),
                     [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
  }
  p.order = std::move(cells);
  return p;
}

using Prefix = std::vector<std::pair<std::uint32_t, Element>>;

class Engine {
 public:
  explicit Engine(Problem const& p)
      : p_(p),
        n_(p.sig.n),
        cells_(p.sig.cells, kUnknown),
        watches_(p.sig.cells),
        sat_(p.instances.size(), 0),
        scratch_(p.max_nodes) {}

  // Clears all assignments and evaluates every instance once.  Returns
  // false if the empty assignment is already contradictory.
  bool reset() {
    std::fill(cells_.begin(), cells_.end(), kUnknown);
    for (auto& w : watches_) {
      w.clear();
    }
    std::fill(sat_.begin(), sat_.end(), 0);
    trail_.clear();
    watch_trail_.clear();
    sat_trail_.clear();
    queue_.clear();
    max_seen_ = -1;
    for (std::uint32_t k = 0; k < p_.instances.size(); ++k) {
      if (!handle(k)) {
        return false;
      }
    }
    return propagate();
  }

  bool replay(Prefix const& prefix) {
    for (auto [cell, v] : prefix) {
      if (cells_[cell] != kUnknown) {
        if (cells_[cell] != static_cast<std::int8_t>(v)) {
          return false;
        }
        continue;
      }
      assign(cell, v);
      if (!propagate()) {
        return false;
      }
    }
    return true;
  }

  std::optional<std::uint32_t> next_cell() const {
    for (auto c : p_.order) {
      if (cells_[c] == kUnknown) {
        return static_cast<std::uint32_t>(c);
      }
    }
    return std::nullopt;
  }

  std::vector<Element> candidates(std::uint32_t cell) const {
    std::size_t limit = n_;
    if (p_.symmetry_breaking) {
      auto [i, j] = p_.sig.indices(cell);
      int top = std::max({max_seen_, int(i), int(j)});
      limit = std::min<std::size_t>(n_, static_cast<std::size_t>(top) + 2);
    }
    std::vector<Element> out;
    for (std::size_t v = 0; v < limit; ++v) {
      out.push_back(Element(v));
    }
    return out;
  }

  struct Mark {
    std::size_t trail, watch_trail, sat_trail;
    int max_seen;
  };
  Mark mark() const {
    return {trail_.size(), watch_trail_.size(), sat_trail_.size(), max_seen_};
  }
  void undo(Mark const& m) {
    while (trail_.size() > m.trail) {
      cells_[trail_.back()] = kUnknown;
      trail_.pop_back();
    }
    while (watch_trail_.size() > m.watch_trail) {
      watches_[watch_trail_.back()].pop_back();
      watch_trail_.pop_back();
    }
    while (sat_trail_.size() > m.sat_trail) {
      sat_[sat_trail_.back()] = 0;
      sat_trail_.pop_back();
    }
    max_seen_ = m.max_seen;
    queue_.clear();
  }

  bool decide(std::uint32_t cell, Element v) {
    assign(cell, v);
    return propagate();
  }

  // Complete assignment only.
  bool violates_forbid() const {
    if (!p_.forbid) {
      return true;
    }
    auto const& prog = *p_.forbid;
    std::size_t total = 1;
    for (std::size_t v = 0; v < prog.vars; ++v) {
      total *= n_;
    }
    std::array<Element, kMaxVars> vals{};
    for (std::size_t code = 0; code < total; ++code) {
      std::size_t c = code;
      for (std::size_t v = prog.vars; v-- > 0;) {
        vals[v] = Element(c % n_);
        c /= n_;
      }
      auto value = [&](std::int16_t operand) -> Element {
        return operand < 0 ? vals[-operand - 1] : Element(scratch_[operand]);
      };
      for (std::size_t k = 0; k < prog.nodes.size(); ++k) {
        auto const& node = prog.nodes[k];
        scratch_[k] = cells_[p_.sig.cell(node.slot, value(node.a), value(node.b))];
      }
      if (value(prog.lhs) != value(prog.rhs)) {
        return true;
      }
    }
    return false;
  }

  std::vector<Element> snapshot() const {
    return std::vector<Element>(cells_.begin(), cells_.end());
  }

 private:
  void assign(std::uint32_t cell, Element v) {
    cells_[cell] = static_cast<std::int8_t>(v);
    trail_.push_back(cell);
    queue_.push_back(cell);
    auto [i, j] = p_.sig.indices(cell);
    max_seen_ = std::max({max_seen_, int(i), int(j), int(v)});
  }

  bool propagate() {
    while (!queue_.empty()) {
      auto c = queue_.back();
      queue_.pop_back();
      for (std::size_t idx = 0; idx < watches_[c].size(); ++idx) {
        auto k = watches_[c][idx];
        if (sat_[k]) {
          continue;
        }
        if (!handle(k)) {
          queue_.clear();
          return false;
        }
      }
    }
    return true;
  }

  bool handle(std::uint32_t k) {
    auto r = eval(p_.instances[k]);
    switch (r.status) {
      case Status::violated:
        return false;
      case Status::satisfied:
        settle(k);
        return true;
      case Status::forced:
        assign(static_cast<std::uint32_t>(r.cell_a), r.value);
        settle(k);
        return true;
      case Status::pending:
        watch(static_cast<std::uint32_t>(r.cell_a), k);
        if (r.cell_b >= 0 && r.cell_b != r.cell_a) {
          watch(static_cast<std::uint32_t>(r.cell_b), k);
        }
        return true;
    }
    return true;
  }

  void settle(std::uint32_t k) {
    sat_[k] = 1;
    sat_trail_.push_back(k);
  }

  void watch(std::uint32_t cell, std::uint32_t k) {
    watches_[cell].push_back(k);
    watch_trail_.push_back(cell);
  }

  // scratch_[k] holds the node value, or kUnknown; blocked_[k] the first
  // unknown cell whose operands are known on the way to node k.
  EvalResult eval(Instance const& inst) {
    auto const& prog = p_.programs[inst.program];
    blocked_.resize(prog.nodes.size());
    auto value = [&](std::int16_t operand) -> int {
      return operand < 0 ? inst.vals[-operand - 1] : scratch_[operand];
    };
    auto block = [&](std::int16_t operand) -> std::int32_t {
      return operand < 0 ? -1 : blocked_[operand];
    };
    for (std::size_t k = 0; k < prog.nodes.size(); ++k) {
      auto const& node = prog.nodes[k];
      int a = value(node.a);
      int b = value(node.b);
      if (a < 0) {
        scratch_[k] = kUnknown;
        blocked_[k] = block(node.a);
      } else if (b < 0) {
        scratch_[k] = kUnknown;
        blocked_[k] = block(node.b);
      } else {
        auto cell = p_.sig.cell(node.slot, Element(a), Element(b));
        scratch_[k] = cells_[cell];
        blocked_[k] = static_cast<std::int32_t>(cell);
      }
    }
    int lv = value(prog.lhs);
    int rv = value(prog.rhs);
    if (lv >= 0 && rv >= 0) {
      return {lv == rv ? Status::satisfied : Status::violated};
    }
    // A side whose top lookup is the only unknown can be forced.
    auto top_ready = [&](std::int16_t root) {
      if (root < 0) {
        return false;
      }
      auto const& node = prog.nodes[root];
      return value(node.a) >= 0 && value(node.b) >= 0;
    };
    if (lv >= 0 && top_ready(prog.rhs)) {
      return {Status::forced, blocked_[prog.rhs], -1, Element(lv)};
    }
    if (rv >= 0 && top_ready(prog.lhs)) {
      return {Status::forced, blocked_[prog.lhs], -1, Element(rv)};
    }
    std::int32_t wa = lv < 0 ? block(prog.lhs) : -1;
    std::int32_t wb = rv < 0 ? block(prog.rhs) : -1;
    if (wa < 0) {
      std::swap(wa, wb);
    }
    return {Status::pending, wa, wb};
  }

  Problem const& p_;
  std::size_t n_;
  std::vector<std::int8_t> cells_;
  std::vector<std::vector<std::uint32_t>> watches_;
  std::vector<std::uint8_t> sat_;
  std::vector<std::uint32_t> trail_;
  std::vector<std::uint32_t> watch_trail_;
  std::vector<std::uint32_t> sat_trail_;
  std::vector<std::uint32_t> queue_;
  mutable std::vector<std::int8_t> scratch_;
  std::vector<std::int32_t> blocked_;
  int max_seen_ = -1;
};

struct Collector {
  std::vector<std::vector<Element>> models;
  std::uint64_t raw = 0;
  std::uint64_t nodes = 0;
  bool exhausted = true;
};

void dfs(Engine& e, Collector& out, std::uint64_t budget) {
  ++out.nodes;
  if (budget && out.nodes > budget) {
    out.exhausted = false;
    return;
  }
  auto cell = e.next_cell();
  if (!cell) {
    if (e.violates_forbid()) {
      ++out.raw;
      out.models.push_back(e.snapshot());
    }
    return;
  }
  for (auto v : e.candidates(*cell)) {
    auto m = e.mark();
    if (e.decide(*cell, v)) {
      dfs(e, out, budget);
    }
    e.undo(m);
    if (!out.exhausted) {
      return;
    }
  }
}

Algebra build_algebra(Signature const& sig, std::vector<Element> const& cells) {
  std::size_t const n = sig.n;
  std::size_t const nn = n * n;
  auto block = [&](std::size_t b) {
    return Table(n, std::vector<Element>(cells.begin() + b * nn,
                                         cells.begin() + (b + 1) * nn));
  };
  switch (sig.kind) {
    case AlgebraKind::bimagma:
      return FiniteBimagma(block(0), block(1));
    case AlgebraKind::unary_semigroup:
      return FiniteUnarySemigroup(
          block(0), std::vector<Element>(cells.begin() + nn, cells.end()));
    case AlgebraKind::semigroup:
      return FiniteSemigroup(block(0));
  }
  throw AlgebraError("unknown kind");
}

void check_bounds(AlgebraKind kind, std::size_t size, bool constrained,
                  SearchBounds const& b) {
  if (size == 0) {
    throw BoundExceeded("size must be at least 1");
  }
  std::size_t limit = 0;
  if (kind == AlgebraKind::bimagma) {
    limit = constrained ? b.constrained_bimagma : b.unconstrained_bimagma;
  } else {
    limit = constrained ? b.constrained_semigroup : b.semigroup;
  }
  if (size > limit) {
    throw BoundExceeded("size " + std::to_string(size) + " exceeds the bound " +
                        std::to_string(limit) + " for " +
                        (constrained ? "constrained " : "unconstrained ") +
                        to_string(kind) + " search");
  }
}

}  // namespace

SearchResult enumerate_models(AlgebraKind kind, std::size_t size,
                              std::vector<Identity> const& require,
                              std::optional<Identity> const& forbid,
                              Dedup dedup, SearchOptions const& options) {
  check_bounds(kind, size, !require.empty(), options.bounds);
  if (forbid) {
    // Surface signature problems before searching.
    Signature sig(kind, size);
    Compiler(sig).compile(*forbid);
  }
  Problem const problem = build_problem(kind, size, require, forbid,
                                        dedup != Dedup::none, options.order);

  std::size_t workers = options.workers;
  if (workers == 0) {
    workers = std::max(1u, std::thread::hardware_concurrency());
  }

  Collector total;
  std::vector<Prefix> prefixes;
  {
    Engine e(problem);
    if (e.reset()) {
      prefixes.push_back({});
      // Split the tree on its first decisions until there is enough work to
      // share; single-worker runs search the whole tree directly.
      std::size_t const want = workers > 1 ? 4 * workers : 1;
      while (prefixes.size() < want) {
        std::vector<Prefix> next;
        bool grew = false;
        for (auto const& pre : prefixes) {
          e.reset();
          e.replay(pre);
          auto cell = e.next_cell();
          if (!cell) {
            ++total.nodes;
            if (e.violates_forbid()) {
              ++total.raw;
              total.models.push_back(e.snapshot());
            }
            continue;
          }
          grew = true;
          for (auto v : e.candidates(*cell)) {
            auto m = e.mark();
            if (e.decide(*cell, v)) {
              auto ext = pre;
              ext.emplace_back(*cell, v);
              next.push_back(std::move(ext));
            }
            e.undo(m);
          }
        }
        prefixes = std::move(next);
        if (!grew || prefixes.empty()) {
          break;
        }
      }
    }
  }

  std::mutex mu;
  std::atomic<std::size_t> cursor{0};
  auto work = [&] {
    Engine e(problem);
    Collector local;
    while (true) {
      std::size_t i = cursor.fetch_add(1);
      if (i >= prefixes.size()) {
        break;
      }
      if (!e.reset() || !e.replay(prefixes[i])) {
        continue;
      }
      dfs(e, local, options.node_budget);
    }
    std::lock_guard lock(mu);
    total.raw += local.raw;
    total.nodes += local.nodes;
    total.exhausted = total.exhausted && local.exhausted;
    for (auto& m : local.models) {
      total.models.push_back(std::move(m));
    }
  };
  if (workers <= 1 || prefixes.size() <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < std::min(workers, prefixes.size()); ++w) {
      pool.emplace_back(work);
    }
    for (auto& t : pool) {
      t.join();
    }
  }

  SearchResult result;
  result.count_raw = total.raw;
  result.nodes = total.nodes;
  result.exhausted = total.exhausted;
  if (dedup == Dedup::none) {
    std::sort(total.models.begin(), total.models.end());
    total.models.erase(std::unique(total.models.begin(), total.models.end()),
                       total.models.end());
    for (auto const& m : total.models) {
      result.models.push_back(build_algebra(problem.sig, m));
    }
  } else {
    // Class key -> least iso form of a model actually found.  Under
    // iso_anti the key may be the opposite structure, which need not
    // satisfy the spec, so it is never emitted itself.
    std::map<CanonicalForm, CanonicalForm> classes;
    for (auto const& m : total.models) {
      auto a = build_algebra(problem.sig, m);
      auto form = canonical_form(a);
      auto key = dedup == Dedup::iso ? form : canonical_form_up_to_anti(a);
      auto [it, fresh] = classes.emplace(std::move(key), form);
      if (!fresh && form < it->second) {
        it->second = std::move(form);
      }
    }
    std::vector<CanonicalForm> reps;
    for (auto const& [key, form] : classes) {
      reps.push_back(form);
    }
    std::sort(reps.begin(), reps.end());
    for (auto const& f : reps) {
      result.models.push_back(from_canonical(f));
    }
  }
  if (options.limit && result.models.size() > *options.limit) {
    result.models.erase(result.models.begin() + static_cast<std::ptrdiff_t>(*options.limit),
                        result.models.end());
  }
  return result;
}

SearchResult enumerate(SearchSpec const& spec, SearchOptions const& options) {
  Registry const& reg = options.registry ? *options.registry : Registry::builtin();
  std::optional<Identity> forbid;
  if (spec.forbid) {
    forbid = reg.at(*spec.forbid);
  }
  return enumerate_models(spec.kind, spec.size, reg.resolve(spec.require),
                          forbid, spec.dedup, options);
}

std::optional<Algebra> find_witness(SearchSpec const& spec,
                                    SearchOptions const& options) {
  auto opts = options;
  opts.limit.reset();
  auto r = enumerate(spec, opts);
  if (r.models.empty()) {
    return std::nullopt;
  }
  return r.models.front();
}

std::uint64_t count_models(AlgebraKind kind, std::size_t size, Dedup dedup,
                           SearchOptions const& options) {
  auto opts = options;
  opts.limit.reset();
  return enumerate_models(kind, size, {}, std::nullopt, dedup, opts)
      .models.size();
}

}  // namespace divalg
