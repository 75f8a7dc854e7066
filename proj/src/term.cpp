#include "divalg/term.hpp"

#include <functional>
#include <sstream>

namespace divalg {

// ---------------------------------------------------------------------------
// Term

Term Term::variable(char name) {
  if (name < 'a' || name > 'z') {
    throw std::invalid_argument(std::string("bad variable name '") + name +
                                "'");
  }
  return Term(std::make_shared<Node const>(Node{Op::var, name, {}}));
}

Term Term::binary(Op op, Term a, Term b) {
  return Term(std::make_shared<Node const>(
      Node{op, 0, {std::move(a), std::move(b)}}));
}

Term Term::ld(Term a, Term b) { return binary(Op::ld, std::move(a), std::move(b)); }
Term Term::rd(Term a, Term b) { return binary(Op::rd, std::move(a), std::move(b)); }
Term Term::mul(Term a, Term b) { return binary(Op::mul, std::move(a), std::move(b)); }

Term Term::inv(Term a) {
  return Term(std::make_shared<Node const>(Node{Op::inv, 0, {std::move(a)}}));
}

std::size_t Term::arity() const noexcept { return node_->kids.size(); }

Term const& Term::child(std::size_t i) const {
  if (i >= node_->kids.size()) {
    throw PositionError("child index " + std::to_string(i) + " out of range");
  }
  return node_->kids[i];
}

void Term::collect_vars(std::set<char>& out) const {
  if (is_var()) {
    out.insert(var_name());
    return;
  }
  for (auto const& k : node_->kids) {
    k.collect_vars(out);
  }
}

std::set<char> Term::vars() const {
  std::set<char> out;
  collect_vars(out);
  return out;
}

std::size_t Term::node_count() const {
  std::size_t total = 1;
  for (auto const& k : node_->kids) {
    total += k.node_count();
  }
  return total;
}

bool Term::contains(Op op) const {
  if (node_->op == op) {
    return true;
  }
  for (auto const& k : node_->kids) {
    if (k.contains(op)) {
      return true;
    }
  }
  return false;
}

namespace {

char op_char(Op op) {
  switch (op) {
    case Op::ld:
      return '\\';
    case Op::rd:
      return '/';
    case Op::mul:
      return '*';
    default:
      return '?';
  }
}

void print(std::ostream& os, Term const& t, bool top) {
  switch (t.op()) {
    case Op::var:
      os << t.var_name();
      return;
    case Op::inv: {
      auto const& a = t.child(0);
      if (a.arity() == 2) {
        os << '(';
        print(os, a, true);
        os << ')';
      } else {
        print(os, a, false);
      }
      os << '\'';
      return;
    }
    default:
      if (!top) {
        os << '(';
      }
      print(os, t.child(0), false);
      os << op_char(t.op());
      print(os, t.child(1), false);
      if (!top) {
        os << ')';
      }
  }
}

}  // namespace

std::string Term::to_string() const {
  std::ostringstream os;
  print(os, *this, true);
  return os.str();
}

bool operator==(Term const& a, Term const& b) {
  if (a.node_ == b.node_) {
    return true;
  }
  if (a.node_->op != b.node_->op || a.node_->name != b.node_->name) {
    return false;
  }
  auto const& ka = a.node_->kids;
  auto const& kb = b.node_->kids;
  for (std::size_t i = 0; i < ka.size(); ++i) {
    if (!(ka[i] == kb[i])) {
      return false;
    }
  }
  return true;
}

bool operator<(Term const& a, Term const& b) {
  return a.to_string() < b.to_string();
}

// ---------------------------------------------------------------------------
// Positions and substitutions

Term const& subterm_at(Term const& t, Position const& p) {
  Term const* cur = &t;
  for (auto i : p) {
    if (i >= cur->arity()) {
      throw PositionError("position " + to_string(p) + " is not in " +
                          t.to_string());
    }
    cur = &cur->child(i);
  }
  return *cur;
}

namespace {

Term rebuild(Term const& t, std::vector<Term> kids) {
  switch (t.op()) {
    case Op::inv:
      return Term::inv(std::move(kids[0]));
    case Op::var:
      return t;
    default:
      return Term::binary(t.op(), std::move(kids[0]), std::move(kids[1]));
  }
}

Term replace_from(Term const& t, Position const& p, std::size_t depth,
                  Term const& replacement, Position const& full,
                  Term const& root) {
  if (depth == p.size()) {
    return replacement;
  }
  if (p[depth] >= t.arity()) {
    throw PositionError("position " + to_string(full) + " is not in " +
                        root.to_string());
  }
  std::vector<Term> kids;
  for (std::size_t i = 0; i < t.arity(); ++i) {
    kids.push_back(i == p[depth] ? replace_from(t.child(i), p, depth + 1,
                                                replacement, full, root)
                                 : t.child(i));
  }
  return rebuild(t, std::move(kids));
}

void collect_positions(Term const& t, Position& cur, std::vector<Position>& out) {
  out.push_back(cur);
  for (std::size_t i = 0; i < t.arity(); ++i) {
    cur.push_back(i);
    collect_positions(t.child(i), cur, out);
    cur.pop_back();
  }
}

}  // namespace

Term replace_at(Term const& t, Position const& p, Term replacement) {
  return replace_from(t, p, 0, replacement, p, t);
}

Term instantiate(Term const& t, Substitution const& s) {
  if (t.is_var()) {
    auto it = s.find(t.var_name());
    if (it == s.end()) {
      throw UnboundVariable(std::string("variable ") + t.var_name() +
                            " is not bound by the substitution");
    }
    return it->second;
  }
  std::vector<Term> kids;
  for (std::size_t i = 0; i < t.arity(); ++i) {
    kids.push_back(instantiate(t.child(i), s));
  }
  return rebuild(t, std::move(kids));
}

std::string to_string(Position const& p) {
  if (p.empty()) {
    return "root";
  }
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) {
      out += '.';
    }
    out += std::to_string(p[i]);
  }
  return out;
}

std::vector<Position> positions(Term const& t) {
  std::vector<Position> out;
  Position cur;
  collect_positions(t, cur, out);
  return out;
}

bool match(Term const& pattern, Term const& t, Substitution& s) {
  if (pattern.is_var()) {
    auto [it, fresh] = s.emplace(pattern.var_name(), t);
    return fresh || it->second == t;
  }
  if (pattern.op() != t.op()) {
    return false;
  }
  for (std::size_t i = 0; i < pattern.arity(); ++i) {
    if (!match(pattern.child(i), t.child(i), s)) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Identities

std::string to_string(Side s) {
  switch (s) {
    case Side::semigroup:
      return "semigroup";
    case Side::bimagma:
      return "bimagma";
    case Side::mixed:
      return "mixed";
  }
  return "?";
}

Side infer_side(Term const& lhs, Term const& rhs) {
  bool const division = lhs.contains(Op::ld) || lhs.contains(Op::rd) ||
                        rhs.contains(Op::ld) || rhs.contains(Op::rd);
  bool const product = lhs.contains(Op::mul) || rhs.contains(Op::mul);
  if (division && product) {
    return Side::mixed;
  }
  return division ? Side::bimagma : Side::semigroup;
}

std::set<char> Identity::vars() const {
  auto out = lhs.vars();
  rhs.collect_vars(out);
  return out;
}

std::string Identity::to_string() const {
  return lhs.to_string() + " = " + rhs.to_string();
}

// ---------------------------------------------------------------------------
// Parser

SyntaxError::SyntaxError(std::size_t position, std::string expected)
    : std::runtime_error("syntax error at " + std::to_string(position) +
                         ": expected " + expected),
      position_(position),
      expected_(std::move(expected)) {}

AmbiguousTerm::AmbiguousTerm(std::size_t position)
    : SyntaxError(position, "parentheses around mixed binary operators") {}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Term group() {
    skip();
    std::size_t const start = pos_;
    std::vector<Term> operands{term()};
    std::vector<Op> ops;
    while (true) {
      skip();
      if (at_end()) {
        break;
      }
      Op op;
      switch (text_[pos_]) {
        case '\\':
          op = Op::ld;
          break;
        case '/':
          op = Op::rd;
          break;
        case '*':
          op = Op::mul;
          break;
        default:
          goto done;
      }
      ++pos_;
      ops.push_back(op);
      operands.push_back(term());
    }
  done:
    if (ops.size() > 1) {
      for (auto op : ops) {
        if (op != Op::mul) {
          throw AmbiguousTerm(start);
        }
      }
    }
    Term acc = operands[0];
    for (std::size_t i = 0; i < ops.size(); ++i) {
      acc = Term::binary(ops[i], acc, operands[i + 1]);
    }
    return acc;
  }

  Term term() {
    skip();
    Term t = atom();
    while (true) {
      skip();
      if (!at_end() && text_[pos_] == '\'') {
        ++pos_;
        t = Term::inv(t);
      } else {
        return t;
      }
    }
  }

  void expect(char c) {
    skip();
    if (at_end() || text_[pos_] != c) {
      throw SyntaxError(pos_, std::string("'") + c + "'");
    }
    ++pos_;
  }

  void expect_end() {
    skip();
    if (!at_end()) {
      throw SyntaxError(pos_, "end of input");
    }
  }

 private:
  Term atom() {
    skip();
    if (at_end()) {
      throw SyntaxError(pos_, "variable or '('");
    }
    char const c = text_[pos_];
    if (c >= 'a' && c <= 'z') {
      ++pos_;
      return Term::variable(c);
    }
    if (c == '(') {
      ++pos_;
      Term t = group();
      expect(')');
      return t;
    }
    throw SyntaxError(pos_, "variable or '('");
  }

  void skip() {
    while (!at_end() && (text_[pos_] == ' ' || text_[pos_] == '\t' ||
                         text_[pos_] == '\r' || text_[pos_] == '\n')) {
      ++pos_;
    }
  }
  bool at_end() const { return pos_ >= text_.size(); }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Term parse_term(std::string_view text) {
  Parser p(text);
  Term t = p.group();
  p.expect_end();
  return t;
}

Identity parse_identity(std::string_view text, std::string name) {
  Parser p(text);
  Term lhs = p.group();
  p.expect('=');
  Term rhs = p.group();
  p.expect_end();
  Side side = infer_side(lhs, rhs);
  return Identity{std::move(name), std::move(lhs), std::move(rhs), side};
}

// ---------------------------------------------------------------------------
// Alpha equivalence

namespace {

bool alpha(Term const& a, Term const& b, std::map<char, char>& fwd,
           std::map<char, char>& back) {
  if (a.op() != b.op()) {
    return false;
  }
  if (a.is_var()) {
    auto [f, f_new] = fwd.emplace(a.var_name(), b.var_name());
    auto [r, r_new] = back.emplace(b.var_name(), a.var_name());
    return f->second == b.var_name() && r->second == a.var_name();
  }
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (!alpha(a.child(i), b.child(i), fwd, back)) {
      return false;
    }
  }
  return true;
}

}  // namespace

bool alpha_equivalent(Term const& a, Term const& b) {
  std::map<char, char> fwd, back;
  return alpha(a, b, fwd, back);
}

bool alpha_equivalent(Identity const& a, Identity const& b) {
  std::map<char, char> fwd, back;
  return alpha(a.lhs, b.lhs, fwd, back) && alpha(a.rhs, b.rhs, fwd, back);
}

// ---------------------------------------------------------------------------
// Evaluation

std::size_t Assignment::index(char var) {
  if (var < 'a' || var > 'z') {
    throw std::invalid_argument(std::string("bad variable name '") + var + "'");
  }
  return static_cast<std::size_t>(var - 'a');
}

Element Assignment::get(char var) const {
  int v = values_[index(var)];
  if (v < 0) {
    throw UnboundVariable(std::string("variable ") + var + " is unassigned");
  }
  return static_cast<Element>(v);
}

std::string Assignment::to_string() const {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] >= 0) {
      if (!first) {
        out += ", ";
      }
      first = false;
      out += static_cast<char>('a' + i);
      out += '=';
      out += std::to_string(values_[i]);
    }
  }
  return out + "}";
}

namespace {

struct Evaluator {
  Algebra const& algebra;
  Assignment const& env;
  PrimeExpansion mode;

  Element operator()(Term const& t) const {
    if (t.is_var()) {
      return env.get(t.var_name());
    }
    switch (algebra.index()) {
      case 0:
        return on_semigroup(std::get<FiniteSemigroup>(algebra), t);
      case 1:
        return on_unary(std::get<FiniteUnarySemigroup>(algebra), t);
      default:
        return on_bimagma(std::get<FiniteBimagma>(algebra), t);
    }
  }

  Element on_semigroup(FiniteSemigroup const& s, Term const& t) const {
    if (t.op() != Op::mul) {
      throw SignatureMismatch("term " + t.to_string() +
                              " uses an operation a plain semigroup lacks");
    }
    return s.mul((*this)(t.child(0)), (*this)(t.child(1)));
  }

  Element on_unary(FiniteUnarySemigroup const& s, Term const& t) const {
    switch (t.op()) {
      case Op::mul:
        return s.mul((*this)(t.child(0)), (*this)(t.child(1)));
      case Op::inv:
        return s.inv((*this)(t.child(0)));
      case Op::ld:
        return s.mul(s.inv((*this)(t.child(0))), (*this)(t.child(1)));
      case Op::rd:
        return s.mul((*this)(t.child(0)), s.inv((*this)(t.child(1))));
      default:
        throw SignatureMismatch("unexpected node");
    }
  }

  Element on_bimagma(FiniteBimagma const& b, Term const& t) const {
    switch (t.op()) {
      case Op::ld:
        return b.ld((*this)(t.child(0)), (*this)(t.child(1)));
      case Op::rd:
        return b.rd((*this)(t.child(0)), (*this)(t.child(1)));
      case Op::inv: {
        Element x = (*this)(t.child(0));
        return mode == PrimeExpansion::left ? b.rd(b.ld(x, x), x)
                                            : b.ld(x, b.rd(x, x));
      }
      case Op::mul:
        throw SignatureMismatch("term " + t.to_string() +
                                " uses '*' on a bimagma");
      default:
        throw SignatureMismatch("unexpected node");
    }
  }
};

bool term_fits(Term const& t, AlgebraKind k) {
  switch (k) {
    case AlgebraKind::semigroup:
      return !t.contains(Op::ld) && !t.contains(Op::rd) && !t.contains(Op::inv);
    case AlgebraKind::unary_semigroup:
      return true;
    case AlgebraKind::bimagma:
      return !t.contains(Op::mul);
  }
  return false;
}

}  // namespace

Element eval_term(Term const& t, Algebra const& a, Assignment const& env,
                  PrimeExpansion mode) {
  return Evaluator{a, env, mode}(t);
}

void check_signature(Identity const& id, Algebra const& a) {
  auto const k = kind_of(a);
  if (!term_fits(id.lhs, k) || !term_fits(id.rhs, k)) {
    throw SignatureMismatch("identity " +
                            (id.name.empty() ? id.to_string() : id.name) +
                            " cannot be evaluated on a " + to_string(k));
  }
}

std::optional<Assignment> find_violation(Identity const& id, Algebra const& a,
                                         PrimeExpansion mode) {
  check_signature(id, a);
  auto const vars = id.vars();
  std::vector<char> const order(vars.begin(), vars.end());
  std::size_t const n = size_of(a);
  std::vector<Element> values(order.size(), 0);
  Assignment env;
  Evaluator const eval{a, env, mode};
  // Odometer with the last variable fastest: lexicographic order.
  while (true) {
    for (std::size_t i = 0; i < order.size(); ++i) {
      env.set(order[i], values[i]);
    }
    if (eval(id.lhs) != eval(id.rhs)) {
      return env;
    }
    std::size_t k = order.size();
    while (true) {
      if (k == 0) {
        return std::nullopt;
      }
      --k;
      if (++values[k] < n) {
        break;
      }
      values[k] = 0;
    }
  }
}

bool holds(Identity const& id, Algebra const& a, PrimeExpansion mode) {
  return !find_violation(id, a, mode).has_value();
}

Term lower_for_unary_semigroup(Term const& t) {
  switch (t.op()) {
    case Op::var:
      return t;
    case Op::inv:
      return Term::inv(lower_for_unary_semigroup(t.child(0)));
    case Op::mul:
      return Term::mul(lower_for_unary_semigroup(t.child(0)),
                       lower_for_unary_semigroup(t.child(1)));
    case Op::ld:
      return Term::mul(Term::inv(lower_for_unary_semigroup(t.child(0))),
                       lower_for_unary_semigroup(t.child(1)));
    case Op::rd:
      return Term::mul(lower_for_unary_semigroup(t.child(0)),
                       Term::inv(lower_for_unary_semigroup(t.child(1))));
  }
  return t;
}

Term lower_for_bimagma(Term const& t, PrimeExpansion mode) {
  switch (t.op()) {
    case Op::var:
      return t;
    case Op::mul:
      throw SignatureMismatch("term " + t.to_string() + " uses '*' on a bimagma");
    case Op::inv: {
      Term x = lower_for_bimagma(t.child(0), mode);
      return mode == PrimeExpansion::left ? Term::rd(Term::ld(x, x), x)
                                          : Term::ld(x, Term::rd(x, x));
    }
    default:
      return Term::binary(t.op(), lower_for_bimagma(t.child(0), mode),
                          lower_for_bimagma(t.child(1), mode));
  }
}

}  // namespace divalg
