#include "divalg/proof.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace divalg {

std::string to_string(RejectReason r) {
  switch (r) {
    case RejectReason::no_match:
      return "NoMatch";
    case RejectReason::bad_position:
      return "BadPosition";
    case RejectReason::unknown_rule:
      return "UnknownRule";
    case RejectReason::result_mismatch:
      return "ResultMismatch";
    case RejectReason::incomplete:
      return "Incomplete";
    case RejectReason::structural:
      return "StructuralError";
  }
  return "?";
}

ProofSyntaxError::ProofSyntaxError(std::size_t line, std::string const& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

std::string ProofVerdict::to_string() const {
  if (accepted) {
    return "Accepted";
  }
  std::string s = "Rejected";
  if (step) {
    s += " at step " + std::to_string(*step + 1);
  }
  return s + " (" + divalg::to_string(reason) + "): " + detail;
}

namespace {

std::string_view trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) {
    return {};
  }
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool starts_with_word(std::string_view s, std::string_view w) {
  return s.size() >= w.size() && s.substr(0, w.size()) == w &&
         (s.size() == w.size() || s[w.size()] == ' ' || s[w.size()] == '\t');
}

std::string next_word(std::string_view& s) {
  s = trim(s);
  auto end = s.find_first_of(" \t");
  std::string w(s.substr(0, end));
  s = end == std::string_view::npos ? std::string_view{} : trim(s.substr(end));
  return w;
}

Position parse_position(std::string const& text, std::size_t line) {
  if (text == "root") {
    return {};
  }
  Position p;
  std::size_t i = 0;
  while (i < text.size()) {
    auto dot = text.find('.', i);
    auto part = text.substr(i, dot == std::string::npos ? std::string::npos : dot - i);
    if (part.empty() || !std::all_of(part.begin(), part.end(), ::isdigit)) {
      throw ProofSyntaxError(line, "bad position '" + text + "'");
    }
    p.push_back(std::stoul(part));
    if (dot == std::string::npos) {
      break;
    }
    i = dot + 1;
  }
  return p;
}

Term parse_term_at(std::string_view text, std::size_t line) {
  try {
    return parse_term(text);
  } catch (SyntaxError const& e) {
    throw ProofSyntaxError(line, std::string(e.what()) + " in '" + std::string(text) + "'");
  }
}

Substitution parse_substitution(std::string_view text, std::size_t line) {
  Substitution s;
  std::size_t i = 0;
  while (i <= text.size()) {
    auto comma = text.find(',', i);
    auto part = trim(text.substr(i, comma == std::string_view::npos ? text.npos : comma - i));
    if (!part.empty()) {
      auto eq = part.find(":=");
      auto var = trim(part.substr(0, eq));
      if (eq == std::string_view::npos || var.size() != 1 || var[0] < 'a' || var[0] > 'z') {
        throw ProofSyntaxError(line, "bad binding '" + std::string(part) + "'");
      }
      if (s.contains(var[0])) {
        throw ProofSyntaxError(line, "variable bound twice");
      }
      s.emplace(var[0], parse_term_at(part.substr(eq + 2), line));
    }
    if (comma == std::string_view::npos) {
      break;
    }
    i = comma + 1;
  }
  return s;
}

struct DraftStep {
  std::string rule;
  std::optional<Direction> direction;
  std::optional<Position> position;
  std::optional<Substitution> substitution;
  Term result = Term::variable('x');
  bool synthetic = false;
};

DraftStep parse_step_line(std::string_view body, std::size_t line) {
  auto arrow = body.find("->");
  if (arrow == std::string_view::npos) {
    throw ProofSyntaxError(line, "step needs '-> <term>'");
  }
  DraftStep d;
  auto rhs = trim(body.substr(arrow + 2));
  constexpr std::string_view kSynthetic = "[synthetic]";
  if (rhs.size() >= kSynthetic.size() &&
      rhs.substr(rhs.size() - kSynthetic.size()) == kSynthetic) {
    d.synthetic = true;
    rhs = trim(rhs.substr(0, rhs.size() - kSynthetic.size()));
  }
  d.result = parse_term_at(rhs, line);

  std::string_view lhs = trim(body.substr(0, arrow));
  d.rule = next_word(lhs);
  if (d.rule.empty()) {
    throw ProofSyntaxError(line, "step needs a rule name");
  }
  while (!lhs.empty()) {
    if (starts_with_word(lhs, "l2r") || starts_with_word(lhs, "r2l")) {
      d.direction = next_word(lhs) == "l2r" ? Direction::l2r : Direction::r2l;
    } else if (starts_with_word(lhs, "at")) {
      next_word(lhs);
      d.position = parse_position(next_word(lhs), line);
    } else if (starts_with_word(lhs, "with")) {
      next_word(lhs);
      d.substitution = parse_substitution(lhs, line);
      lhs = {};
    } else {
      throw ProofSyntaxError(line, "unexpected '" + std::string(lhs) + "'");
    }
  }
  return d;
}

struct Header {
  std::string name;
  std::vector<std::string> hypotheses;
  Identity goal;
};

Header parse_header(std::string_view body, std::size_t line) {
  body = trim(body.substr(5));
  auto goal_at = body.find(" goal ");
  if (goal_at == std::string_view::npos) {
    throw ProofSyntaxError(line, "proof header needs 'goal <identity>'");
  }
  auto head = trim(body.substr(0, goal_at));
  std::string name = next_word(head);
  std::vector<std::string> hyps;
  if (starts_with_word(head, "from")) {
    next_word(head);
    hyps = split_names(head);
  } else if (!head.empty()) {
    throw ProofSyntaxError(line, "expected 'from' or 'goal'");
  }
  try {
    return {name, hyps, parse_identity(body.substr(goal_at + 6), name)};
  } catch (SyntaxError const& e) {
    throw ProofSyntaxError(line, e.what());
  }
}

// Body text without its comment.
std::string_view strip_comment(std::string_view raw) {
  return trim(raw.substr(0, raw.find('#')));
}

}  // namespace

ProofSuite parse_suite(std::string_view text) {
  ProofSuite suite;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    auto body = strip_comment(raw);
    if (body.empty()) {
      continue;
    }
    if (starts_with_word(body, "proof")) {
      auto h = parse_header(body, line);
      suite.proofs.push_back(Proof{h.name, h.hypotheses, h.goal, {}, line});
      continue;
    }
    if (suite.proofs.empty()) {
      throw ProofSyntaxError(line, "step outside a proof");
    }
    auto d = parse_step_line(body, line);
    if (!d.direction || !d.position) {
      throw ProofSyntaxError(line, "step needs a direction and a position");
    }
    suite.proofs.back().steps.push_back(ProofStep{
        d.rule, *d.direction, *d.position, d.substitution.value_or(Substitution{}),
        d.result, d.synthetic, line});
  }
  return suite;
}

ProofSuite read_suite_file(std::string const& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_suite(ss.str());
}

std::string write_step(ProofStep const& s) {
  std::string out = s.rule;
  out += s.direction == Direction::l2r ? " l2r" : " r2l";
  out += " at " + to_string(s.position);
  if (!s.substitution.empty()) {
    out += " with ";
    bool first = true;
    for (auto const& [v, t] : s.substitution) {
      if (!first) {
        out += ", ";
      }
      first = false;
      out += std::string(1, v) + ":=" + t.to_string();
    }
  }
  out += " -> " + s.result.to_string();
  if (s.synthetic) {
    out += " [synthetic]";
  }
  return out;
}

Term apply_step(Term const& t, ProofStep const& s, Identity const& rule) {
  Term const& src = s.direction == Direction::l2r ? rule.lhs : rule.rhs;
  Term const& tgt = s.direction == Direction::l2r ? rule.rhs : rule.lhs;
  Term const* here = nullptr;
  try {
    here = &subterm_at(t, s.position);
  } catch (PositionError const&) {
    throw ProofError(RejectReason::bad_position,
                     "position " + to_string(s.position) + " not in " + t.to_string());
  }
  try {
    Term from = instantiate(src, s.substitution);
    if (!(from == *here)) {
      throw ProofError(RejectReason::no_match,
                       rule.name + " does not match at " + to_string(s.position) +
                           ": expected " + from.to_string() + ", found " +
                           here->to_string());
    }
    return replace_at(t, s.position, instantiate(tgt, s.substitution));
  } catch (UnboundVariable const& e) {
    throw ProofError(RejectReason::no_match,
                     rule.name + ": substitution incomplete (" + e.what() + ")");
  }
}

SuiteContext::SuiteContext(ProofSuite const& suite, Registry const& reg)
    : suite_(suite), reg_(reg), accepted_(suite.proofs.size(), false) {
  for (std::size_t i = 0; i < suite.proofs.size(); ++i) {
    names_.try_emplace(suite.proofs[i].name, i);
  }
}

std::optional<std::size_t> SuiteContext::index_of(std::string const& name) const {
  auto it = names_.find(name);
  if (it == names_.end()) {
    return std::nullopt;
  }
  return it->second;
}

bool SuiteContext::usable(std::size_t lemma, std::size_t in) const {
  if (lemma >= in || !accepted_[lemma]) {
    return false;
  }
  auto const& hyps = suite_.proofs[in].hypotheses;
  for (auto const& h : suite_.proofs[lemma].hypotheses) {
    if (std::find(hyps.begin(), hyps.end(), h) != hyps.end()) {
      continue;
    }
    auto k = index_of(h);
    if (!k || *k >= lemma || !usable(*k, in)) {
      return false;
    }
  }
  return true;
}

Identity const& SuiteContext::rule(std::size_t index, std::string const& name) const {
  auto const& p = suite_.proofs[index];
  auto const later = index_of(name);
  if (later && *later >= index) {
    throw ProofError(RejectReason::structural,
                     "'" + name + "' refers to a proof that is not earlier in the suite");
  }
  bool const is_hyp =
      std::find(p.hypotheses.begin(), p.hypotheses.end(), name) != p.hypotheses.end();
  if (is_hyp) {
    if (reg_.contains(name) && !reg_.entry(name).definition) {
      return reg_.at(name);
    }
    if (later && accepted_[*later]) {
      return suite_.proofs[*later].goal;
    }
    throw ProofError(RejectReason::unknown_rule,
                     "hypothesis '" + name + "' is not an identity or accepted lemma");
  }
  if (name == "ldrd-L" || name == "ldrd-R" || name == "assoc") {
    return reg_.at(name);
  }
  if (name == "prime-def-L" || name == "prime-def-R") {
    if (prime_definitions(index)) {
      return reg_.at(name);
    }
    throw ProofError(RejectReason::unknown_rule,
                     name + " needs B1 or the lemma 'same' in " + p.name);
  }
  if (later) {
    if (usable(*later, index)) {
      return suite_.proofs[*later].goal;
    }
    throw ProofError(RejectReason::unknown_rule,
                     "lemma '" + name + "' is not usable under the hypotheses of " + p.name);
  }
  throw ProofError(RejectReason::unknown_rule,
                   "'" + name + "' is neither a hypothesis nor an earlier lemma");
}

bool SuiteContext::prime_definitions(std::size_t index) const {
  auto const& hyps = suite_.proofs[index].hypotheses;
  auto has = [&](char const* h) {
    return std::find(hyps.begin(), hyps.end(), h) != hyps.end();
  };
  auto same = index_of("same");
  return has("B1") || (same && *same < index && (has("same") || usable(*same, index)));
}

std::vector<Identity> SuiteContext::hypotheses(std::size_t index) const {
  std::vector<Identity> out;
  for (auto const& h : suite_.proofs[index].hypotheses) {
    if (reg_.contains(h) && !reg_.entry(h).definition) {
      out.push_back(reg_.at(h));
    } else if (auto k = index_of(h); k && *k < index) {
      out.push_back(suite_.proofs[*k].goal);
    } else {
      throw ProofError(RejectReason::structural, "unresolved hypothesis '" + h + "'");
    }
  }
  return out;
}

ProofVerdict check_proof(SuiteContext const& ctx, std::size_t index) {
  auto const& p = ctx.suite().proofs.at(index);
  ProofVerdict v;
  try {
    for (std::size_t i = 0; i < index; ++i) {
      if (ctx.suite().proofs[i].name == p.name) {
        throw ProofError(RejectReason::structural, "duplicate proof name '" + p.name + "'");
      }
    }
    ctx.hypotheses(index);
  } catch (ProofError const& e) {
    v.reason = e.reason();
    v.detail = e.what();
    return v;
  }
  Term t = p.goal.lhs;
  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    auto const& s = p.steps[i];
    try {
      Term next = apply_step(t, s, ctx.rule(index, s.rule));
      if (!(next == s.result)) {
        throw ProofError(RejectReason::result_mismatch,
                         "rewrite gives " + next.to_string() + ", file says " +
                             s.result.to_string());
      }
      t = next;
    } catch (ProofError const& e) {
      v.step = i;
      v.reason = e.reason();
      v.detail = e.what();
      return v;
    }
  }
  if (!(t == p.goal.rhs)) {
    v.reason = RejectReason::incomplete;
    v.detail = "chain ends at " + t.to_string() + ", goal is " + p.goal.rhs.to_string();
    return v;
  }
  v.accepted = true;
  return v;
}

std::vector<ProofResult> check_suite(ProofSuite const& suite, Registry const& reg) {
  SuiteContext ctx(suite, reg);
  std::vector<ProofResult> out;
  for (std::size_t i = 0; i < suite.proofs.size(); ++i) {
    auto v = check_proof(ctx, i);
    ctx.mark_accepted(i, v.accepted);
    out.push_back({suite.proofs[i].name, suite.proofs[i].steps.size(), v});
  }
  return out;
}

namespace {

// The kind a proof is read on and the hypotheses models must satisfy.
std::pair<AlgebraKind, std::vector<Identity>> soundness_frame(SuiteContext const& ctx,
                                                              std::size_t index) {
  auto const& p = ctx.suite().proofs.at(index);
  auto hyps = ctx.hypotheses(index);
  bool semigroup = p.goal.lhs.contains(Op::mul) || p.goal.rhs.contains(Op::mul);
  for (auto const& h : hyps) {
    semigroup = semigroup || h.lhs.contains(Op::mul) || h.rhs.contains(Op::mul);
  }
  for (auto const& s : p.steps) {
    semigroup = semigroup || s.rule == "ldrd-L" || s.rule == "ldrd-R" || s.rule == "assoc";
  }
  if (semigroup && ctx.prime_definitions(index)) {
    hyps.push_back(Registry::builtin().at("prime-def-L"));
    hyps.push_back(Registry::builtin().at("prime-def-R"));
  }
  return {semigroup ? AlgebraKind::unary_semigroup : AlgebraKind::bimagma,
          std::move(hyps)};
}

}  // namespace

SoundnessReport check_soundness(SuiteContext const& ctx, std::size_t index,
                                std::size_t n, SearchOptions const& options) {
  auto const& p = ctx.suite().proofs.at(index);
  SoundnessReport rep;
  rep.name = p.name;
  auto [kind, hyps] = soundness_frame(ctx, index);
  rep.kind = kind;
  for (std::size_t size = 1; size <= n; ++size) {
    auto r = enumerate_models(rep.kind, size, hyps, std::nullopt, Dedup::iso, options);
    for (auto const& m : r.models) {
      ++rep.models;
      if (auto w = find_violation(p.goal, m)) {
        rep.counterexample = to_string(rep.kind) + " of size " + std::to_string(size) +
                             " violates the goal at " + w->to_string();
        return rep;
      }
    }
  }
  return rep;
}

SoundnessReport check_soundness_on(SuiteContext const& ctx, std::size_t index,
                                   std::vector<std::pair<std::string, Algebra>> const& models) {
  auto const& p = ctx.suite().proofs.at(index);
  SoundnessReport rep;
  rep.name = p.name;
  auto [kind, hyps] = soundness_frame(ctx, index);
  rep.kind = kind;
  for (auto const& [label, m] : models) {
    if (kind_of(m) != kind ||
        !std::all_of(hyps.begin(), hyps.end(),
                     [&](Identity const& h) { return holds(h, m); })) {
      continue;
    }
    ++rep.models;
    if (auto w = find_violation(p.goal, m)) {
      rep.counterexample = label + " violates the goal at " + w->to_string();
      return rep;
    }
  }
  return rep;
}

std::string annotate(std::string_view draft, Registry const& reg) {
  std::istringstream in{std::string(draft)};
  std::ostringstream out;
  std::map<std::string, Identity> lemmas;
  std::optional<Term> current;
  std::string raw;
  std::size_t line = 0;

  auto lookup = [&](std::string const& name) -> Identity const& {
    if (auto it = lemmas.find(name); it != lemmas.end()) {
      return it->second;
    }
    if (reg.contains(name)) {
      return reg.at(name);
    }
    throw ProofSyntaxError(line, "unknown rule '" + name + "'");
  };

  while (std::getline(in, raw)) {
    ++line;
    auto hash = raw.find('#');
    auto body = trim(std::string_view(raw).substr(0, hash));
    std::string comment =
        hash == std::string::npos ? std::string{} : raw.substr(hash);
    if (body.empty()) {
      out << raw << '\n';
      continue;
    }
    if (starts_with_word(body, "proof")) {
      auto h = parse_header(body, line);
      lemmas.insert_or_assign(h.name, h.goal);
      current = h.goal.lhs;
      out << raw << '\n';
      continue;
    }
    if (!current) {
      throw ProofSyntaxError(line, "step outside a proof");
    }
    auto d = parse_step_line(body, line);
    Identity const& rule = lookup(d.rule);
    std::optional<ProofStep> found;

    std::vector<Direction> dirs;
    if (d.direction) {
      dirs = {*d.direction};
    } else {
      dirs = {Direction::l2r, Direction::r2l};
    }
    std::vector<Position> where;
    if (d.position) {
      where = {*d.position};
    } else {
      where = positions(*current);
    }
    for (auto dir : dirs) {
      Term const& src = dir == Direction::l2r ? rule.lhs : rule.rhs;
      Term const& tgt = dir == Direction::l2r ? rule.rhs : rule.lhs;
      for (auto const& pos : where) {
        if (found) {
          break;
        }
        Substitution s = d.substitution.value_or(Substitution{});
        try {
          if (!match(src, subterm_at(*current, pos), s)) {
            continue;
          }
          // Variables only on the target side are read off the result.
          if (!match(tgt, subterm_at(d.result, pos), s)) {
            continue;
          }
          ProofStep step{d.rule, dir, pos, s, d.result, d.synthetic, line};
          if (apply_step(*current, step, rule) == d.result) {
            found = step;
          }
        } catch (PositionError const&) {
        } catch (ProofError const&) {
        }
      }
    }
    if (!found) {
      throw ProofSyntaxError(line, "no rewrite by " + d.rule + " turns " +
                                       current->to_string() + " into " +
                                       d.result.to_string());
    }
    // Keep only the rule's own variables.
    std::set<char> vars = rule.vars();
    for (auto it = found->substitution.begin(); it != found->substitution.end();) {
      it = vars.contains(it->first) ? std::next(it) : found->substitution.erase(it);
    }
    out << write_step(*found);
    if (!comment.empty()) {
      out << "  " << comment;
    }
    out << '\n';
    current = d.result;
  }
  return out.str();
}

}  // namespace divalg
