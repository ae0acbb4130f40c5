#pragma once

// The declarative semantics: satisfaction relations between valuations,
// ground terms and rule parts, side-condition validity, rule
// well-formedness, and the one-step relation between configurations.
//
// Everything here is executable and deliberately implemented on a different
// code path than the interpreter (see interpreter.hpp): the matcher below
// flattens patterns into positional constraints and unifies them, rather
// than recursing structurally. That makes this module usable as an
// independent correctness oracle for the interpreter.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "strew/expression.hpp"
#include "strew/static_model.hpp"

namespace strew {

struct ActionLabel {
  std::string name;

  friend bool operator==(const ActionLabel& a, const ActionLabel& b) { return a.name == b.name; }
  friend bool operator<(const ActionLabel& a, const ActionLabel& b) { return a.name < b.name; }
};

// Finite partial map from variables to ground terms.
class Valuation {
public:
  Valuation() = default;

  const GroundTerm* lookup(const Variable& v) const {
    auto it = bindings_.find(v);
    return it == bindings_.end() ? nullptr : &it->second;
  }

  void bind(Variable v, GroundTerm g) { bindings_.insert_or_assign(std::move(v), std::move(g)); }

  std::size_t size() const { return bindings_.size(); }
  const std::map<Variable, GroundTerm>& bindings() const { return bindings_; }

  std::set<Variable> domain() const {
    std::set<Variable> out;
    for (const auto& [v, g] : bindings_) out.insert(v);
    return out;
  }

  // True iff every binding of `smaller` is present here with an equal term.
  bool extends(const Valuation& smaller) const {
    for (const auto& [v, g] : smaller.bindings_) {
      const GroundTerm* mine = lookup(v);
      if (mine == nullptr || !(*mine == g)) return false;
    }
    return true;
  }

  Valuation restricted_to(const std::set<Variable>& vars) const {
    Valuation out;
    for (const auto& [v, g] : bindings_)
      if (vars.count(v) != 0) out.bind(v, g);
    return out;
  }

  friend bool operator==(const Valuation& a, const Valuation& b) {
    return a.bindings_ == b.bindings_;
  }

private:
  std::map<Variable, GroundTerm> bindings_;
};

// A side condition (e1, e2) holds under rho iff all terms e1 and e2 can
// denote under rho are equal; a side with no denotation is vacuously fine.
struct SideCondition {
  Expression lhs;
  Expression rhs;
};

struct RewritingRule {
  SymbolicTerm lhs;
  ExpressionTerm rhs;
  std::vector<SideCondition> conditions;
  ActionLabel action;
};

// Rule order is irrelevant to the declarative relation but is the
// interpreter's tie-breaker, so theories keep their rules ordered.
struct RewritingTheory {
  std::vector<RewritingRule> rules;
};

inline std::set<Variable> free_vars(std::span<const SideCondition> cs) {
  std::set<Variable> out;
  for (const SideCondition& c : cs) {
    collect_free_vars(c.lhs, out);
    collect_free_vars(c.rhs, out);
  }
  return out;
}

// A rule is well-formed iff the right-hand side and the conditions only use
// variables the left-hand side binds.
inline bool check_rule_wf(const RewritingRule& rule) {
  std::set<Variable> bound = free_vars(rule.lhs);
  std::set<Variable> used = free_vars(rule.rhs);
  for (const Variable& v : free_vars(rule.conditions)) used.insert(v);
  for (const Variable& v : used)
    if (bound.count(v) == 0) return false;
  return true;
}

// Variables a rule uses without binding; empty iff the rule is well-formed.
inline std::set<Variable> unhoused_variables(const RewritingRule& rule) {
  std::set<Variable> bound = free_vars(rule.lhs);
  std::set<Variable> used = free_vars(rule.rhs);
  for (const Variable& v : free_vars(rule.conditions)) used.insert(v);
  std::set<Variable> out;
  for (const Variable& v : used)
    if (bound.count(v) == 0) out.insert(v);
  return out;
}

inline bool check_theory_wf(const RewritingTheory& theory) {
  for (const RewritingRule& r : theory.rules)
    if (!check_rule_wf(r)) return false;
  return true;
}

// --- expression satisfaction -------------------------------------------

// The unique ground term e denotes under rho, if any. Undefined exactly
// when a variable of e is unbound; function application is total.
inline std::optional<GroundTerm> denote_expr(const StaticModel& model, const Valuation& rho,
                                             const Expression& e) {
  switch (e.kind()) {
    case Expression::Kind::Literal:
      return e.literal_value();
    case Expression::Kind::Var: {
      const GroundTerm* g = rho.lookup(e.var());
      if (g == nullptr) return std::nullopt;
      return *g;
    }
    case Expression::Kind::Call: {
      std::vector<GroundTerm> args;
      args.reserve(e.args().size());
      for (const Expression& a : e.args()) {
        auto g = denote_expr(model, rho, a);
        if (!g) return std::nullopt;
        args.push_back(std::move(*g));
      }
      return model.apply(e.fn(), args);
    }
  }
  return std::nullopt;  // unreachable
}

// rho,g |= e. Literals must equal g; a variable must be bound to exactly g;
// a call is satisfied when each argument has a denotation and applying the
// function to those denotations gives g.
inline bool sat_expr(const StaticModel& model, const Valuation& rho, const GroundTerm& g,
                     const Expression& e) {
  switch (e.kind()) {
    case Expression::Kind::Literal:
      return e.literal_value() == g;
    case Expression::Kind::Var: {
      const GroundTerm* b = rho.lookup(e.var());
      return b != nullptr && *b == g;
    }
    case Expression::Kind::Call: {
      std::vector<GroundTerm> args;
      args.reserve(e.args().size());
      for (const Expression& a : e.args()) {
        auto w = denote_expr(model, rho, a);
        if (!w) return false;
        args.push_back(std::move(*w));
      }
      return model.apply(e.fn(), args) == g;
    }
  }
  return false;  // unreachable
}

// rho,g |= phi for symbolic terms: builtin leaves must equal the subject,
// variables must be bound to it, nodes need the same symbol, same arity,
// and childwise satisfaction.
inline bool sat_sym(const StaticModel& model, const Valuation& rho, const GroundTerm& g,
                    const SymbolicTerm& phi) {
  if (phi.is_leaf()) {
    const SymbolicLeaf& l = phi.leaf();
    if (l.is_variable()) {
      const GroundTerm* b = rho.lookup(l.var());
      return b != nullptr && *b == g;
    }
    return g.is_leaf() && g.leaf() == l.value();
  }
  if (!g.is_node() || !(g.symbol() == phi.symbol())) return false;
  auto gs = g.children();
  auto ps = phi.children();
  if (gs.size() != ps.size()) return false;
  for (std::size_t i = 0; i < gs.size(); ++i)
    if (!sat_sym(model, rho, gs[i], ps[i])) return false;
  return true;
}

// rho,g |= t for expression terms: same node schema, expression base case.
inline bool sat_exprterm(const StaticModel& model, const Valuation& rho, const GroundTerm& g,
                         const ExpressionTerm& t) {
  if (t.is_leaf()) return sat_expr(model, rho, g, t.leaf());
  if (!g.is_node() || !(g.symbol() == t.symbol())) return false;
  auto gs = g.children();
  auto ts = t.children();
  if (gs.size() != ts.size()) return false;
  for (std::size_t i = 0; i < gs.size(); ++i)
    if (!sat_exprterm(model, rho, gs[i], ts[i])) return false;
  return true;
}

// Vacuous truth (one side has no denotation) cannot occur for well-formed
// rules under a matched valuation; `vacuous` lets callers count it anyway,
// to surface suspicious rules in oracle mode.
inline bool side_condition_holds(const StaticModel& model, const Valuation& rho,
                                 const SideCondition& c, std::size_t* vacuous = nullptr) {
  auto l = denote_expr(model, rho, c.lhs);
  auto r = denote_expr(model, rho, c.rhs);
  if (!l || !r) {
    if (vacuous != nullptr) ++*vacuous;
    return true;
  }
  return *l == *r;
}

inline bool side_conditions_hold(const StaticModel& model, const Valuation& rho,
                                 std::span<const SideCondition> cs,
                                 std::size_t* vacuous = nullptr) {
  for (const SideCondition& c : cs)
    if (!side_condition_holds(model, rho, c, vacuous)) return false;
  return true;
}

// --- the oracle matcher -------------------------------------------------

// Matching by constraint collection: flatten the pattern into positional
// requirements with an explicit worklist, check each against the subject,
// then unify the variable sightings. Intentionally nothing like the
// recursive matcher the interpreter uses.
namespace detail {

using Path = std::vector<std::size_t>;

inline const GroundTerm* subterm_at(const GroundTerm& g, const Path& path) {
  const GroundTerm* cur = &g;
  for (std::size_t idx : path) {
    if (!cur->is_node() || idx >= cur->children().size()) return nullptr;
    cur = &cur->children()[idx];
  }
  return cur;
}

}  // namespace detail

inline std::optional<Valuation> oracle_match(const SymbolicTerm& phi, const GroundTerm& g) {
  struct NodeReq {
    detail::Path at;
    Symbol sym;
    std::size_t arity;
  };
  struct LeafReq {
    detail::Path at;
    BuiltinValue value;
  };
  struct VarSighting {
    detail::Path at;
    Variable var;
  };

  std::vector<NodeReq> nodes;
  std::vector<LeafReq> leaves;
  std::vector<VarSighting> sightings;

  std::vector<std::pair<detail::Path, const SymbolicTerm*>> work;
  work.emplace_back(detail::Path{}, &phi);
  while (!work.empty()) {
    auto [path, t] = std::move(work.back());
    work.pop_back();
    if (t->is_leaf()) {
      if (t->leaf().is_variable())
        sightings.push_back({path, t->leaf().var()});
      else
        leaves.push_back({path, t->leaf().value()});
      continue;
    }
    nodes.push_back({path, t->symbol(), t->children().size()});
    for (std::size_t i = 0; i < t->children().size(); ++i) {
      detail::Path child = path;
      child.push_back(i);
      work.emplace_back(std::move(child), &t->children()[i]);
    }
  }

  for (const NodeReq& req : nodes) {
    const GroundTerm* sub = detail::subterm_at(g, req.at);
    if (sub == nullptr || !sub->is_node() || !(sub->symbol() == req.sym) ||
        sub->children().size() != req.arity)
      return std::nullopt;
  }
  for (const LeafReq& req : leaves) {
    const GroundTerm* sub = detail::subterm_at(g, req.at);
    if (sub == nullptr || !sub->is_leaf() || !(sub->leaf() == req.value)) return std::nullopt;
  }

  Valuation rho;
  for (const VarSighting& s : sightings) {
    const GroundTerm* sub = detail::subterm_at(g, s.at);
    if (sub == nullptr) return std::nullopt;
    const GroundTerm* prev = rho.lookup(s.var);
    if (prev != nullptr) {
      if (!(*prev == *sub)) return std::nullopt;  // two sightings disagree
    } else {
      rho.bind(s.var, *sub);
    }
  }
  return rho;
}

// --- the step relation ---------------------------------------------------

struct StepWitness {
  std::size_t rule_index;
  Valuation rho;
};

// Re-checks a claimed witness purely through the satisfaction relations.
inline bool verify_witness(const StaticModel& model, const RewritingTheory& theory,
                           const GroundTerm& g1, const GroundTerm& g2, const StepWitness& w) {
  if (w.rule_index >= theory.rules.size()) return false;
  const RewritingRule& rule = theory.rules[w.rule_index];
  return sat_sym(model, w.rho, g1, rule.lhs) &&
         side_conditions_hold(model, w.rho, rule.conditions) &&
         sat_exprterm(model, w.rho, g2, rule.rhs);
}

// Decides whether some rule relates g1 to g2 and returns a witness if so.
// For a well-formed rule, the minimal match of the left-hand side fixes the
// valuation on every variable the rule can mention, and satisfaction is
// monotone under extension, so checking that single valuation decides the
// existential.
inline std::optional<StepWitness> step_related(const StaticModel& model,
                                               const RewritingTheory& theory,
                                               const GroundTerm& g1, const GroundTerm& g2,
                                               std::size_t* vacuous = nullptr) {
  for (std::size_t i = 0; i < theory.rules.size(); ++i) {
    const RewritingRule& rule = theory.rules[i];
    auto rho = oracle_match(rule.lhs, g1);
    if (!rho) continue;
    if (!side_conditions_hold(model, *rho, rule.conditions, vacuous)) continue;
    if (sat_exprterm(model, *rho, g2, rule.rhs)) return StepWitness{i, std::move(*rho)};
  }
  return std::nullopt;
}

// Decides whether g has any successor at all (used for completeness checks:
// for a well-formed matched rule the right-hand side always denotes).
inline std::optional<StepWitness> find_applicable_rule(const StaticModel& model,
                                                       const RewritingTheory& theory,
                                                       const GroundTerm& g) {
  for (std::size_t i = 0; i < theory.rules.size(); ++i) {
    const RewritingRule& rule = theory.rules[i];
    auto rho = oracle_match(rule.lhs, g);
    if (!rho) continue;
    if (side_conditions_hold(model, *rho, rule.conditions))
      return StepWitness{i, std::move(*rho)};
  }
  return std::nullopt;
}

// One step carrying a specific action: some rule with that action must
// relate the pair.
inline bool step_related_action(const StaticModel& model, const RewritingTheory& theory,
                                const GroundTerm& g1, const ActionLabel& action,
                                const GroundTerm& g2) {
  for (std::size_t i = 0; i < theory.rules.size(); ++i) {
    if (!(theory.rules[i].action == action)) continue;
    const RewritingRule& rule = theory.rules[i];
    auto rho = oracle_match(rule.lhs, g1);
    if (!rho) continue;
    if (side_conditions_hold(model, *rho, rule.conditions) &&
        sat_exprterm(model, *rho, g2, rule.rhs))
      return true;
  }
  return false;
}

// Certificate-checking reading of the action-word relation: the caller
// supplies the intermediate configurations, and each consecutive pair must
// be related by a rule carrying the corresponding action. Returns the index
// of the first step that fails to check, or nullopt if the trace is valid.
inline std::optional<std::size_t> first_trace_violation(
    const StaticModel& model, const RewritingTheory& theory, const GroundTerm& g_start,
    std::span<const ActionLabel> word, std::span<const GroundTerm> intermediates,
    const GroundTerm& g_end) {
  if (word.empty()) {
    if (!intermediates.empty() || !(g_start == g_end)) return 0;
    return std::nullopt;
  }
  if (intermediates.size() + 1 != word.size()) return 0;
  const GroundTerm* prev = &g_start;
  for (std::size_t i = 0; i < word.size(); ++i) {
    const GroundTerm& next = i < intermediates.size() ? intermediates[i] : g_end;
    if (!step_related_action(model, theory, *prev, word[i], next)) return i;
    prev = &next;
  }
  return std::nullopt;
}

inline bool trace_related(const StaticModel& model, const RewritingTheory& theory,
                          const GroundTerm& g_start, std::span<const ActionLabel> word,
                          std::span<const GroundTerm> intermediates, const GroundTerm& g_end) {
  return !first_trace_violation(model, theory, g_start, word, intermediates, g_end).has_value();
}

// Ground instantiation of a pattern under a valuation covering its
// variables. Handy for tests and for building configurations.
inline std::optional<GroundTerm> instantiate(const SymbolicTerm& phi, const Valuation& rho) {
  if (phi.is_leaf()) {
    const SymbolicLeaf& l = phi.leaf();
    if (!l.is_variable()) return GroundTerm(l.value());
    const GroundTerm* g = rho.lookup(l.var());
    if (g == nullptr) return std::nullopt;
    return *g;
  }
  std::vector<GroundTerm> children;
  children.reserve(phi.children().size());
  for (const SymbolicTerm& c : phi.children()) {
    auto g = instantiate(c, rho);
    if (!g) return std::nullopt;
    children.push_back(std::move(*g));
  }
  return GroundTerm(phi.symbol(), std::move(children));
}

}  // namespace strew
