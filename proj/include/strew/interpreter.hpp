#pragma once

// The universal one-step interpreter: structural pattern matching, side
// condition evaluation, right-hand side evaluation, first-match rule
// selection, and a fuel-bounded run loop.
//
// Rule selection is a plain linear search in theory order; there is no
// indexing and no compiled matching. Non-determinism in the theory is
// resolved by the first rule that matches with a true condition, which
// makes runs reproducible.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "strew/semantics.hpp"
#include "strew/static_model.hpp"

namespace strew {

// Raised when a rule right-hand side fails to evaluate after a successful
// match. Impossible for well-formed theories; distinct from Stuck.
class InternalInvariantViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

namespace detail {

// Structural matcher. Bindings are accumulated left to right into one
// valuation with a conflict check, which is observably the same as building
// per-child valuations and taking their union with a distinctness guard.
inline bool try_match_into(const SymbolicTerm& phi, const GroundTerm& g, Valuation& out) {
  if (phi.is_leaf()) {
    const SymbolicLeaf& l = phi.leaf();
    if (l.is_variable()) {
      const GroundTerm* prev = out.lookup(l.var());
      if (prev != nullptr) return *prev == g;
      out.bind(l.var(), g);
      return true;
    }
    return g.is_leaf() && g.leaf() == l.value();
  }
  if (g.is_leaf()) return false;
  if (!(g.symbol() == phi.symbol())) return false;
  auto ps = phi.children();
  auto gs = g.children();
  if (ps.size() != gs.size()) return false;
  for (std::size_t i = 0; i < ps.size(); ++i)
    if (!try_match_into(ps[i], gs[i], out)) return false;
  return true;
}

}  // namespace detail

// Matches a pattern against a ground term. On success the valuation is
// defined on exactly the variables of the pattern.
inline std::optional<Valuation> try_match(const SymbolicTerm& phi, const GroundTerm& g) {
  Valuation rho;
  if (!detail::try_match_into(phi, g, rho)) return std::nullopt;
  return rho;
}

// Interpreter-side expression evaluation; nullopt on an unbound variable.
inline std::optional<GroundTerm> eval_expr(const StaticModel& model, const Valuation& rho,
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
        auto g = eval_expr(model, rho, a);
        if (!g) return std::nullopt;
        args.push_back(std::move(*g));
      }
      return model.apply(e.fn(), args);
    }
  }
  return std::nullopt;  // unreachable
}

// A condition with an unevaluable side counts as holding, mirroring the
// universally quantified declarative reading. Unreachable for well-formed
// rules under a matched valuation.
inline bool evaluate_condition(const StaticModel& model, const Valuation& rho,
                               std::span<const SideCondition> cs) {
  for (const SideCondition& c : cs) {
    auto l = eval_expr(model, rho, c.lhs);
    auto r = eval_expr(model, rho, c.rhs);
    if (!l || !r) continue;
    if (!(*l == *r)) return false;
  }
  return true;
}

// Maps expression leaves through the valuation and rebuilds the node
// structure; nullopt iff some leaf fails to evaluate.
inline std::optional<GroundTerm> evaluate(const StaticModel& model, const Valuation& rho,
                                          const ExpressionTerm& r) {
  if (r.is_leaf()) return eval_expr(model, rho, r.leaf());
  std::vector<GroundTerm> children;
  children.reserve(r.children().size());
  for (const ExpressionTerm& c : r.children()) {
    auto g = evaluate(model, rho, c);
    if (!g) return std::nullopt;
    children.push_back(std::move(*g));
  }
  return GroundTerm(r.symbol(), std::move(children));
}

struct Selection {
  std::size_t rule_index;
  Valuation rho;
};

// First rule in theory order whose left-hand side matches and whose side
// conditions evaluate to true. A rule whose condition fails does not block
// later rules.
inline std::optional<Selection> naive_select(const StaticModel& model,
                                             const RewritingTheory& theory,
                                             const GroundTerm& g) {
  for (std::size_t i = 0; i < theory.rules.size(); ++i) {
    const RewritingRule& rule = theory.rules[i];
    auto rho = try_match(rule.lhs, g);
    if (!rho) continue;
    if (evaluate_condition(model, *rho, rule.conditions)) return Selection{i, std::move(*rho)};
  }
  return std::nullopt;
}

struct Stepped {
  GroundTerm next;
  std::size_t rule_index;
  ActionLabel action;
  Valuation rho;
};

// nullopt means the configuration is stuck.
using StepOutcome = std::optional<Stepped>;

inline StepOutcome step(const StaticModel& model, const RewritingTheory& theory,
                        const GroundTerm& g) {
  auto sel = naive_select(model, theory, g);
  if (!sel) return std::nullopt;
  const RewritingRule& rule = theory.rules[sel->rule_index];
  auto next = evaluate(model, sel->rho, rule.rhs);
  if (!next)
    throw InternalInvariantViolation(
        "rule '" + rule.action.name +
        "' matched but its right-hand side failed to evaluate; the theory is not well-formed");
  return Stepped{std::move(*next), sel->rule_index, rule.action, std::move(sel->rho)};
}

struct RunOptions {
  std::uint64_t fuel = UINT64_MAX;
  // Recording every intermediate configuration is gated because traces of
  // million-step runs are large. The action word is always recorded.
  bool record_trace = false;
};

struct RunResult {
  GroundTerm final;
  std::uint64_t steps_taken = 0;
  std::vector<ActionLabel> action_word;
  // True iff fuel ran out while the final configuration still had a
  // successor; false means the run ended Stuck.
  bool exhausted = false;
  std::vector<std::uint64_t> rule_counts;  // fires per rule index
  // All configurations from the initial to the final one, inclusive;
  // populated only when RunOptions::record_trace is set.
  std::vector<GroundTerm> trace;
};

// Applies step until the configuration is stuck or the fuel budget is
// spent. Exhaustion is reported, not an error.
inline RunResult run(const StaticModel& model, const RewritingTheory& theory,
                     const GroundTerm& g0, RunOptions opts = {}) {
  RunResult res{g0, 0, {}, false, std::vector<std::uint64_t>(theory.rules.size(), 0), {}};
  if (opts.record_trace) res.trace.push_back(g0);
  while (res.steps_taken < opts.fuel) {
    auto out = step(model, theory, res.final);
    if (!out) return res;
    res.final = std::move(out->next);
    res.action_word.push_back(std::move(out->action));
    ++res.rule_counts[out->rule_index];
    ++res.steps_taken;
    if (opts.record_trace) res.trace.push_back(res.final);
  }
  res.exhausted = step(model, theory, res.final).has_value();
  return res;
}

inline RunResult run(const StaticModel& model, const RewritingTheory& theory,
                     const GroundTerm& g0, std::uint64_t fuel) {
  return run(model, theory, g0, RunOptions{fuel, false});
}

}  // namespace strew
