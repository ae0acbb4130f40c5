#pragma once

// Parser and desugarer for language definitions (.m files): @frames,
// @value, @context, @strictness and labeled @rule declarations, compiled
// down to a plain rewriting theory.
//
// Strictness desugaring uses the continuation-list convention visible in
// the bundled definitions: configurations carry a builtin.cseq /
// builtin.empty_cseq list of pending work under the @context template, and
// each strict position of a symbol gets one heating and one cooling rule
// built around a fresh freezer symbol. Generated rules precede user rules;
// positions expand in declaration order, heating before cooling. Heating
// fires only on non-values and cooling only on values, so the pair cannot
// loop.

#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "strew/parser.hpp"
#include "strew/semantics.hpp"
#include "strew/static_model.hpp"

namespace strew {

class CompileError : public std::runtime_error {
public:
  explicit CompileError(const std::string& message)
      : std::runtime_error(message), message_(message) {}
  CompileError(SourceLoc loc, const std::string& message)
      : std::runtime_error(std::to_string(loc.line) + ":" + std::to_string(loc.col) + ": " +
                           message),
        loc_(loc),
        message_(message) {}

  std::optional<SourceLoc> where() const { return loc_; }
  const std::string& message() const { return message_; }

private:
  std::optional<SourceLoc> loc_;
  std::string message_;
};

struct FrameDecl {
  std::string name;
  Variable hole;
  SymbolicTerm body;
  SourceLoc loc;
};

struct ValueDecl {
  Variable var;
  Expression body;
  SourceLoc loc;
};

struct ContextDecl {
  Variable hole;
  SymbolicTerm body;
  SourceLoc loc;
};

struct StrictnessDecl {
  Symbol symbol;
  std::size_t arity;
  std::vector<std::size_t> positions;  // 0-based, order = evaluation order
  SourceLoc loc;
};

struct SugaredRule {
  std::string label;
  std::optional<std::string> frame;
  SymbolicTerm lhs;
  ExpressionTerm rhs;
  std::optional<Expression> guard;
  SourceLoc loc;
};

struct LanguageDefinition {
  std::vector<FrameDecl> frames;
  std::optional<ValueDecl> value;
  std::optional<ContextDecl> context;
  std::vector<StrictnessDecl> strictness;
  std::vector<SugaredRule> rules;
};

// Freezer symbols generated by strictness expansion; users may not declare
// them.
struct FreezerInfo {
  Symbol freezer;
  Symbol base;
  std::size_t arity;     // arity of the base symbol
  std::size_t position;  // the strict position being evaluated
};

struct ValuePredicate {
  Variable var;
  Expression body;
};

struct CompiledLanguage {
  RewritingTheory theory;
  std::optional<ValuePredicate> value;
  std::vector<FreezerInfo> freezers;
};

namespace detail {

inline std::size_t count_occurrences(const SymbolicTerm& t, const Variable& x) {
  if (t.is_leaf()) return t.leaf().is_variable() && t.leaf().var() == x ? 1 : 0;
  std::size_t n = 0;
  for (const SymbolicTerm& c : t.children()) n += count_occurrences(c, x);
  return n;
}

inline std::size_t parse_nat(Parser& p, const std::string& context) {
  Token t = p.expect(Tok::IntLit, context);
  if (t.text[0] == '-') p.fail(t, "expected a non-negative number");
  return static_cast<std::size_t>(std::stoull(t.text));
}

}  // namespace detail

inline LanguageDefinition parse_definition(std::string_view source) {
  detail::Parser p(source);
  LanguageDefinition def;
  std::set<std::string> labels;
  std::set<std::string> frame_names;

  while (!p.at(detail::Tok::End)) {
    detail::Token kw = p.expect(detail::Tok::At, "starting a declaration");
    if (kw.text == "frames") {
      p.expect(detail::Tok::Colon, "after @frames");
      p.expect(detail::Tok::LBracket, "to open the frame list");
      for (;;) {
        detail::Token name = p.expect(detail::Tok::Ident, "naming the frame");
        if (!frame_names.insert(name.text).second)
          throw ParseError(name.loc, "duplicate frame '" + name.text + "'");
        p.expect(detail::Tok::LParen, "before the frame's hole variable");
        detail::Token hole = p.expect(detail::Tok::Var, "naming the frame's hole");
        p.expect(detail::Tok::RParen, "after the frame's hole variable");
        p.expect(detail::Tok::Colon, "before the frame template");
        SymbolicTerm body = p.parse_pattern(detail::TermMode::Symbolic);
        if (detail::count_occurrences(body, Variable(hole.text)) != 1)
          throw ParseError(hole.loc, "frame '" + name.text + "' must use its hole variable '" +
                                         hole.text + "' exactly once");
        def.frames.push_back({name.text, Variable(hole.text), std::move(body), name.loc});
        if (!p.at(detail::Tok::Comma)) break;
        p.next();
      }
      p.expect(detail::Tok::RBracket, "to close the frame list");
      p.expect(detail::Tok::Semi, "after the @frames declaration");
    } else if (kw.text == "value") {
      if (def.value) throw ParseError(kw.loc, "duplicate @value declaration");
      p.expect(detail::Tok::LParen, "before the value predicate's variable");
      detail::Token v = p.expect(detail::Tok::Var, "naming the value predicate's variable");
      p.expect(detail::Tok::RParen, "after the value predicate's variable");
      p.expect(detail::Tok::Colon, "before the value predicate");
      Expression body = p.parse_expression();
      p.expect(detail::Tok::Semi, "after the @value declaration");
      def.value = ValueDecl{Variable(v.text), std::move(body), kw.loc};
    } else if (kw.text == "context") {
      if (def.context) throw ParseError(kw.loc, "duplicate @context declaration");
      p.expect(detail::Tok::LParen, "before the context's hole variable");
      detail::Token hole = p.expect(detail::Tok::Var, "naming the context's hole");
      p.expect(detail::Tok::RParen, "after the context's hole variable");
      p.expect(detail::Tok::Colon, "before the context template");
      SymbolicTerm body = p.parse_pattern(detail::TermMode::Symbolic);
      if (detail::count_occurrences(body, Variable(hole.text)) != 1)
        throw ParseError(hole.loc, "@context must use its hole variable '" + hole.text +
                                       "' exactly once");
      p.expect(detail::Tok::Semi, "after the @context declaration");
      def.context = ContextDecl{Variable(hole.text), std::move(body), kw.loc};
    } else if (kw.text == "strictness") {
      p.expect(detail::Tok::Colon, "after @strictness");
      p.expect(detail::Tok::LBracket, "to open the strictness list");
      for (;;) {
        detail::Token s = p.expect(detail::Tok::Ident, "naming the strict symbol");
        if (!p.at_ident("of_arity"))
          p.fail(p.peek(), "expected 'of_arity' after the strict symbol");
        p.next();
        std::size_t arity = detail::parse_nat(p, "giving the symbol's arity");
        if (!p.at_ident("in")) p.fail(p.peek(), "expected 'in' before the position list");
        p.next();
        p.expect(detail::Tok::LBracket, "to open the position list");
        std::vector<std::size_t> positions;
        for (;;) {
          detail::Token ptok = p.peek();
          std::size_t pos = detail::parse_nat(p, "giving a strict position");
          if (pos >= arity)
            throw ParseError(ptok.loc, "strict position " + std::to_string(pos) +
                                           " is out of range for arity " + std::to_string(arity));
          for (std::size_t prev : positions)
            if (prev == pos)
              throw ParseError(ptok.loc, "duplicate strict position " + std::to_string(pos));
          positions.push_back(pos);
          if (!p.at(detail::Tok::Comma)) break;
          p.next();
        }
        p.expect(detail::Tok::RBracket, "to close the position list");
        def.strictness.push_back({Symbol(s.text), arity, std::move(positions), s.loc});
        if (!p.at(detail::Tok::Comma)) break;
        p.next();
      }
      p.expect(detail::Tok::RBracket, "to close the strictness list");
      p.expect(detail::Tok::Semi, "after the @strictness declaration");
    } else if (kw.text == "rule") {
      std::optional<std::string> frame;
      if (p.at(detail::Tok::Slash)) {
        p.next();
        frame = p.expect(detail::Tok::Ident, "naming the rule's frame").text;
      }
      p.expect(detail::Tok::LBracket, "before the rule label");
      detail::Token label = p.expect(detail::Tok::Ident, "giving the rule label");
      if (!labels.insert(label.text).second)
        throw ParseError(label.loc, "duplicate rule label '" + label.text + "'");
      p.expect(detail::Tok::RBracket, "after the rule label");
      p.expect(detail::Tok::Colon, "before the rule's left-hand side");
      SymbolicTerm lhs = p.parse_pattern(detail::TermMode::Symbolic);
      p.expect(detail::Tok::Arrow, "between the rule's sides");
      ExpressionTerm rhs = p.parse_expression_term();
      std::optional<Expression> guard;
      if (p.at_ident("where")) {
        p.next();
        guard = p.parse_expression();
      }
      p.expect(detail::Tok::Semi, "after the rule");
      def.rules.push_back(
          {label.text, std::move(frame), std::move(lhs), std::move(rhs), std::move(guard),
           label.loc});
    } else {
      throw ParseError(kw.loc, "unknown declaration '@" + kw.text + "'");
    }
  }
  return def;
}

// --- desugaring ----------------------------------------------------------

inline std::vector<SideCondition> desugar_guard(const std::optional<Expression>& guard) {
  if (!guard) return {};
  return {SideCondition{*guard, Expression::call(FunctionName("bool.true"), {})}};
}

namespace detail {

// Expression-term image of a symbolic template: node structure is kept,
// variables become variable expressions, builtin leaves become literals,
// and the hole is replaced by `plug`.
inline ExpressionTerm expression_image(const SymbolicTerm& tmpl, const Variable& hole,
                                       const ExpressionTerm& plug) {
  if (tmpl.is_leaf()) {
    const SymbolicLeaf& l = tmpl.leaf();
    if (l.is_variable()) {
      if (l.var() == hole) return plug;
      return ExpressionTerm(Expression::variable(l.var()));
    }
    return ExpressionTerm(Expression::literal(GroundTerm(l.value())));
  }
  std::vector<ExpressionTerm> children;
  children.reserve(tmpl.children().size());
  for (const SymbolicTerm& c : tmpl.children())
    children.push_back(expression_image(c, hole, plug));
  return ExpressionTerm(tmpl.symbol(), std::move(children));
}

inline std::string fresh_name(std::string base, const std::set<Variable>& avoid) {
  while (avoid.count(Variable(base)) != 0) base += "_";
  return base;
}

constexpr std::string_view kFreezerPrefix = "freezer.";
constexpr std::string_view kCseqSymbol = "builtin.cseq";

inline void collect_symbols(const GroundTerm& t, std::set<std::string>& out) {
  if (t.is_leaf()) return;
  out.insert(t.symbol().name());
  for (const GroundTerm& c : t.children()) collect_symbols(c, out);
}

inline void collect_symbols(const SymbolicTerm& t, std::set<std::string>& out) {
  if (t.is_leaf()) {
    if (!t.leaf().is_variable() && t.leaf().value().kind() == BuiltinKind::Sym)
      out.insert(t.leaf().value().as_symbol().name());
    return;
  }
  out.insert(t.symbol().name());
  for (const SymbolicTerm& c : t.children()) collect_symbols(c, out);
}

inline void collect_symbols(const Expression& e, std::set<std::string>& out) {
  switch (e.kind()) {
    case Expression::Kind::Literal:
      collect_symbols(e.literal_value(), out);
      return;
    case Expression::Kind::Var:
      return;
    case Expression::Kind::Call:
      for (const Expression& a : e.args()) collect_symbols(a, out);
      return;
  }
}

inline void collect_symbols(const ExpressionTerm& t, std::set<std::string>& out) {
  if (t.is_leaf()) {
    collect_symbols(t.leaf(), out);
    return;
  }
  out.insert(t.symbol().name());
  for (const ExpressionTerm& c : t.children()) collect_symbols(c, out);
}

// Every function call in the expression must be registered with a matching
// arity.
inline void validate_expression(const StaticModel& model, const Expression& e,
                                const std::string& where, SourceLoc loc) {
  if (e.kind() != Expression::Kind::Call) return;
  const StaticModel::Entry* entry = model.lookup(e.fn().name());
  if (entry == nullptr)
    throw CompileError(loc, where + ": unknown function '" + e.fn().name() + "'");
  if (entry->arity != e.args().size())
    throw CompileError(loc, where + ": function '" + e.fn().name() + "' expects " +
                                std::to_string(entry->arity) + " argument(s), got " +
                                std::to_string(e.args().size()));
  for (const Expression& a : e.args()) validate_expression(model, a, where, loc);
}

inline void validate_expression_term(const StaticModel& model, const ExpressionTerm& t,
                                     const std::string& where, SourceLoc loc) {
  if (t.is_leaf()) {
    validate_expression(model, t.leaf(), where, loc);
    return;
  }
  for (const ExpressionTerm& c : t.children()) validate_expression_term(model, c, where, loc);
}

}  // namespace detail

// Wraps a sugared rule in its frame, if any. The frame's non-hole variables
// pass through both sides; they must not collide with the rule's own
// variables, since silent capture would change the rule's meaning.
inline std::pair<SymbolicTerm, ExpressionTerm> apply_frame(const LanguageDefinition& def,
                                                           const SugaredRule& rule) {
  if (!rule.frame) return {rule.lhs, rule.rhs};
  const FrameDecl* frame = nullptr;
  for (const FrameDecl& f : def.frames)
    if (f.name == *rule.frame) frame = &f;
  if (frame == nullptr)
    throw CompileError(rule.loc, "rule '" + rule.label + "' uses unknown frame '" + *rule.frame +
                                     "'");

  std::set<Variable> rule_vars = free_vars(rule.lhs);
  collect_free_vars(rule.rhs, rule_vars);
  if (rule.guard) collect_free_vars(*rule.guard, rule_vars);
  std::set<Variable> frame_vars = free_vars(frame->body);
  frame_vars.erase(frame->hole);
  for (const Variable& v : frame_vars)
    if (rule_vars.count(v) != 0)
      throw CompileError(rule.loc, "rule '" + rule.label + "' captures frame variable '" +
                                       v.name() + "' of frame '" + frame->name + "'");

  SymbolicTerm lhs = subst(frame->body, frame->hole, rule.lhs);
  ExpressionTerm rhs = detail::expression_image(frame->body, frame->hole, rule.rhs);
  return {std::move(lhs), std::move(rhs)};
}

// Heating/cooling rules for every declared strict position, in declaration
// order, heating first. For (s, n, p) with context C(HOLE) and value
// predicate value(·):
//   heat.s.p : C(cseq[s[X0..Xn-1], REST])
//            => C(cseq[Xp, cseq[freezer.s.p[X0..Xp-1,Xp+1..Xn-1], REST]])
//               where bool.neg(value(Xp))
//   cool.s.p : the mirror image, where value(Xp)
inline std::vector<RewritingRule> expand_strictness(const LanguageDefinition& def) {
  if (def.strictness.empty()) return {};
  if (!def.value)
    throw CompileError("@strictness requires a @value declaration");
  if (!def.context)
    throw CompileError("@strictness requires a @context declaration");

  const ContextDecl& ctx = *def.context;
  const ValueDecl& value = *def.value;
  std::set<Variable> avoid = free_vars(ctx.body);
  const Symbol cseq{std::string(detail::kCseqSymbol)};

  std::vector<RewritingRule> out;
  for (const StrictnessDecl& decl : def.strictness) {
    std::vector<Variable> child_vars;
    for (std::size_t i = 0; i < decl.arity; ++i)
      child_vars.emplace_back(detail::fresh_name("X" + std::to_string(i), avoid));
    Variable rest{detail::fresh_name("REST", avoid)};

    for (std::size_t p : decl.positions) {
      Symbol freezer{std::string(detail::kFreezerPrefix) + decl.symbol.name() + "." +
                     std::to_string(p)};
      std::string suffix = decl.symbol.name() + "." + std::to_string(p);

      std::vector<SymbolicTerm> full_children;
      for (const Variable& v : child_vars) full_children.emplace_back(SymbolicLeaf(v));
      std::vector<SymbolicTerm> frozen_children;
      for (std::size_t i = 0; i < decl.arity; ++i)
        if (i != p) frozen_children.emplace_back(SymbolicLeaf(child_vars[i]));

      SymbolicTerm frozen{freezer, frozen_children};
      SymbolicTerm rest_pat{SymbolicLeaf(rest)};
      // cseq[s[X0..Xn-1], REST]
      SymbolicTerm assembled{cseq, {SymbolicTerm{decl.symbol, full_children}, rest_pat}};
      // cseq[Xp, cseq[freezer.s.p[...], REST]]
      SymbolicTerm split{cseq, {SymbolicTerm(SymbolicLeaf(child_vars[p])),
                                SymbolicTerm(cseq, {frozen, rest_pat})}};

      Expression value_of_child =
          subst(value.body, value.var, Expression::variable(child_vars[p]));
      Expression truth = Expression::call(FunctionName("bool.true"), {});
      Expression not_value = Expression::call(FunctionName("bool.neg"), {value_of_child});

      RewritingRule heat{subst(ctx.body, ctx.hole, assembled),
                         detail::expression_image(ctx.body, ctx.hole, to_expression_term(split)),
                         {SideCondition{not_value, truth}},
                         ActionLabel{"heat." + suffix}};
      RewritingRule cool{
          subst(ctx.body, ctx.hole, split),
          detail::expression_image(ctx.body, ctx.hole, to_expression_term(assembled)),
          {SideCondition{value_of_child, truth}},
          ActionLabel{"cool." + suffix}};
      out.push_back(std::move(heat));
      out.push_back(std::move(cool));
    }
  }
  return out;
}

// Full compilation: strictness expansion first, then the frame-applied user
// rules in file order. Every emitted rule is checked for well-formedness
// and every call site against the model.
inline CompiledLanguage compile_definition(const LanguageDefinition& def,
                                           const StaticModel& model) {
  // Freezer symbols are reserved for generated rules.
  std::set<std::string> user_symbols;
  for (const FrameDecl& f : def.frames) detail::collect_symbols(f.body, user_symbols);
  if (def.context) detail::collect_symbols(def.context->body, user_symbols);
  if (def.value) detail::collect_symbols(def.value->body, user_symbols);
  for (const SugaredRule& r : def.rules) {
    detail::collect_symbols(r.lhs, user_symbols);
    detail::collect_symbols(r.rhs, user_symbols);
    if (r.guard) detail::collect_symbols(*r.guard, user_symbols);
  }
  for (const std::string& s : user_symbols)
    if (s.rfind(detail::kFreezerPrefix, 0) == 0)
      throw CompileError("symbol '" + s + "' is reserved for generated freezer rules");

  if (def.value) {
    std::set<Variable> vb = free_vars(def.value->body);
    vb.erase(def.value->var);
    if (!vb.empty())
      throw CompileError(def.value->loc, "@value predicate may only use its declared variable '" +
                                             def.value->var.name() + "' (also uses '" +
                                             vb.begin()->name() + "')");
    detail::validate_expression(model, def.value->body, "@value predicate", def.value->loc);
  }

  CompiledLanguage out;
  out.theory.rules = expand_strictness(def);
  for (const StrictnessDecl& decl : def.strictness)
    for (std::size_t p : decl.positions)
      out.freezers.push_back({Symbol(std::string(detail::kFreezerPrefix) + decl.symbol.name() +
                                     "." + std::to_string(p)),
                              decl.symbol, decl.arity, p});

  for (const SugaredRule& rule : def.rules) {
    auto [lhs, rhs] = apply_frame(def, rule);
    RewritingRule compiled{std::move(lhs), std::move(rhs), desugar_guard(rule.guard),
                           ActionLabel{rule.label}};
    detail::validate_expression_term(model, compiled.rhs, "rule '" + rule.label + "'", rule.loc);
    for (const SideCondition& c : compiled.conditions) {
      detail::validate_expression(model, c.lhs, "rule '" + rule.label + "'", rule.loc);
      detail::validate_expression(model, c.rhs, "rule '" + rule.label + "'", rule.loc);
    }
    if (!check_rule_wf(compiled)) {
      std::set<Variable> bad = unhoused_variables(compiled);
      std::string names;
      for (const Variable& v : bad) {
        if (!names.empty()) names += ", ";
        names += v.name();
      }
      throw CompileError(rule.loc, "rule '" + rule.label +
                                       "' uses variable(s) not bound by its left-hand side: " +
                                       names);
    }
    out.theory.rules.push_back(std::move(compiled));
  }

  if (def.value) out.value = ValuePredicate{def.value->var, def.value->body};
  return out;
}

}  // namespace strew
