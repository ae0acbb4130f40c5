#pragma once

// Compiled theory files: a canonical, versioned text serialization of a
// compiled language (rules plus metadata: value predicate, freezer table).
// The format is deterministic field-by-field, so loading a file and
// re-serializing it reproduces it byte for byte.

#include <cstdint>
#include <string>
#include <string_view>

#include "strew/frontend.hpp"
#include "strew/parser.hpp"
#include "strew/printer.hpp"
#include "strew/semantics.hpp"

namespace strew {

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline constexpr std::string_view kTheoryFileHeader = "strew theory v1";

inline std::string serialize_theory(const CompiledLanguage& lang, std::uint64_t source_digest) {
  std::string out;
  out += kTheoryFileHeader;
  out += "\ndigest ";
  out += std::to_string(source_digest);
  out += '\n';
  if (lang.value) {
    out += "value ";
    out += lang.value->var.name();
    out += ' ';
    out += print_expression(lang.value->body);
    out += '\n';
  }
  for (const FreezerInfo& f : lang.freezers) {
    out += "freezer ";
    out += f.freezer.name();
    out += ' ';
    out += f.base.name();
    out += ' ';
    out += std::to_string(f.arity);
    out += ' ';
    out += std::to_string(f.position);
    out += '\n';
  }
  for (const RewritingRule& r : lang.theory.rules) {
    out += "rule ";
    out += r.action.name;
    out += "\nlhs ";
    out += print_term(r.lhs);
    out += "\nrhs ";
    out += print_term(r.rhs);
    out += '\n';
    for (const SideCondition& c : r.conditions) {
      out += "cond ";
      out += print_expression(c.lhs);
      out += " = ";
      out += print_expression(c.rhs);
      out += '\n';
    }
    out += "end\n";
  }
  return out;
}

struct LoadedTheory {
  CompiledLanguage language;
  std::uint64_t source_digest = 0;
};

inline LoadedTheory parse_theory_file(std::string_view text) {
  detail::Parser p(text);

  auto keyword = [&p](std::string_view k) {
    if (!p.at_ident(k))
      p.fail(p.peek(), "expected '" + std::string(k) + "' in theory file");
    p.next();
  };

  if (p.at(detail::Tok::At))
    p.fail(p.peek(),
           "this looks like a language definition, not a compiled theory; compile it first");
  keyword("strew");
  keyword("theory");
  if (!p.at_ident("v1"))
    p.fail(p.peek(), "unsupported theory file version (expected 'v1')");
  p.next();

  LoadedTheory out;
  keyword("digest");
  out.source_digest =
      static_cast<std::uint64_t>(Int(p.expect(detail::Tok::IntLit, "after 'digest'").text, 10).get_ui());

  if (p.at_ident("value")) {
    p.next();
    Variable v{p.expect(detail::Tok::Var, "naming the value predicate variable").text};
    Expression body = p.parse_expression();
    out.language.value = ValuePredicate{std::move(v), std::move(body)};
  }
  while (p.at_ident("freezer")) {
    p.next();
    Symbol freezer{p.expect(detail::Tok::Ident, "naming the freezer symbol").text};
    Symbol base{p.expect(detail::Tok::Ident, "naming the frozen symbol").text};
    std::size_t arity = detail::parse_nat(p, "giving the frozen symbol's arity");
    std::size_t pos = detail::parse_nat(p, "giving the strict position");
    out.language.freezers.push_back({std::move(freezer), std::move(base), arity, pos});
  }
  while (p.at_ident("rule")) {
    p.next();
    detail::Token label = p.expect(detail::Tok::Ident, "giving the rule label");
    keyword("lhs");
    SymbolicTerm lhs = p.parse_pattern(detail::TermMode::Symbolic);
    keyword("rhs");
    ExpressionTerm rhs = p.parse_expression_term();
    std::vector<SideCondition> conditions;
    while (p.at_ident("cond")) {
      p.next();
      Expression l = p.parse_expression();
      p.expect(detail::Tok::Eq, "between the sides of the condition");
      Expression r = p.parse_expression();
      conditions.push_back({std::move(l), std::move(r)});
    }
    keyword("end");
    RewritingRule rule{std::move(lhs), std::move(rhs), std::move(conditions),
                       ActionLabel{label.text}};
    if (!check_rule_wf(rule))
      p.fail(label, "rule '" + label.text + "' in theory file is not well-formed");
    out.language.theory.rules.push_back(std::move(rule));
  }
  if (!p.at(detail::Tok::End)) p.fail(p.peek(), "unexpected content in theory file");
  return out;
}

// Human-readable rule listing in the definition syntax. A single condition
// against bool.true() prints as a plain `where` guard; anything else prints
// the condition pairs explicitly.
inline std::string print_rule(const RewritingRule& r) {
  std::string out = "@rule [" + r.action.name + "]: " + print_term(r.lhs) + " => " +
                    print_term(r.rhs);
  const Expression truth = Expression::call(FunctionName("bool.true"), {});
  if (!r.conditions.empty()) {
    out += " where ";
    for (std::size_t i = 0; i < r.conditions.size(); ++i) {
      if (i > 0) out += ", ";
      out += print_expression(r.conditions[i].lhs);
      if (!(r.conditions[i].rhs == truth)) {
        out += " = ";
        out += print_expression(r.conditions[i].rhs);
      }
    }
  }
  out += " ;";
  return out;
}

inline std::string print_theory_pretty(const CompiledLanguage& lang) {
  std::string out;
  for (const RewritingRule& r : lang.theory.rules) {
    out += print_rule(r);
    out += '\n';
  }
  return out;
}

}  // namespace strew
