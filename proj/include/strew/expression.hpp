#pragma once

// The three term instantiations the rewriting machinery works with:
//   ground terms      - builtin leaves only (program configurations)
//   symbolic terms    - builtin or variable leaves (rule left-hand sides)
//   expression terms  - expression leaves (rule right-hand sides)
// plus substitution and free-variable computation over them.

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "strew/builtin.hpp"
#include "strew/term.hpp"

namespace strew {

class FunctionName {
public:
  explicit FunctionName(std::string name) : name_(std::move(name)) { assert(!name_.empty()); }

  const std::string& name() const { return name_; }

  friend bool operator==(const FunctionName& a, const FunctionName& b) { return a.name_ == b.name_; }
  friend bool operator<(const FunctionName& a, const FunctionName& b) { return a.name_ < b.name_; }

private:
  std::string name_;
};

inline int compare(const FunctionName& a, const FunctionName& b) {
  return a.name().compare(b.name());
}

// An expression denotes at most one ground term once a valuation fixes its
// variables: a ground literal, a variable, or a builtin function applied to
// argument expressions.
class Expression {
public:
  struct Call {
    FunctionName fn;
    std::vector<Expression> args;
  };

  enum class Kind { Literal, Var, Call };

  static Expression literal(GroundTerm g) {
    return Expression(std::make_shared<const Repr>(std::in_place_index<0>, std::move(g)));
  }
  static Expression variable(Variable v) {
    return Expression(std::make_shared<const Repr>(std::in_place_index<1>, std::move(v)));
  }
  static Expression call(FunctionName fn, std::vector<Expression> args) {
    return Expression(std::make_shared<const Repr>(std::in_place_index<2>,
                                                   Call{std::move(fn), std::move(args)}));
  }

  Kind kind() const { return static_cast<Kind>(repr_->index()); }

  const GroundTerm& literal_value() const { return std::get<0>(*repr_); }
  const Variable& var() const { return std::get<1>(*repr_); }
  const FunctionName& fn() const { return std::get<2>(*repr_).fn; }
  std::span<const Expression> args() const { return std::get<2>(*repr_).args; }

  friend bool operator==(const Expression& a, const Expression& b) { return compare(a, b) == 0; }
  friend bool operator<(const Expression& a, const Expression& b) { return compare(a, b) < 0; }

  friend int compare(const Expression& a, const Expression& b) {
    if (a.repr_ == b.repr_) return 0;
    if (a.repr_->index() != b.repr_->index())
      return a.repr_->index() < b.repr_->index() ? -1 : 1;
    switch (a.kind()) {
      case Kind::Literal:
        return compare(a.literal_value(), b.literal_value());
      case Kind::Var:
        return compare(a.var(), b.var());
      case Kind::Call: {
        if (int c = compare(a.fn(), b.fn()); c != 0) return c;
        auto x = a.args(), y = b.args();
        std::size_t n = std::min(x.size(), y.size());
        for (std::size_t i = 0; i < n; ++i)
          if (int c = compare(x[i], y[i]); c != 0) return c;
        return x.size() == y.size() ? 0 : (x.size() < y.size() ? -1 : 1);
      }
    }
    return 0;  // unreachable
  }

private:
  using Repr = std::variant<GroundTerm, Variable, Call>;
  explicit Expression(std::shared_ptr<const Repr> r) : repr_(std::move(r)) {}

  std::shared_ptr<const Repr> repr_;
};

// Leaf of a symbolic term: a builtin value or a variable.
class SymbolicLeaf {
public:
  SymbolicLeaf(BuiltinValue b) : v_(std::move(b)) {}  // NOLINT(google-explicit-constructor)
  SymbolicLeaf(Variable v) : v_(std::move(v)) {}      // NOLINT(google-explicit-constructor)

  bool is_variable() const { return v_.index() == 1; }
  const BuiltinValue& value() const { return std::get<0>(v_); }
  const Variable& var() const { return std::get<1>(v_); }

  friend bool operator==(const SymbolicLeaf& a, const SymbolicLeaf& b) {
    return compare(a, b) == 0;
  }
  friend int compare(const SymbolicLeaf& a, const SymbolicLeaf& b) {
    if (a.v_.index() != b.v_.index()) return a.v_.index() < b.v_.index() ? -1 : 1;
    return a.is_variable() ? compare(a.var(), b.var()) : compare(a.value(), b.value());
  }

private:
  std::variant<BuiltinValue, Variable> v_;
};

using SymbolicTerm = Term<SymbolicLeaf>;
using ExpressionTerm = Term<Expression>;

inline SymbolicTerm var_pattern(std::string name) {
  return SymbolicTerm(SymbolicLeaf(Variable(std::move(name))));
}

// Embeds a ground term as a (variable-free) symbolic term.
inline SymbolicTerm to_symbolic(const GroundTerm& g) {
  if (g.is_leaf()) return SymbolicTerm(SymbolicLeaf(g.leaf()));
  std::vector<SymbolicTerm> children;
  children.reserve(g.children().size());
  for (const GroundTerm& c : g.children()) children.push_back(to_symbolic(c));
  return SymbolicTerm(g.symbol(), std::move(children));
}

// Embeds a symbolic term as an expression term: variables become variable
// expressions, builtin leaves become ground literals.
inline ExpressionTerm to_expression_term(const SymbolicTerm& t) {
  if (t.is_leaf()) {
    const SymbolicLeaf& l = t.leaf();
    if (l.is_variable()) return ExpressionTerm(Expression::variable(l.var()));
    return ExpressionTerm(Expression::literal(GroundTerm(l.value())));
  }
  std::vector<ExpressionTerm> children;
  children.reserve(t.children().size());
  for (const SymbolicTerm& c : t.children()) children.push_back(to_expression_term(c));
  return ExpressionTerm(t.symbol(), std::move(children));
}

// Inverse of to_symbolic; fails when a variable occurs.
inline std::optional<GroundTerm> to_ground(const SymbolicTerm& t) {
  if (t.is_leaf()) {
    if (t.leaf().is_variable()) return std::nullopt;
    return GroundTerm(t.leaf().value());
  }
  std::vector<GroundTerm> children;
  children.reserve(t.children().size());
  for (const SymbolicTerm& c : t.children()) {
    auto g = to_ground(c);
    if (!g) return std::nullopt;
    children.push_back(std::move(*g));
  }
  return GroundTerm(t.symbol(), std::move(children));
}

// --- substitution -----------------------------------------------------

// Replaces every leaf occurrence of x in t by `replacement`; node structure
// and all other leaves are untouched.
inline SymbolicTerm subst(const SymbolicTerm& t, const Variable& x,
                          const SymbolicTerm& replacement) {
  if (t.is_leaf()) {
    if (t.leaf().is_variable() && t.leaf().var() == x) return replacement;
    return t;
  }
  std::vector<SymbolicTerm> children;
  children.reserve(t.children().size());
  for (const SymbolicTerm& c : t.children()) children.push_back(subst(c, x, replacement));
  return SymbolicTerm(t.symbol(), std::move(children));
}

inline Expression subst(const Expression& e, const Variable& x, const Expression& replacement) {
  switch (e.kind()) {
    case Expression::Kind::Literal:
      return e;
    case Expression::Kind::Var:
      return e.var() == x ? replacement : e;
    case Expression::Kind::Call: {
      std::vector<Expression> args;
      args.reserve(e.args().size());
      for (const Expression& a : e.args()) args.push_back(subst(a, x, replacement));
      return Expression::call(e.fn(), std::move(args));
    }
  }
  return e;  // unreachable
}

// --- free variables ---------------------------------------------------

inline void collect_free_vars(const SymbolicTerm& t, std::set<Variable>& out) {
  if (t.is_leaf()) {
    if (t.leaf().is_variable()) out.insert(t.leaf().var());
    return;
  }
  for (const SymbolicTerm& c : t.children()) collect_free_vars(c, out);
}

inline void collect_free_vars(const Expression& e, std::set<Variable>& out) {
  switch (e.kind()) {
    case Expression::Kind::Literal:
      return;
    case Expression::Kind::Var:
      out.insert(e.var());
      return;
    case Expression::Kind::Call:
      for (const Expression& a : e.args()) collect_free_vars(a, out);
      return;
  }
}

inline void collect_free_vars(const ExpressionTerm& t, std::set<Variable>& out) {
  if (t.is_leaf()) {
    collect_free_vars(t.leaf(), out);
    return;
  }
  for (const ExpressionTerm& c : t.children()) collect_free_vars(c, out);
}

inline std::set<Variable> free_vars(const SymbolicTerm& t) {
  std::set<Variable> out;
  collect_free_vars(t, out);
  return out;
}

inline std::set<Variable> free_vars(const Expression& e) {
  std::set<Variable> out;
  collect_free_vars(e, out);
  return out;
}

inline std::set<Variable> free_vars(const ExpressionTerm& t) {
  std::set<Variable> out;
  collect_free_vars(t, out);
  return out;
}

}  // namespace strew
