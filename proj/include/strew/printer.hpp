#pragma once

// Canonical text forms. The printers are the single source of truth for the
// on-disk syntax: parse_term(print_term(t)) == t, and serialized theories
// are byte-reproducible because every print function is deterministic.
//
// Nodes print as s[c1,c2,...] with no whitespace. Builtin leaves print in
// the (@builtin-... ) literal syntax. Inside expressions, a ground literal
// prints quoted in square brackets, e.g. z.lt([(@builtin-int 0)],M).

#include <string>
#include <string_view>

#include "strew/builtin.hpp"
#include "strew/expression.hpp"

namespace strew {

inline std::string escape_string_literal(std::string_view s) {
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(s.size() + 2);
  out.push_back('"');
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (c < 0x20) {
          out += "\\x";
          out.push_back(hex[c >> 4]);
          out.push_back(hex[c & 0xf]);
        } else {
          out.push_back(static_cast<char>(c));
        }
    }
  }
  out.push_back('"');
  return out;
}

namespace detail {

inline void print_ground(const GroundTerm& t, std::string& out);

inline void print_builtin(const BuiltinValue& b, std::string& out) {
  switch (b.kind()) {
    case BuiltinKind::Error:
      out += "(@builtin-error)";
      return;
    case BuiltinKind::Bool:
      out += b.as_bool() ? "(@builtin-bool true)" : "(@builtin-bool false)";
      return;
    case BuiltinKind::Int:
      out += "(@builtin-int ";
      out += b.as_int().get_str();
      out += ')';
      return;
    case BuiltinKind::Sym:
      out += "(@builtin-symbol ";
      out += b.as_symbol().name();
      out += ')';
      return;
    case BuiltinKind::Str:
      out += "(@builtin-string ";
      out += escape_string_literal(b.as_string());
      out += ')';
      return;
    case BuiltinKind::List: {
      out += "(@builtin-list [";
      bool first = true;
      for (const GroundTerm& e : b.as_list()) {
        if (!first) out += ',';
        first = false;
        print_ground(e, out);
      }
      out += "])";
      return;
    }
    case BuiltinKind::Dict: {
      out += "(@builtin-map [";
      bool first = true;
      for (const auto& [k, v] : b.as_dict().entries()) {
        if (!first) out += ',';
        first = false;
        print_ground(k, out);
        out += " => ";
        print_ground(v, out);
      }
      out += "])";
      return;
    }
  }
}

template <typename X, typename PrintLeaf>
void print_tree(const Term<X>& t, std::string& out, PrintLeaf&& leaf) {
  if (t.is_leaf()) {
    leaf(t.leaf(), out);
    return;
  }
  out += t.symbol().name();
  out += '[';
  bool first = true;
  for (const Term<X>& c : t.children()) {
    if (!first) out += ',';
    first = false;
    print_tree(c, out, leaf);
  }
  out += ']';
}

inline void print_ground(const GroundTerm& t, std::string& out) {
  print_tree(t, out, [](const BuiltinValue& b, std::string& o) { print_builtin(b, o); });
}

inline void print_expr(const Expression& e, std::string& out) {
  switch (e.kind()) {
    case Expression::Kind::Literal:
      out += '[';
      print_ground(e.literal_value(), out);
      out += ']';
      return;
    case Expression::Kind::Var:
      out += e.var().name();
      return;
    case Expression::Kind::Call: {
      out += e.fn().name();
      out += '(';
      bool first = true;
      for (const Expression& a : e.args()) {
        if (!first) out += ',';
        first = false;
        print_expr(a, out);
      }
      out += ')';
      return;
    }
  }
}

}  // namespace detail

inline std::string print_term(const GroundTerm& t) {
  std::string out;
  detail::print_ground(t, out);
  return out;
}

inline std::string print_term(const SymbolicTerm& t) {
  std::string out;
  detail::print_tree(t, out, [](const SymbolicLeaf& l, std::string& o) {
    if (l.is_variable())
      o += l.var().name();
    else
      detail::print_builtin(l.value(), o);
  });
  return out;
}

inline std::string print_term(const ExpressionTerm& t) {
  std::string out;
  detail::print_tree(t, out,
                     [](const Expression& e, std::string& o) { detail::print_expr(e, o); });
  return out;
}

inline std::string print_expression(const Expression& e) {
  std::string out;
  detail::print_expr(e, out);
  return out;
}

inline std::string print_builtin(const BuiltinValue& b) {
  std::string out;
  detail::print_builtin(b, out);
  return out;
}

}  // namespace strew
