#pragma once

// Lexer and parsers for the textual syntax: patterns (symbolic terms),
// ground terms, expressions, and expression terms. The language-definition
// parser in frontend.hpp builds on the same machinery.
//
// Accepted leaf syntax: (@builtin-int 3), (@builtin-bool true),
// (@builtin-string "x"), (@builtin-symbol s), (@builtin-error),
// (@builtin-list [...]), (@builtin-map [k => v,...]). Inside expressions a
// ground term is quoted in square brackets: [(@builtin-int 0)], [var[]].
// A bare `s` is accepted for `s[]` wherever a term is expected; the printer
// always emits `s[]`. Bare integer and string literals are accepted as
// input sugar for the corresponding leaves.

#include <cctype>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "strew/builtin.hpp"
#include "strew/expression.hpp"

namespace strew {

struct SourceLoc {
  int line = 1;
  int col = 1;
};

class ParseError : public std::runtime_error {
public:
  ParseError(SourceLoc loc, const std::string& message)
      : std::runtime_error(std::to_string(loc.line) + ":" + std::to_string(loc.col) + ": " +
                           message),
        loc_(loc),
        message_(message) {}

  SourceLoc where() const { return loc_; }
  const std::string& message() const { return message_; }

private:
  SourceLoc loc_;
  std::string message_;
};

namespace detail {

enum class Tok {
  Ident,        // lowercase dotted: z.plus, builtin.cseq, freezer.plus.0
  Var,          // uppercase-initial: X, STATE
  Placeholder,  // $arg, $arg2
  IntLit,
  StringLit,
  At,  // @frames, @rule, @builtin-int, ... (text without '@')
  LBracket,
  RBracket,
  LParen,
  RParen,
  Comma,
  Semi,
  Colon,
  Slash,
  Arrow,  // =>
  Eq,     // =
  End,
};

struct Token {
  Tok kind;
  std::string text;
  SourceLoc loc;
};

inline const char* token_name(Tok k) {
  switch (k) {
    case Tok::Ident: return "identifier";
    case Tok::Var: return "variable";
    case Tok::Placeholder: return "placeholder";
    case Tok::IntLit: return "integer literal";
    case Tok::StringLit: return "string literal";
    case Tok::At: return "@-keyword";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Semi: return "';'";
    case Tok::Colon: return "':'";
    case Tok::Slash: return "'/'";
    case Tok::Arrow: return "'=>'";
    case Tok::Eq: return "'='";
    case Tok::End: return "end of input";
  }
  return "?";
}

class Lexer {
public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> lex() {
    std::vector<Token> out;
    for (;;) {
      skip_trivia();
      SourceLoc loc = loc_;
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, "", loc});
        return out;
      }
      char c = src_[pos_];
      if (std::islower(static_cast<unsigned char>(c))) {
        out.push_back({Tok::Ident, lex_ident(), loc});
      } else if (std::isupper(static_cast<unsigned char>(c))) {
        out.push_back({Tok::Var, lex_word(), loc});
      } else if (c == '$') {
        advance();
        std::string w = lex_word();
        if (w.empty()) throw ParseError(loc, "expected a name after '$'");
        out.push_back({Tok::Placeholder, "$" + w, loc});
      } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                 (c == '-' && pos_ + 1 < src_.size() &&
                  std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
        out.push_back({Tok::IntLit, lex_int(), loc});
      } else if (c == '"') {
        out.push_back({Tok::StringLit, lex_string(), loc});
      } else if (c == '@') {
        advance();
        std::string w;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '-'))
          w.push_back(take());
        if (w.empty()) throw ParseError(loc, "expected a keyword after '@'");
        out.push_back({Tok::At, std::move(w), loc});
      } else if (c == '=' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
        advance();
        advance();
        out.push_back({Tok::Arrow, "=>", loc});
      } else {
        advance();
        Tok k;
        switch (c) {
          case '[': k = Tok::LBracket; break;
          case ']': k = Tok::RBracket; break;
          case '(': k = Tok::LParen; break;
          case ')': k = Tok::RParen; break;
          case ',': k = Tok::Comma; break;
          case ';': k = Tok::Semi; break;
          case ':': k = Tok::Colon; break;
          case '/': k = Tok::Slash; break;
          case '=': k = Tok::Eq; break;
          default:
            throw ParseError(loc, std::string("unexpected character '") + c + "'");
        }
        out.push_back({k, std::string(1, c), loc});
      }
    }
  }

private:
  char take() {
    char c = src_[pos_];
    advance();
    return c;
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++loc_.line;
      loc_.col = 1;
    } else {
      ++loc_.col;
    }
    ++pos_;
  }

  void skip_trivia() {
    for (;;) {
      while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance();
      if (pos_ + 1 < src_.size() && src_[pos_] == '/' && src_[pos_ + 1] == '*') {
        SourceLoc start = loc_;
        advance();
        advance();
        while (pos_ + 1 < src_.size() && !(src_[pos_] == '*' && src_[pos_ + 1] == '/')) advance();
        if (pos_ + 1 >= src_.size()) throw ParseError(start, "unterminated comment");
        advance();
        advance();
        continue;
      }
      return;
    }
  }

  std::string lex_word() {
    std::string w;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      w.push_back(take());
    return w;
  }

  // Dotted identifier; segments after the first may start with any word
  // character (freezer names carry numeric segments).
  std::string lex_ident() {
    std::string w = lex_word();
    while (pos_ + 1 < src_.size() && src_[pos_] == '.' &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_ + 1])) || src_[pos_ + 1] == '_')) {
      w.push_back(take());  // '.'
      w += lex_word();
    }
    return w;
  }

  std::string lex_int() {
    std::string w;
    if (src_[pos_] == '-') w.push_back(take());
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
      w.push_back(take());
    return w;
  }

  std::string lex_string() {
    SourceLoc start = loc_;
    advance();  // opening quote
    std::string out;
    for (;;) {
      if (pos_ >= src_.size()) throw ParseError(start, "unterminated string literal");
      char c = take();
      if (c == '"') return out;
      if (c != '\\') {
        out.push_back(c);
        continue;
      }
      if (pos_ >= src_.size()) throw ParseError(start, "unterminated string literal");
      char e = take();
      switch (e) {
        case '"': out.push_back('"'); break;
        case '\\': out.push_back('\\'); break;
        case 'n': out.push_back('\n'); break;
        case 't': out.push_back('\t'); break;
        case 'r': out.push_back('\r'); break;
        case 'x': {
          auto hexval = [&](char h) -> int {
            if (h >= '0' && h <= '9') return h - '0';
            if (h >= 'a' && h <= 'f') return h - 'a' + 10;
            if (h >= 'A' && h <= 'F') return h - 'A' + 10;
            return -1;
          };
          if (pos_ + 1 >= src_.size()) throw ParseError(loc_, "truncated \\x escape");
          int hi = hexval(take());
          int lo = hexval(take());
          if (hi < 0 || lo < 0) throw ParseError(loc_, "invalid \\x escape");
          out.push_back(static_cast<char>(hi * 16 + lo));
          break;
        }
        default:
          throw ParseError(loc_, std::string("unknown escape '\\") + e + "'");
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  SourceLoc loc_;
};

enum class TermMode { Symbolic, Ground, GroundWithPlaceholders };

class Parser {
public:
  explicit Parser(std::string_view src) : toks_(Lexer(src).lex()) {}

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }

  Token next() {
    Token t = peek();
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }

  bool at(Tok k) const { return peek().kind == k; }

  bool at_ident(std::string_view text) const {
    return peek().kind == Tok::Ident && peek().text == text;
  }

  Token expect(Tok k, const std::string& context) {
    if (!at(k))
      fail(peek(), std::string("expected ") + token_name(k) + " " + context + ", found " +
                       token_name(peek().kind) +
                       (peek().text.empty() ? "" : " '" + peek().text + "'"));
    return next();
  }

  [[noreturn]] void fail(const Token& t, std::string msg) { throw ParseError(t.loc, std::move(msg)); }

  void expect_end() {
    if (!at(Tok::End)) fail(peek(), "trailing input after term");
  }

  // pattern := VAR | IDENT [children] | builtin literal | [literal]
  SymbolicTerm parse_pattern(TermMode mode) {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Var: {
        if (mode != TermMode::Symbolic)
          fail(t, "variable '" + t.text + "' is not allowed in a ground term");
        return SymbolicTerm(SymbolicLeaf(Variable(next().text)));
      }
      case Tok::Placeholder: {
        if (mode != TermMode::GroundWithPlaceholders)
          fail(t, "placeholder '" + t.text + "' is not allowed here");
        return SymbolicTerm(Symbol(next().text));
      }
      case Tok::Ident: {
        Token head = next();
        std::vector<SymbolicTerm> children;
        if (at(Tok::LBracket)) {
          next();
          if (!at(Tok::RBracket)) {
            children.push_back(parse_pattern(mode));
            while (at(Tok::Comma)) {
              next();
              children.push_back(parse_pattern(mode));
            }
          }
          expect(Tok::RBracket, "to close the child list of '" + head.text + "'");
        }
        return SymbolicTerm(Symbol(head.text), std::move(children));
      }
      case Tok::LParen:
        return SymbolicTerm(SymbolicLeaf(parse_builtin_literal()));
      case Tok::LBracket: {
        next();
        BuiltinValue b = parse_builtin_literal();
        expect(Tok::RBracket, "to close the bracketed builtin literal");
        return SymbolicTerm(SymbolicLeaf(std::move(b)));
      }
      case Tok::IntLit:
        return SymbolicTerm(SymbolicLeaf(BuiltinValue::integer(Int(next().text, 10))));
      case Tok::StringLit:
        return SymbolicTerm(SymbolicLeaf(BuiltinValue::string(next().text)));
      default:
        fail(t, std::string("expected a term, found ") + token_name(t.kind));
    }
  }

  GroundTerm parse_ground(TermMode mode) {
    auto g = to_ground(parse_pattern(mode));
    assert(g.has_value());  // mode forbids variables
    return std::move(*g);
  }

  // ( @builtin-kind payload )
  BuiltinValue parse_builtin_literal() {
    expect(Tok::LParen, "to start a builtin literal");
    Token kw = expect(Tok::At, "naming the builtin kind");
    BuiltinValue out = BuiltinValue::error();
    if (kw.text == "builtin-error") {
      // no payload
    } else if (kw.text == "builtin-bool") {
      Token b = expect(Tok::Ident, "('true' or 'false')");
      if (b.text == "true")
        out = BuiltinValue::boolean(true);
      else if (b.text == "false")
        out = BuiltinValue::boolean(false);
      else
        fail(b, "expected 'true' or 'false', found '" + b.text + "'");
    } else if (kw.text == "builtin-int") {
      out = BuiltinValue::integer(Int(expect(Tok::IntLit, "after @builtin-int").text, 10));
    } else if (kw.text == "builtin-string") {
      out = BuiltinValue::string(expect(Tok::StringLit, "after @builtin-string").text);
    } else if (kw.text == "builtin-symbol") {
      out = BuiltinValue::symbol(Symbol(expect(Tok::Ident, "after @builtin-symbol").text));
    } else if (kw.text == "builtin-list") {
      expect(Tok::LBracket, "to open the list elements");
      BuiltinValue::List elems;
      if (!at(Tok::RBracket)) {
        elems.push_back(parse_ground(TermMode::Ground));
        while (at(Tok::Comma)) {
          next();
          elems.push_back(parse_ground(TermMode::Ground));
        }
      }
      expect(Tok::RBracket, "to close the list elements");
      out = BuiltinValue::list(std::move(elems));
    } else if (kw.text == "builtin-map") {
      expect(Tok::LBracket, "to open the map entries");
      TermDict d;
      if (!at(Tok::RBracket)) {
        for (;;) {
          Token keyloc = peek();
          GroundTerm k = parse_ground(TermMode::Ground);
          expect(Tok::Arrow, "between map key and value");
          GroundTerm v = parse_ground(TermMode::Ground);
          if (d.lookup(k) != nullptr) fail(keyloc, "duplicate key in map literal");
          d = d.updated(std::move(k), std::move(v));
          if (!at(Tok::Comma)) break;
          next();
        }
      }
      expect(Tok::RBracket, "to close the map entries");
      out = BuiltinValue::dict(std::move(d));
    } else {
      fail(kw, "unknown builtin literal '@" + kw.text + "'");
    }
    expect(Tok::RParen, "to close the builtin literal");
    return out;
  }

  // expr := VAR | IDENT(args) | [ground] | (expr) | builtin literal
  Expression parse_expression() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Var:
        return Expression::variable(Variable(next().text));
      case Tok::Ident: {
        Token head = next();
        if (!at(Tok::LParen))
          fail(peek(), "expected '(' after function name '" + head.text +
                           "' (write " + head.text + "[] for a term, or [" + head.text +
                           "[]] to quote one)");
        next();
        std::vector<Expression> args;
        if (!at(Tok::RParen)) {
          args.push_back(parse_expression());
          while (at(Tok::Comma)) {
            next();
            args.push_back(parse_expression());
          }
        }
        expect(Tok::RParen, "to close the arguments of '" + head.text + "'");
        return Expression::call(FunctionName(head.text), std::move(args));
      }
      case Tok::LParen: {
        if (peek(1).kind == Tok::At) return Expression::literal(GroundTerm(parse_builtin_literal()));
        next();
        Expression e = parse_expression();
        expect(Tok::RParen, "to close the parenthesized expression");
        return e;
      }
      case Tok::LBracket: {
        next();
        GroundTerm g = parse_ground(TermMode::Ground);
        expect(Tok::RBracket, "to close the quoted term");
        return Expression::literal(std::move(g));
      }
      case Tok::IntLit:
        return Expression::literal(int_term(Int(next().text, 10)));
      case Tok::StringLit:
        return Expression::literal(string_term(next().text));
      default:
        fail(t, std::string("expected an expression, found ") + token_name(t.kind));
    }
  }

  // eterm := IDENT [children] | expr
  ExpressionTerm parse_expression_term() {
    if (at(Tok::Ident)) {
      if (peek(1).kind == Tok::LBracket) {
        Token head = next();
        next();  // '['
        std::vector<ExpressionTerm> children;
        if (!at(Tok::RBracket)) {
          children.push_back(parse_expression_term());
          while (at(Tok::Comma)) {
            next();
            children.push_back(parse_expression_term());
          }
        }
        expect(Tok::RBracket, "to close the child list of '" + head.text + "'");
        return ExpressionTerm(Symbol(head.text), std::move(children));
      }
      if (peek(1).kind != Tok::LParen) {
        // bare s is s[]
        return ExpressionTerm(Symbol(next().text));
      }
    }
    return ExpressionTerm(parse_expression());
  }

private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace detail

// Whole-string entry points; all throw ParseError with a source location.

inline GroundTerm parse_ground_term(std::string_view text, bool allow_placeholders = false) {
  detail::Parser p(text);
  GroundTerm g = p.parse_ground(allow_placeholders ? detail::TermMode::GroundWithPlaceholders
                                                   : detail::TermMode::Ground);
  p.expect_end();
  return g;
}

inline SymbolicTerm parse_pattern(std::string_view text) {
  detail::Parser p(text);
  SymbolicTerm t = p.parse_pattern(detail::TermMode::Symbolic);
  p.expect_end();
  return t;
}

inline Expression parse_expression(std::string_view text) {
  detail::Parser p(text);
  Expression e = p.parse_expression();
  p.expect_end();
  return e;
}

inline ExpressionTerm parse_expression_term(std::string_view text) {
  detail::Parser p(text);
  ExpressionTerm t = p.parse_expression_term();
  p.expect_end();
  return t;
}

}  // namespace strew
