#pragma once

// First-order terms over an arbitrary leaf type, plus the symbol and
// variable types shared by the whole library. Terms are immutable values;
// copies share subtrees, so passing them around is cheap and thread-safe.

#include <cassert>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace strew {

// Names an interior node. Dotted names (z.plus, builtin.cseq) are ordinary
// symbols; the dots carry no namespace semantics.
class Symbol {
public:
  explicit Symbol(std::string name) : name_(std::move(name)) { assert(!name_.empty()); }

  const std::string& name() const { return name_; }

  friend bool operator==(const Symbol& a, const Symbol& b) { return a.name_ == b.name_; }
  friend bool operator<(const Symbol& a, const Symbol& b) { return a.name_ < b.name_; }

private:
  std::string name_;
};

class Variable {
public:
  explicit Variable(std::string name) : name_(std::move(name)) { assert(!name_.empty()); }

  const std::string& name() const { return name_; }

  friend bool operator==(const Variable& a, const Variable& b) { return a.name_ == b.name_; }
  friend bool operator<(const Variable& a, const Variable& b) { return a.name_ < b.name_; }

private:
  std::string name_;
};

inline int compare(const Symbol& a, const Symbol& b) { return a.name().compare(b.name()); }
inline int compare(const Variable& a, const Variable& b) { return a.name().compare(b.name()); }

// A term over X is a leaf holding an X, or a symbol applied to an ordered
// list of child terms. The child list may be empty (s[]). Equality is
// structural; the total order makes terms usable as dictionary keys.
template <typename X>
class Term {
public:
  struct Node {
    Symbol sym;
    std::vector<Term> children;
  };

  Term(X leaf)  // NOLINT(google-explicit-constructor): leaves embed freely
      : repr_(std::make_shared<const Repr>(std::in_place_index<0>, std::move(leaf))) {}

  Term(Symbol sym, std::vector<Term> children)
      : repr_(std::make_shared<const Repr>(std::in_place_index<1>,
                                           Node{std::move(sym), std::move(children)})) {}

  explicit Term(Symbol sym) : Term(std::move(sym), std::vector<Term>{}) {}

  bool is_leaf() const { return repr_->index() == 0; }
  bool is_node() const { return repr_->index() == 1; }

  const X& leaf() const { return std::get<0>(*repr_); }
  const Symbol& symbol() const { return std::get<1>(*repr_).sym; }
  std::span<const Term> children() const { return std::get<1>(*repr_).children; }

  // Total number of leaves and nodes; always >= 1.
  std::size_t size() const {
    if (is_leaf()) return 1;
    std::size_t n = 1;
    for (const Term& c : children()) n += c.size();
    return n;
  }

  friend bool operator==(const Term& a, const Term& b) { return compare(a, b) == 0; }
  friend bool operator!=(const Term& a, const Term& b) { return compare(a, b) != 0; }
  friend bool operator<(const Term& a, const Term& b) { return compare(a, b) < 0; }

  // Leaves sort before nodes; nodes by symbol, then children lexicographically.
  friend int compare(const Term& a, const Term& b) {
    if (a.repr_ == b.repr_) return 0;
    if (a.is_leaf() != b.is_leaf()) return a.is_leaf() ? -1 : 1;
    if (a.is_leaf()) return compare(a.leaf(), b.leaf());
    if (int c = compare(a.symbol(), b.symbol()); c != 0) return c;
    auto ac = a.children(), bc = b.children();
    std::size_t n = ac.size() < bc.size() ? ac.size() : bc.size();
    for (std::size_t i = 0; i < n; ++i)
      if (int c = compare(ac[i], bc[i]); c != 0) return c;
    return ac.size() == bc.size() ? 0 : (ac.size() < bc.size() ? -1 : 1);
  }

private:
  using Repr = std::variant<X, Node>;
  std::shared_ptr<const Repr> repr_;
};

inline Symbol sym(std::string name) { return Symbol(std::move(name)); }
inline Variable var(std::string name) { return Variable(std::move(name)); }

}  // namespace strew
