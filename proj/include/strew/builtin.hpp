#pragma once

// Built-in values: the leaf type of ground terms. A builtin is an error
// marker, a boolean, an arbitrary-precision integer, a symbol, a string,
// a list of ground terms, or a finite dictionary from ground terms to
// ground terms. Equality is decidable across all variants.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "strew/term.hpp"

namespace strew {

using Int = mpz_class;

class BuiltinValue;
using GroundTerm = Term<BuiltinValue>;

inline int compare(const BuiltinValue& a, const BuiltinValue& b);

// Finite map from ground terms to ground terms. Entries are kept sorted by
// the canonical term order, so iteration order is deterministic and equal
// dictionaries are structurally equal.
class TermDict {
public:
  using Entry = std::pair<GroundTerm, GroundTerm>;

  TermDict() = default;

  std::size_t size() const { return entries_.size(); }
  std::span<const Entry> entries() const { return entries_; }

  const GroundTerm* lookup(const GroundTerm& key) const {
    auto it = find(key);
    return it != entries_.end() && it->first == key ? &it->second : nullptr;
  }

  // Last write wins.
  TermDict updated(GroundTerm key, GroundTerm value) const {
    TermDict out = *this;
    auto it = out.find(key);
    if (it != out.entries_.end() && it->first == key)
      it->second = std::move(value);
    else
      out.entries_.insert(it, Entry{std::move(key), std::move(value)});
    return out;
  }

  friend bool operator==(const TermDict& a, const TermDict& b) {
    return a.entries_ == b.entries_;
  }

  friend int compare(const TermDict& a, const TermDict& b) {
    std::size_t n = std::min(a.entries_.size(), b.entries_.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (int c = compare(a.entries_[i].first, b.entries_[i].first); c != 0) return c;
      if (int c = compare(a.entries_[i].second, b.entries_[i].second); c != 0) return c;
    }
    if (a.entries_.size() == b.entries_.size()) return 0;
    return a.entries_.size() < b.entries_.size() ? -1 : 1;
  }

private:
  std::vector<Entry>::iterator find(const GroundTerm& key) {
    return std::lower_bound(entries_.begin(), entries_.end(), key,
                            [](const Entry& e, const GroundTerm& k) { return e.first < k; });
  }
  std::vector<Entry>::const_iterator find(const GroundTerm& key) const {
    return std::lower_bound(entries_.begin(), entries_.end(), key,
                            [](const Entry& e, const GroundTerm& k) { return e.first < k; });
  }

  std::vector<Entry> entries_;
};

enum class BuiltinKind { Error, Bool, Int, Sym, Str, List, Dict };

class BuiltinValue {
public:
  struct ErrorV {
    friend bool operator==(ErrorV, ErrorV) { return true; }
  };
  using List = std::vector<GroundTerm>;

  static BuiltinValue error() { return BuiltinValue(Repr(std::in_place_index<0>, ErrorV{})); }
  static BuiltinValue boolean(bool b) { return BuiltinValue(Repr(std::in_place_index<1>, b)); }
  static BuiltinValue integer(Int z) { return BuiltinValue(Repr(std::in_place_index<2>, std::move(z))); }
  static BuiltinValue symbol(Symbol s) { return BuiltinValue(Repr(std::in_place_index<3>, std::move(s))); }
  static BuiltinValue string(std::string s) { return BuiltinValue(Repr(std::in_place_index<4>, std::move(s))); }
  static BuiltinValue list(List l) { return BuiltinValue(Repr(std::in_place_index<5>, std::move(l))); }
  static BuiltinValue dict(TermDict d) { return BuiltinValue(Repr(std::in_place_index<6>, std::move(d))); }

  BuiltinKind kind() const { return static_cast<BuiltinKind>(v_.index()); }

  bool is_error() const { return kind() == BuiltinKind::Error; }
  bool as_bool() const { return std::get<1>(v_); }
  const Int& as_int() const { return std::get<2>(v_); }
  const Symbol& as_symbol() const { return std::get<3>(v_); }
  const std::string& as_string() const { return std::get<4>(v_); }
  const List& as_list() const { return std::get<5>(v_); }
  const TermDict& as_dict() const { return std::get<6>(v_); }

  friend bool operator==(const BuiltinValue& a, const BuiltinValue& b) {
    return compare(a, b) == 0;
  }

private:
  using Repr = std::variant<ErrorV, bool, Int, Symbol, std::string, List, TermDict>;
  explicit BuiltinValue(Repr v) : v_(std::move(v)) {}

  friend int compare(const BuiltinValue& a, const BuiltinValue& b);

  Repr v_;
};

inline int compare(const BuiltinValue& a, const BuiltinValue& b) {
  if (a.v_.index() != b.v_.index()) return a.v_.index() < b.v_.index() ? -1 : 1;
  switch (a.kind()) {
    case BuiltinKind::Error:
      return 0;
    case BuiltinKind::Bool:
      return int(a.as_bool()) - int(b.as_bool());
    case BuiltinKind::Int:
      return cmp(a.as_int(), b.as_int());
    case BuiltinKind::Sym:
      return compare(a.as_symbol(), b.as_symbol());
    case BuiltinKind::Str:
      return a.as_string().compare(b.as_string());
    case BuiltinKind::List: {
      const auto& x = a.as_list();
      const auto& y = b.as_list();
      std::size_t n = std::min(x.size(), y.size());
      for (std::size_t i = 0; i < n; ++i)
        if (int c = compare(x[i], y[i]); c != 0) return c;
      return x.size() == y.size() ? 0 : (x.size() < y.size() ? -1 : 1);
    }
    case BuiltinKind::Dict:
      return compare(a.as_dict(), b.as_dict());
  }
  return 0;  // unreachable
}

// Leaf construction shorthands used throughout the library and tests.
inline GroundTerm int_term(Int z) { return GroundTerm(BuiltinValue::integer(std::move(z))); }
inline GroundTerm int_term(long z) { return int_term(Int(z)); }
inline GroundTerm bool_term(bool b) { return GroundTerm(BuiltinValue::boolean(b)); }
inline GroundTerm string_term(std::string s) { return GroundTerm(BuiltinValue::string(std::move(s))); }
inline GroundTerm error_term() { return GroundTerm(BuiltinValue::error()); }

}  // namespace strew
