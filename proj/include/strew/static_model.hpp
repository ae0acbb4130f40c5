#pragma once

// The static model: a registry of builtin function names, each with a fixed
// arity and a total, deterministic interpretation over ground terms.
// Ill-typed argument tuples never trap; they yield the error leaf. Totality
// is what keeps language definitions free of logical inconsistencies.

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "strew/builtin.hpp"
#include "strew/expression.hpp"

namespace strew {

class StaticModel {
public:
  using Fn = std::function<GroundTerm(std::span<const GroundTerm>)>;

  struct Entry {
    std::size_t arity;
    Fn fn;
  };

  // Names must be unique; extending the default model with additional
  // functions is supported, redefining one is not.
  void register_function(std::string name, std::size_t arity, Fn fn) {
    auto [it, inserted] = table_.emplace(std::move(name), Entry{arity, std::move(fn)});
    if (!inserted)
      throw std::invalid_argument("static model already defines function '" + it->first + "'");
  }

  const Entry* lookup(std::string_view name) const {
    auto it = table_.find(name);
    return it == table_.end() ? nullptr : &it->second;
  }

  // Total application: unknown names and arity mismatches yield the error
  // leaf, the same bottom value the registered interpretations use.
  GroundTerm apply(const FunctionName& f, std::span<const GroundTerm> args) const {
    const Entry* e = lookup(f.name());
    if (e == nullptr || e->arity != args.size()) return error_term();
    return e->fn(args);
  }

private:
  std::map<std::string, Entry, std::less<>> table_;
};

namespace detail {

inline bool is_leaf_kind(const GroundTerm& t, BuiltinKind k) {
  return t.is_leaf() && t.leaf().kind() == k;
}

inline GroundTerm int_binop(std::span<const GroundTerm> a, Int (*op)(const Int&, const Int&)) {
  if (!is_leaf_kind(a[0], BuiltinKind::Int) || !is_leaf_kind(a[1], BuiltinKind::Int))
    return error_term();
  return int_term(op(a[0].leaf().as_int(), a[1].leaf().as_int()));
}

inline GroundTerm int_relop(std::span<const GroundTerm> a, bool (*op)(const Int&, const Int&)) {
  if (!is_leaf_kind(a[0], BuiltinKind::Int) || !is_leaf_kind(a[1], BuiltinKind::Int))
    return error_term();
  return bool_term(op(a[0].leaf().as_int(), a[1].leaf().as_int()));
}

inline GroundTerm bool_binop(std::span<const GroundTerm> a, bool (*op)(bool, bool)) {
  if (!is_leaf_kind(a[0], BuiltinKind::Bool) || !is_leaf_kind(a[1], BuiltinKind::Bool))
    return error_term();
  return bool_term(op(a[0].leaf().as_bool(), a[1].leaf().as_bool()));
}

}  // namespace detail

// The default catalog. Kind predicates and term.same_symbol always return a
// boolean (they are predicates, not partial operations); everything else
// returns the error leaf on an ill-typed tuple.
inline StaticModel default_model() {
  using detail::is_leaf_kind;
  StaticModel m;

  auto is_kind = [](BuiltinKind k) {
    return [k](std::span<const GroundTerm> a) { return bool_term(is_leaf_kind(a[0], k)); };
  };

  m.register_function("bool.true", 0, [](auto) { return bool_term(true); });
  m.register_function("bool.false", 0, [](auto) { return bool_term(false); });
  m.register_function("map.empty", 0, [](auto) { return GroundTerm(BuiltinValue::dict({})); });

  m.register_function("z.is", 1, is_kind(BuiltinKind::Int));
  m.register_function("bool.is", 1, is_kind(BuiltinKind::Bool));
  m.register_function("string.is", 1, is_kind(BuiltinKind::Str));
  m.register_function("list.is", 1, is_kind(BuiltinKind::List));
  m.register_function("map.is", 1, is_kind(BuiltinKind::Dict));
  m.register_function("term.is_builtin", 1,
                      [](std::span<const GroundTerm> a) { return bool_term(a[0].is_leaf()); });
  m.register_function("bool.neg", 1, [](std::span<const GroundTerm> a) {
    if (!is_leaf_kind(a[0], BuiltinKind::Bool)) return error_term();
    return bool_term(!a[0].leaf().as_bool());
  });

  m.register_function("z.plus", 2, [](std::span<const GroundTerm> a) {
    return detail::int_binop(a, [](const Int& x, const Int& y) { return Int(x + y); });
  });
  m.register_function("z.minus", 2, [](std::span<const GroundTerm> a) {
    return detail::int_binop(a, [](const Int& x, const Int& y) { return Int(x - y); });
  });
  m.register_function("z.eq", 2, [](std::span<const GroundTerm> a) {
    return detail::int_relop(a, [](const Int& x, const Int& y) { return x == y; });
  });
  m.register_function("z.le", 2, [](std::span<const GroundTerm> a) {
    return detail::int_relop(a, [](const Int& x, const Int& y) { return x <= y; });
  });
  m.register_function("z.lt", 2, [](std::span<const GroundTerm> a) {
    return detail::int_relop(a, [](const Int& x, const Int& y) { return x < y; });
  });

  m.register_function("bool.and", 2, [](std::span<const GroundTerm> a) {
    return detail::bool_binop(a, [](bool x, bool y) { return x && y; });
  });
  m.register_function("bool.or", 2, [](std::span<const GroundTerm> a) {
    return detail::bool_binop(a, [](bool x, bool y) { return x || y; });
  });
  m.register_function("bool.eq", 2, [](std::span<const GroundTerm> a) {
    return detail::bool_binop(a, [](bool x, bool y) { return x == y; });
  });

  m.register_function("string.eq", 2, [](std::span<const GroundTerm> a) {
    if (!is_leaf_kind(a[0], BuiltinKind::Str) || !is_leaf_kind(a[1], BuiltinKind::Str))
      return error_term();
    return bool_term(a[0].leaf().as_string() == a[1].leaf().as_string());
  });

  // True iff both arguments are applications of the same symbol; the
  // arities are deliberately ignored, so s[] probes for any s-headed term.
  m.register_function("term.same_symbol", 2, [](std::span<const GroundTerm> a) {
    return bool_term(a[0].is_node() && a[1].is_node() && a[0].symbol() == a[1].symbol());
  });

  m.register_function("list.cons", 2, [](std::span<const GroundTerm> a) {
    if (!is_leaf_kind(a[1], BuiltinKind::List)) return error_term();
    BuiltinValue::List out;
    out.reserve(a[1].leaf().as_list().size() + 1);
    out.push_back(a[0]);
    for (const GroundTerm& t : a[1].leaf().as_list()) out.push_back(t);
    return GroundTerm(BuiltinValue::list(std::move(out)));
  });

  m.register_function("map.lookup", 2, [](std::span<const GroundTerm> a) {
    if (!is_leaf_kind(a[0], BuiltinKind::Dict)) return error_term();
    const GroundTerm* v = a[0].leaf().as_dict().lookup(a[1]);
    return v != nullptr ? *v : error_term();
  });
  m.register_function("map.update", 3, [](std::span<const GroundTerm> a) {
    if (!is_leaf_kind(a[0], BuiltinKind::Dict)) return error_term();
    return GroundTerm(BuiltinValue::dict(a[0].leaf().as_dict().updated(a[1], a[2])));
  });

  return m;
}

}  // namespace strew
