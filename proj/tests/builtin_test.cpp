#include <catch2/catch.hpp>

#include <vector>

#include "strew/parser.hpp"
#include "strew/printer.hpp"
#include "strew/static_model.hpp"
#include "support/generators.hpp"

using namespace strew;

namespace {
GroundTerm apply(const StaticModel& m, const char* fn, std::vector<GroundTerm> args) {
  return m.apply(FunctionName(fn), args);
}
}  // namespace

TEST_CASE("default model registers the catalog with the right arities") {
  StaticModel m = default_model();
  CHECK(m.lookup("z.plus")->arity == 2);
  CHECK(m.lookup("map.update")->arity == 3);
  CHECK(m.lookup("bool.true")->arity == 0);
  CHECK(m.lookup("bool.neg")->arity == 1);
  CHECK(m.lookup("term.same_symbol")->arity == 2);
  CHECK(m.lookup("list.cons")->arity == 2);
  CHECK(m.lookup("no.such.function") == nullptr);
}

TEST_CASE("integer arithmetic and comparisons") {
  StaticModel m = default_model();
  CHECK(apply(m, "z.plus", {int_term(3), int_term(4)}) == int_term(7));
  CHECK(apply(m, "z.minus", {int_term(3), int_term(4)}) == int_term(-1));
  CHECK(apply(m, "z.lt", {int_term(0), int_term(3)}) == bool_term(true));
  CHECK(apply(m, "z.le", {int_term(3), int_term(3)}) == bool_term(true));
  CHECK(apply(m, "z.eq", {int_term(3), int_term(4)}) == bool_term(false));
  // ill-typed tuples yield the error leaf, never a trap
  CHECK(apply(m, "z.plus", {bool_term(true), int_term(4)}) == error_term());
  CHECK(apply(m, "z.eq", {bool_term(true), int_term(4)}) == error_term());
}

TEST_CASE("boolean operations") {
  StaticModel m = default_model();
  CHECK(apply(m, "bool.true", {}) == bool_term(true));
  CHECK(apply(m, "bool.false", {}) == bool_term(false));
  CHECK(apply(m, "bool.and", {bool_term(true), bool_term(false)}) == bool_term(false));
  CHECK(apply(m, "bool.or", {bool_term(false), bool_term(true)}) == bool_term(true));
  CHECK(apply(m, "bool.neg", {bool_term(false)}) == bool_term(true));
  CHECK(apply(m, "bool.eq", {bool_term(true), bool_term(true)}) == bool_term(true));
  CHECK(apply(m, "bool.and", {int_term(1), bool_term(true)}) == error_term());
}

TEST_CASE("kind predicates are total booleans") {
  StaticModel m = default_model();
  CHECK(apply(m, "z.is", {int_term(1)}) == bool_term(true));
  CHECK(apply(m, "z.is", {bool_term(true)}) == bool_term(false));
  CHECK(apply(m, "z.is", {parse_ground_term("s[]")}) == bool_term(false));
  CHECK(apply(m, "bool.is", {bool_term(true)}) == bool_term(true));
  CHECK(apply(m, "string.is", {string_term("x")}) == bool_term(true));
  CHECK(apply(m, "list.is", {GroundTerm(BuiltinValue::list({}))}) == bool_term(true));
  CHECK(apply(m, "map.is", {GroundTerm(BuiltinValue::dict({}))}) == bool_term(true));
  CHECK(apply(m, "term.is_builtin", {int_term(1)}) == bool_term(true));
  CHECK(apply(m, "term.is_builtin", {parse_ground_term("s[]")}) == bool_term(false));
}

TEST_CASE("term.same_symbol compares head symbols, ignoring arity") {
  StaticModel m = default_model();
  GroundTerm var_x = parse_ground_term("var[(@builtin-string \"x\")]");
  CHECK(apply(m, "term.same_symbol", {var_x, parse_ground_term("var[]")}) == bool_term(true));
  CHECK(apply(m, "term.same_symbol", {var_x, parse_ground_term("w[]")}) == bool_term(false));
  // a leaf argument makes it false, not an error (value predicates rely on this)
  CHECK(apply(m, "term.same_symbol", {int_term(1), parse_ground_term("var[]")}) ==
        bool_term(false));
}

TEST_CASE("map operations") {
  StaticModel m = default_model();
  GroundTerm empty = apply(m, "map.empty", {});
  GroundTerm k = string_term("x");
  CHECK(apply(m, "map.lookup", {empty, k}) == error_term());  // unbound key
  GroundTerm d1 = apply(m, "map.update", {empty, k, int_term(1)});
  CHECK(apply(m, "map.lookup", {d1, k}) == int_term(1));
  // stored program values round-trip untouched
  GroundTerm prog = parse_ground_term("while[le[(@builtin-int 1),(@builtin-int 2)],skip[]]");
  GroundTerm d2 = apply(m, "map.update", {d1, int_term(0), prog});
  CHECK(apply(m, "map.lookup", {d2, int_term(0)}) == prog);
  CHECK(apply(m, "map.update", {int_term(3), k, k}) == error_term());
  CHECK(apply(m, "map.lookup", {int_term(3), k}) == error_term());
}

TEST_CASE("dict laws on random keys and values") {
  testgen::Rng rng(90125);
  for (int i = 0; i < 300; ++i) {
    TermDict d;
    std::size_t n = rng.below(4);
    for (std::size_t j = 0; j < n; ++j)
      d = d.updated(testgen::gen_ground(rng, 2), testgen::gen_ground(rng, 2));
    GroundTerm k = testgen::gen_ground(rng, 2);
    GroundTerm k2 = testgen::gen_ground(rng, 2);
    GroundTerm v1 = testgen::gen_ground(rng, 2);
    GroundTerm v2 = testgen::gen_ground(rng, 2);

    TermDict u = d.updated(k, v1);
    REQUIRE(u.lookup(k) != nullptr);
    CHECK(*u.lookup(k) == v1);
    if (!(k2 == k)) {
      const GroundTerm* before = d.lookup(k2);
      const GroundTerm* after = u.lookup(k2);
      CHECK((before == nullptr) == (after == nullptr));
      if (before != nullptr) CHECK(*before == *after);
    }
    // last write wins
    CHECK(d.updated(k, v1).updated(k, v2) == d.updated(k, v2));
    // iteration stays sorted by the canonical term order
    auto entries = u.entries();
    for (std::size_t j = 0; j + 1 < entries.size(); ++j)
      CHECK(compare(entries[j].first, entries[j + 1].first) < 0);
  }
}

TEST_CASE("list.cons prepends") {
  StaticModel m = default_model();
  GroundTerm nil{BuiltinValue::list({})};
  GroundTerm l1 = apply(m, "list.cons", {int_term(2), nil});
  GroundTerm l2 = apply(m, "list.cons", {int_term(1), l1});
  CHECK(l2 == GroundTerm(BuiltinValue::list({int_term(1), int_term(2)})));
  CHECK(apply(m, "list.cons", {int_term(1), int_term(2)}) == error_term());
}

TEST_CASE("string.eq") {
  StaticModel m = default_model();
  CHECK(apply(m, "string.eq", {string_term("a"), string_term("a")}) == bool_term(true));
  CHECK(apply(m, "string.eq", {string_term("a"), string_term("b")}) == bool_term(false));
  CHECK(apply(m, "string.eq", {string_term("a"), int_term(1)}) == error_term());
}

TEST_CASE("model is extensible but names are unique") {
  StaticModel m = default_model();
  m.register_function("test.id", 1,
                      [](std::span<const GroundTerm> a) { return a[0]; });
  CHECK(apply(m, "test.id", {int_term(9)}) == int_term(9));
  CHECK_THROWS_AS(m.register_function("z.plus", 2, nullptr), std::invalid_argument);
}

TEST_CASE("application is total and deterministic on random inputs") {
  StaticModel m = default_model();
  testgen::Rng rng(5150);
  const char* names[] = {"z.plus", "z.lt", "bool.and", "bool.neg", "map.lookup",
                         "map.update", "list.cons", "term.same_symbol", "z.is", "string.eq"};
  for (int i = 0; i < 2000; ++i) {
    const char* fn = names[rng.below(std::size(names))];
    std::size_t arity = m.lookup(fn)->arity;
    std::vector<GroundTerm> args;
    for (std::size_t j = 0; j < arity; ++j) args.push_back(testgen::gen_ground(rng, 2));
    GroundTerm once = m.apply(FunctionName(fn), args);
    GroundTerm twice = m.apply(FunctionName(fn), args);
    CHECK(once == twice);
  }
}

TEST_CASE("builtin equality agrees with structural equality inside lists and dicts") {
  testgen::Rng rng(8080);
  for (int i = 0; i < 200; ++i) {
    GroundTerm a = testgen::gen_ground(rng, 2);
    GroundTerm b = testgen::gen_ground(rng, 2);
    BuiltinValue la = BuiltinValue::list({a, b});
    BuiltinValue lb = BuiltinValue::list({a, b});
    CHECK(la == lb);
    CHECK((BuiltinValue::list({a}) == BuiltinValue::list({b})) == (a == b));
    TermDict d1 = TermDict().updated(a, b);
    TermDict d2 = TermDict().updated(a, b);
    CHECK(BuiltinValue::dict(d1) == BuiltinValue::dict(d2));
  }
}
