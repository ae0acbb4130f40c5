// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// fails. Tolerances and iteration counts are fixed here, in code.
//
//  1. two-counters from state[n,0] for n up to 1'000'000: stuck at
//     state[0, n(n+1)/2] in exactly n steps, <= 60 s at the largest size.
//  2. IMP count-to for $arg 1..7: result n(n+1)/2, <= 5 s per run.
//  3. interpreter soundness on 10'000 random (theory, term) pairs and on
//     every step of the bundled benchmarks at small sizes.
//  4. interpreter completeness on the same corpus.
//  5. matcher soundness/completeness on 10'000 generated (pattern, term)
//     and (pattern, valuation) pairs.
//  6. condition evaluation and right-hand side evaluation agree with the
//     declarative relations on 10'000 generated inputs each.
//  7. frontend determinism: byte-identical recompilation, 41 rules for the
//     bundled IMP definition (28 generated + 13 user), all well-formed.
//  8. 1'000 random arithmetic expressions evaluate correctly under the
//     compiled IMP theory, with the executed trace validated.
//  9. builtin totality: no traps, results match an independent reference
//     (error exactly on ill-typed tuples), dict laws on 10'000 inputs.

#include <chrono>
#include <cstdio>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "strew/strew.hpp"
#include "support/generators.hpp"

using namespace strew;

namespace {

const std::string kLanguages = STREW_LANGUAGES_DIR;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

CompiledLanguage compile_bundled(const StaticModel& model, const char* file) {
  return compile_definition(parse_definition(read_file(kLanguages + "/" + file)), model);
}

GroundTerm bundled_start(const StaticModel& model, const RewritingTheory& theory,
                         const char* program_file, const GroundTerm& arg) {
  GroundTerm prog = parse_term_file(read_file(kLanguages + "/" + program_file));
  std::vector<GroundTerm> args{arg};
  return wrap_for_theory(theory, substitute_args(prog, args));
}

// --- criterion 1 -----------------------------------------------------------

std::string criterion_tc_large_inputs() {
  StaticModel model = default_model();
  CompiledLanguage tc = compile_bundled(model, "two-counters.m");
  for (long n : {10L, 1000L, 100000L, 1000000L}) {
    GroundTerm start{Symbol("state"), {int_term(n), int_term(0)}};
    auto t0 = std::chrono::steady_clock::now();
    RunResult res = run(model, tc.theory, start, static_cast<std::uint64_t>(n) + 8);
    double secs = seconds_since(t0);
    GroundTerm want{Symbol("state"), {int_term(0), int_term(gauss_ref(n))}};
    if (res.exhausted) return "n=" + std::to_string(n) + ": not stuck";
    if (!(res.final == want))
      return "n=" + std::to_string(n) + ": final " + print_term(res.final);
    if (res.steps_taken != static_cast<std::uint64_t>(n))
      return "n=" + std::to_string(n) + ": " + std::to_string(res.steps_taken) + " steps";
    if (n == 1000000 && secs > 60.0)
      return "n=1000000 took " + std::to_string(secs) + " s (ceiling 60 s)";
  }
  return "";
}

// --- criterion 2 -----------------------------------------------------------

std::string criterion_imp_end_to_end() {
  StaticModel model = default_model();
  CompiledLanguage imp = compile_bundled(model, "imp.m");
  for (long n = 1; n <= 7; ++n) {
    GroundTerm start = bundled_start(model, imp.theory, "imp-count-to.term", int_term(n));
    auto t0 = std::chrono::steady_clock::now();
    RunResult res = run(model, imp.theory, start, 1000000);
    double secs = seconds_since(t0);
    if (res.exhausted) return "$arg=" + std::to_string(n) + ": not stuck";
    auto v = cseq_result(res.final);
    if (!v || !(*v == int_term(gauss_ref(n))))
      return "$arg=" + std::to_string(n) + ": final " + print_term(res.final);
    if (secs > 5.0)
      return "$arg=" + std::to_string(n) + " took " + std::to_string(secs) + " s (ceiling 5 s)";
  }
  return "";
}

// --- criteria 3 and 4 ------------------------------------------------------

struct CorpusStats {
  long stepped = 0;
  long applicable = 0;
  std::string failure;
};

CorpusStats check_interpreter_on_random_corpus(long iterations) {
  StaticModel model = default_model();
  testgen::Rng rng(0xACCE55);
  CorpusStats stats;
  for (long i = 0; i < iterations; ++i) {
    RewritingTheory theory = testgen::gen_theory(rng, 4);
    for (const RewritingRule& r : theory.rules)
      if (!check_rule_wf(r)) {
        stats.failure = "generator produced an ill-formed rule";
        return stats;
      }
    GroundTerm g = testgen::gen_subject(rng, theory);

    StepOutcome out = step(model, theory, g);
    auto applicable = find_applicable_rule(model, theory, g);

    if (out) {
      ++stats.stepped;
      if (!verify_witness(model, theory, g, out->next, StepWitness{out->rule_index, out->rho})) {
        stats.failure = "soundness: witness failed to verify at iteration " + std::to_string(i);
        return stats;
      }
      if (!step_related(model, theory, g, out->next)) {
        stats.failure = "soundness: checker rejects the step at iteration " + std::to_string(i);
        return stats;
      }
    }
    if (applicable) {
      ++stats.applicable;
      if (!out) {
        stats.failure = "completeness: applicable rule but Stuck at iteration " +
                        std::to_string(i);
        return stats;
      }
    } else if (out) {
      stats.failure = "checker finds no applicable rule but the interpreter stepped at "
                      "iteration " + std::to_string(i);
      return stats;
    }
  }
  return stats;
}

std::string check_bundled_traces() {
  StaticModel model = default_model();
  struct Case {
    const char* definition;
    const char* program;
    std::function<GroundTerm(long)> arg;
    std::vector<long> sizes;
  };
  const std::vector<Case> cases = {
      {"two-counters.m", "two-counters.term", [](long n) { return int_term(n); }, {10}},
      {"unary-fib.m", "unary-fib.term", [](long n) { return unary_term(n); },
       {1, 2, 3, 4, 5, 6, 7, 8}},
      {"unary-fact.m", "unary-fact.term", [](long n) { return unary_term(n); },
       {1, 2, 3, 4, 5}},
      {"native-fib.m", "native-fib.term", [](long n) { return int_term(n); }, {1, 5, 11}},
      {"imp.m", "imp-count-to.term", [](long n) { return int_term(n); }, {1, 2, 3}},
  };
  for (const Case& c : cases) {
    CompiledLanguage lang = compile_bundled(model, c.definition);
    for (long n : c.sizes) {
      GroundTerm g = bundled_start(model, lang.theory, c.program, c.arg(n));
      for (std::uint64_t steps = 0;; ++steps) {
        if (steps > 5000000)
          return std::string(c.definition) + " size " + std::to_string(n) + ": runaway";
        StepOutcome out = step(model, lang.theory, g);
        if (!out) {
          if (find_applicable_rule(model, lang.theory, g))
            return std::string(c.definition) + " size " + std::to_string(n) +
                   ": stuck but the checker finds an applicable rule";
          break;
        }
        if (!verify_witness(model, lang.theory, g, out->next,
                            StepWitness{out->rule_index, out->rho}) ||
            !step_related(model, lang.theory, g, out->next))
          return std::string(c.definition) + " size " + std::to_string(n) + ": step " +
                 std::to_string(steps) + " not confirmed";
        g = out->next;
      }
    }
  }
  return "";
}

// --- criterion 5 -----------------------------------------------------------

std::string criterion_matcher_properties() {
  StaticModel model = default_model();
  testgen::Rng rng(0x1E44A1);
  for (long i = 0; i < 10000; ++i) {
    // (a) soundness on arbitrary pairs, biased towards matchable ones
    SymbolicTerm phi = testgen::gen_symbolic(rng, 3);
    GroundTerm g = rng.chance(0.5)
                       ? testgen::gen_ground(rng, 3)
                       : instantiate(phi, testgen::gen_valuation(rng, free_vars(phi)))
                             .value_or(testgen::gen_ground(rng, 3));
    auto rho = try_match(phi, g);
    if (rho) {
      if (!sat_sym(model, *rho, g, phi))
        return "soundness: match does not satisfy at iteration " + std::to_string(i);
      if (rho->domain() != free_vars(phi))
        return "soundness: domain is not FV(phi) at iteration " + std::to_string(i);
    }

    // (b) completeness from a generated valuation
    SymbolicTerm psi = testgen::gen_symbolic(rng, 3);
    Valuation full = testgen::gen_valuation(rng, free_vars(psi));
    if (rng.chance(0.3)) full.bind(Variable("Zextra"), testgen::gen_ground(rng, 2));
    auto inst = instantiate(psi, full);
    if (!inst) return "instantiate failed unexpectedly at iteration " + std::to_string(i);
    auto got = try_match(psi, *inst);
    if (!got) return "completeness: no match at iteration " + std::to_string(i);
    if (got->domain() != free_vars(psi))
      return "completeness: domain is not FV(phi) at iteration " + std::to_string(i);
    if (!full.extends(*got))
      return "completeness: generated valuation does not extend the match at iteration " +
             std::to_string(i);
  }
  return "";
}

// --- criterion 6 -----------------------------------------------------------

std::string criterion_evaluation_agreement() {
  StaticModel model = default_model();
  testgen::Rng rng(0xA9EE);
  std::vector<Variable> vars{Variable("A"), Variable("B")};
  for (long i = 0; i < 10000; ++i) {
    std::set<Variable> bound;
    if (rng.chance(0.85)) bound.insert(Variable("A"));
    if (rng.chance(0.85)) bound.insert(Variable("B"));
    Valuation rho = testgen::gen_valuation(rng, bound);

    SideCondition c{testgen::gen_expression(rng, vars, 3),
                    testgen::gen_expression(rng, vars, 3)};
    std::vector<SideCondition> cs{c};
    if (evaluate_condition(model, rho, cs) != side_condition_holds(model, rho, c))
      return "condition disagreement at iteration " + std::to_string(i);

    ExpressionTerm t = testgen::gen_expression_term(rng, vars, 3);
    auto g = evaluate(model, rho, t);
    if (g) {
      if (!sat_exprterm(model, rho, *g, t))
        return "evaluate result not satisfying at iteration " + std::to_string(i);
      if (sat_exprterm(model, rho, GroundTerm(Symbol("perturbed"), {*g}), t))
        return "perturbed result satisfies at iteration " + std::to_string(i);
    } else {
      for (int probe = 0; probe < 3; ++probe)
        if (sat_exprterm(model, rho, testgen::gen_ground(rng, 2), t))
          return "undefined evaluation but a probe satisfies at iteration " + std::to_string(i);
    }
  }
  return "";
}

// --- criterion 7 -----------------------------------------------------------

std::string criterion_frontend_determinism() {
  StaticModel model = default_model();
  const char* files[] = {"imp.m",        "two-counters.m", "imp-fragment.m",
                         "unary-fib.m",  "unary-fact.m",   "native-fib.m"};
  for (const char* f : files) {
    std::string source = read_file(kLanguages + "/" + f);
    CompiledLanguage a = compile_definition(parse_definition(source), model);
    CompiledLanguage b = compile_definition(parse_definition(source), model);
    std::uint64_t digest = fnv1a64(source);
    if (serialize_theory(a, digest) != serialize_theory(b, digest))
      return std::string(f) + ": recompilation is not byte-identical";
    for (const RewritingRule& r : a.theory.rules)
      if (!check_rule_wf(r)) return std::string(f) + ": emitted rule not well-formed";
  }
  CompiledLanguage imp = compile_bundled(model, "imp.m");
  if (imp.theory.rules.size() != 41)
    return "imp.m compiled to " + std::to_string(imp.theory.rules.size()) + " rules, want 41";
  std::size_t generated = 0;
  for (const RewritingRule& r : imp.theory.rules)
    if (r.action.name.rfind("heat.", 0) == 0 || r.action.name.rfind("cool.", 0) == 0)
      ++generated;
  if (generated != 28) return "imp.m has " + std::to_string(generated) + " generated rules";
  return "";
}

// --- criterion 8 -----------------------------------------------------------

std::string criterion_heating_cooling() {
  StaticModel model = default_model();
  CompiledLanguage imp = compile_bundled(model, "imp.m");
  testgen::Rng rng(0x4EA7);
  for (long i = 0; i < 1000; ++i) {
    GroundTerm expr = testgen::gen_arith(rng, 5);
    GroundTerm start = wrap_for_theory(imp.theory, expr);
    RunOptions opts;
    opts.fuel = 1000000;
    opts.record_trace = true;
    RunResult res = run(model, imp.theory, start, opts);
    if (res.exhausted) return "expression " + std::to_string(i) + ": not stuck";
    auto v = cseq_result(res.final);
    if (!v || !(*v == int_term(testgen::eval_arith_ref(expr))))
      return "expression " + std::to_string(i) + ": wrong value in " + print_term(res.final);
    std::span<const GroundTerm> middle;
    if (res.steps_taken > 0)
      middle = std::span<const GroundTerm>(res.trace).subspan(1, res.steps_taken - 1);
    if (!trace_related(model, imp.theory, start, res.action_word, middle, res.final))
      return "expression " + std::to_string(i) + ": trace validation failed";
  }
  return "";
}

// --- criterion 9 -----------------------------------------------------------

// Independent reference for every builtin in the default catalog.
namespace ref {

bool leaf_kind(const GroundTerm& t, BuiltinKind k) {
  return t.is_leaf() && t.leaf().kind() == k;
}

std::optional<GroundTerm> apply(const std::string& fn, std::span<const GroundTerm> a) {
  auto err = error_term();
  if (fn == "bool.true") return bool_term(true);
  if (fn == "bool.false") return bool_term(false);
  if (fn == "map.empty") return GroundTerm(BuiltinValue::dict({}));
  if (fn == "z.is") return bool_term(leaf_kind(a[0], BuiltinKind::Int));
  if (fn == "bool.is") return bool_term(leaf_kind(a[0], BuiltinKind::Bool));
  if (fn == "string.is") return bool_term(leaf_kind(a[0], BuiltinKind::Str));
  if (fn == "list.is") return bool_term(leaf_kind(a[0], BuiltinKind::List));
  if (fn == "map.is") return bool_term(leaf_kind(a[0], BuiltinKind::Dict));
  if (fn == "term.is_builtin") return bool_term(a[0].is_leaf());
  if (fn == "bool.neg")
    return leaf_kind(a[0], BuiltinKind::Bool) ? bool_term(!a[0].leaf().as_bool()) : err;
  if (fn == "z.plus" || fn == "z.minus" || fn == "z.eq" || fn == "z.le" || fn == "z.lt") {
    if (!leaf_kind(a[0], BuiltinKind::Int) || !leaf_kind(a[1], BuiltinKind::Int)) return err;
    const Int& x = a[0].leaf().as_int();
    const Int& y = a[1].leaf().as_int();
    if (fn == "z.plus") return int_term(Int(x + y));
    if (fn == "z.minus") return int_term(Int(x - y));
    if (fn == "z.eq") return bool_term(x == y);
    if (fn == "z.le") return bool_term(x <= y);
    return bool_term(x < y);
  }
  if (fn == "bool.and" || fn == "bool.or" || fn == "bool.eq") {
    if (!leaf_kind(a[0], BuiltinKind::Bool) || !leaf_kind(a[1], BuiltinKind::Bool)) return err;
    bool x = a[0].leaf().as_bool(), y = a[1].leaf().as_bool();
    if (fn == "bool.and") return bool_term(x && y);
    if (fn == "bool.or") return bool_term(x || y);
    return bool_term(x == y);
  }
  if (fn == "string.eq") {
    if (!leaf_kind(a[0], BuiltinKind::Str) || !leaf_kind(a[1], BuiltinKind::Str)) return err;
    return bool_term(a[0].leaf().as_string() == a[1].leaf().as_string());
  }
  if (fn == "term.same_symbol")
    return bool_term(a[0].is_node() && a[1].is_node() && a[0].symbol() == a[1].symbol());
  if (fn == "list.cons") {
    if (!leaf_kind(a[1], BuiltinKind::List)) return err;
    BuiltinValue::List l{a[0]};
    for (const GroundTerm& t : a[1].leaf().as_list()) l.push_back(t);
    return GroundTerm(BuiltinValue::list(std::move(l)));
  }
  if (fn == "map.lookup") {
    if (!leaf_kind(a[0], BuiltinKind::Dict)) return err;
    const GroundTerm* v = a[0].leaf().as_dict().lookup(a[1]);
    return v ? *v : err;
  }
  if (fn == "map.update") {
    if (!leaf_kind(a[0], BuiltinKind::Dict)) return err;
    return GroundTerm(BuiltinValue::dict(a[0].leaf().as_dict().updated(a[1], a[2])));
  }
  return std::nullopt;  // not part of the catalog
}

}  // namespace ref

std::string criterion_builtin_totality() {
  StaticModel model = default_model();
  const char* names[] = {"bool.true", "bool.false", "map.empty",  "z.is",
                         "bool.is",   "string.is",  "list.is",    "map.is",
                         "term.is_builtin", "bool.neg", "z.plus", "z.minus",
                         "z.eq",      "z.le",       "z.lt",       "bool.and",
                         "bool.or",   "bool.eq",    "string.eq",  "term.same_symbol",
                         "list.cons", "map.lookup", "map.update"};

  // exhaustive over a small pool covering every builtin kind and node shapes
  std::vector<GroundTerm> pool{
      error_term(),
      bool_term(true),
      bool_term(false),
      int_term(-1),
      int_term(0),
      int_term(2),
      string_term("a"),
      string_term("b"),
      GroundTerm(BuiltinValue::symbol(Symbol("f"))),
      GroundTerm(BuiltinValue::list({int_term(1)})),
      GroundTerm(BuiltinValue::dict(TermDict().updated(int_term(0), bool_term(true)))),
      parse_ground_term("f[]"),
      parse_ground_term("f[(@builtin-int 1)]"),
      parse_ground_term("g[f[],(@builtin-int 2)]"),
  };

  testgen::Rng rng(0xB111);
  for (const char* fn : names) {
    const StaticModel::Entry* entry = model.lookup(fn);
    if (entry == nullptr) return std::string(fn) + " is not registered";
    std::size_t arity = entry->arity;

    auto check_tuple = [&](std::span<const GroundTerm> args) -> std::string {
      GroundTerm got = error_term();
      try {
        got = model.apply(FunctionName(fn), args);
      } catch (...) {
        return std::string(fn) + " trapped";
      }
      auto want = ref::apply(fn, args);
      if (!want) return std::string(fn) + " missing from the reference";
      if (!(got == *want)) return std::string(fn) + " disagrees with the reference";
      return "";
    };

    // exhaustive small domain
    std::vector<std::size_t> idx(arity, 0);
    for (;;) {
      std::vector<GroundTerm> args;
      for (std::size_t i : idx) args.push_back(pool[i]);
      if (std::string e = check_tuple(args); !e.empty()) return e + " (exhaustive)";
      std::size_t d = 0;
      while (d < arity && ++idx[d] == pool.size()) idx[d++] = 0;
      if (d == arity) break;
      if (arity == 0) break;
    }

    // random applications
    for (long i = 0; i < 10000; ++i) {
      std::vector<GroundTerm> args;
      for (std::size_t j = 0; j < arity; ++j) args.push_back(testgen::gen_ground(rng, 2));
      if (std::string e = check_tuple(args); !e.empty())
        return e + " at iteration " + std::to_string(i);
    }
  }

  // dict laws on random keys/values
  for (long i = 0; i < 10000; ++i) {
    TermDict d;
    std::size_t n = rng.below(4);
    for (std::size_t j = 0; j < n; ++j)
      d = d.updated(testgen::gen_ground(rng, 2), testgen::gen_ground(rng, 2));
    GroundTerm k = testgen::gen_ground(rng, 2);
    GroundTerm k2 = testgen::gen_ground(rng, 2);
    GroundTerm v1 = testgen::gen_ground(rng, 2);
    GroundTerm v2 = testgen::gen_ground(rng, 2);
    TermDict u = d.updated(k, v1);
    if (u.lookup(k) == nullptr || !(*u.lookup(k) == v1))
      return "dict law lookup-after-update failed at iteration " + std::to_string(i);
    if (!(k2 == k)) {
      const GroundTerm* before = d.lookup(k2);
      const GroundTerm* after = u.lookup(k2);
      if ((before == nullptr) != (after == nullptr) ||
          (before != nullptr && !(*before == *after)))
        return "dict law untouched-key failed at iteration " + std::to_string(i);
    }
    if (!(d.updated(k, v1).updated(k, v2) == d.updated(k, v2)))
      return "dict law last-write-wins failed at iteration " + std::to_string(i);
  }
  return "";
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    const char* name;
    std::function<std::string()> check;
  };

  const std::vector<Criterion> criteria = {
      {1, "two-counters correctness up to n=1000000", criterion_tc_large_inputs},
      {2, "IMP count-to end to end", criterion_imp_end_to_end},
      {3, "interpreter soundness (random corpus + bundled traces)",
       [] {
         CorpusStats s = check_interpreter_on_random_corpus(10000);
         if (!s.failure.empty()) return s.failure;
         if (s.stepped < 1000) return std::string("corpus exercised too few steps");
         return check_bundled_traces();
       }},
      {4, "interpreter completeness (same corpus)",
       [] {
         // the corpus run checks both directions; rerun to count coverage
         CorpusStats s = check_interpreter_on_random_corpus(10000);
         if (!s.failure.empty()) return s.failure;
         if (s.applicable != s.stepped)
           return std::string("stepped/applicable counts diverge");
         if (s.applicable < 1000) return std::string("corpus found too few applicable rules");
         return std::string();
       }},
      {5, "matcher soundness and completeness", criterion_matcher_properties},
      {6, "evaluation agrees with the declarative relations", criterion_evaluation_agreement},
      {7, "frontend determinism and well-formedness", criterion_frontend_determinism},
      {8, "heating/cooling evaluates arithmetic correctly", criterion_heating_cooling},
      {9, "builtin totality and dict laws", criterion_builtin_totality},
  };

  bool all_ok = true;
  for (const Criterion& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    std::string failure = c.check();
    double secs = seconds_since(t0);
    if (failure.empty()) {
      std::printf("PASS criterion %d: %s (%.1f s)\n", c.number, c.name, secs);
    } else {
      std::printf("FAIL criterion %d: %s - %s\n", c.number, c.name, failure.c_str());
      all_ok = false;
    }
    std::fflush(stdout);
  }
  return all_ok ? 0 : 1;
}
