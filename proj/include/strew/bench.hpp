#pragma once

// Bundled benchmark cases and a small harness around them. Every case pairs
// a language definition with a parameterized program and a closed-form (or
// reference-implementation) expectation on the final configuration, so the
// harness verifies correctness without trusting the interpreter it is
// timing. Expected values use plain arithmetic on arbitrary-precision
// integers.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <future>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "strew/files.hpp"
#include "strew/frontend.hpp"
#include "strew/interpreter.hpp"
#include "strew/printer.hpp"
#include "strew/program.hpp"
#include "strew/static_model.hpp"

namespace strew {

// fib(0)=0, fib(1)=fib(2)=1. The corpus README documents the convention;
// both Fibonacci languages follow it.
inline Int fib_ref(long n) {
  Int a = 0, b = 1;
  for (long i = 0; i < n; ++i) {
    Int next = a + b;
    a = b;
    b = next;
  }
  return a;
}

inline Int fact_ref(long n) {
  Int out = 1;
  for (long i = 2; i <= n; ++i) out *= i;
  return out;
}

inline Int gauss_ref(long n) { return Int(n) * Int(n + 1) / 2; }

inline GroundTerm unary_term(long n) {
  GroundTerm t{Symbol("zero")};
  for (long i = 0; i < n; ++i) t = GroundTerm(Symbol("succ"), {std::move(t)});
  return t;
}

inline std::optional<Int> unary_value(const GroundTerm& t) {
  Int n = 0;
  const GroundTerm* cur = &t;
  while (cur->is_node() && cur->symbol().name() == "succ" && cur->children().size() == 1) {
    ++n;
    cur = &cur->children()[0];
  }
  if (!cur->is_node() || cur->symbol().name() != "zero" || !cur->children().empty())
    return std::nullopt;
  return n;
}

// Result slot of a continuation-list configuration:
// c[builtin.cseq[X, builtin.empty_cseq[]], ...] yields X.
inline std::optional<GroundTerm> cseq_result(const GroundTerm& final) {
  if (!final.is_node() || final.symbol().name() != "c" || final.children().empty())
    return std::nullopt;
  const GroundTerm& list = final.children()[0];
  if (!list.is_node() || list.symbol().name() != "builtin.cseq" || list.children().size() != 2)
    return std::nullopt;
  const GroundTerm& rest = list.children()[1];
  if (!rest.is_node() || rest.symbol().name() != "builtin.empty_cseq") return std::nullopt;
  return list.children()[0];
}

struct BenchmarkCase {
  std::string name;
  std::string definition_file;  // relative to the languages directory
  std::string program_file;     // relative; may use $arg
  std::function<GroundTerm(long)> argument;
  // Checked on every repetition; must be computable without running the
  // interpreter.
  std::function<bool(long, const RunResult&)> expected;
  std::vector<long> default_sizes;
  std::uint64_t fuel = 100'000'000;
};

class BenchExpectationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline const std::vector<BenchmarkCase>& bundled_cases() {
  static const std::vector<BenchmarkCase> cases = [] {
    std::vector<BenchmarkCase> out;

    out.push_back({"tc",
                   "two-counters.m",
                   "two-counters.term",
                   [](long n) { return int_term(n); },
                   [](long n, const RunResult& r) {
                     GroundTerm want{Symbol("state"), {int_term(0), int_term(gauss_ref(n))}};
                     return !r.exhausted && r.final == want &&
                            r.steps_taken == static_cast<std::uint64_t>(n);
                   },
                   {10, 1000}});

    out.push_back({"imp-count-to",
                   "imp.m",
                   "imp-count-to.term",
                   [](long n) { return int_term(n); },
                   [](long n, const RunResult& r) {
                     auto v = cseq_result(r.final);
                     return !r.exhausted && v && *v == int_term(gauss_ref(n));
                   },
                   {1, 2, 3, 4, 5, 6, 7}});

    out.push_back({"native-fib",
                   "native-fib.m",
                   "native-fib.term",
                   [](long n) { return int_term(n); },
                   [](long n, const RunResult& r) {
                     GroundTerm want{Symbol("result"), {int_term(fib_ref(n))}};
                     return !r.exhausted && r.final == want;
                   },
                   {1, 11, 21, 31, 41, 51}});

    out.push_back({"unary-fib",
                   "unary-fib.m",
                   "unary-fib.term",
                   [](long n) { return unary_term(n); },
                   [](long n, const RunResult& r) {
                     auto v = cseq_result(r.final);
                     if (r.exhausted || !v) return false;
                     auto u = unary_value(*v);
                     return u && *u == fib_ref(n);
                   },
                   {1, 2, 3, 4, 5, 6, 7, 8}});

    out.push_back({"unary-fact",
                   "unary-fact.m",
                   "unary-fact.term",
                   [](long n) { return unary_term(n); },
                   [](long n, const RunResult& r) {
                     auto v = cseq_result(r.final);
                     if (r.exhausted || !v) return false;
                     auto u = unary_value(*v);
                     return u && *u == fact_ref(n);
                   },
                   {1, 2, 3, 4, 5}});

    return out;
  }();
  return cases;
}

struct BenchRow {
  std::string case_name;
  long size = 0;
  std::uint64_t steps = 0;
  double seconds = 0.0;  // median over repetitions; 0 in parallel mode
  bool ok = false;
};

struct SuiteReport {
  std::vector<BenchRow> rows;
};

namespace detail {

struct PreparedCase {
  const BenchmarkCase* spec;
  RewritingTheory theory;
  GroundTerm program_template;
};

inline BenchRow run_one(const StaticModel& model, const PreparedCase& prep, long size,
                        int repetitions, bool timed) {
  std::vector<GroundTerm> args{prep.spec->argument(size)};
  GroundTerm start =
      wrap_for_theory(prep.theory, substitute_args(prep.program_template, args));

  std::vector<double> times;
  BenchRow row{prep.spec->name, size, 0, 0.0, true};
  for (int rep = 0; rep < std::max(repetitions, 1); ++rep) {
    auto t0 = std::chrono::steady_clock::now();
    RunResult res = run(model, prep.theory, start, prep.spec->fuel);
    auto t1 = std::chrono::steady_clock::now();
    times.push_back(std::chrono::duration<double>(t1 - t0).count());
    row.steps = res.steps_taken;
    if (!prep.spec->expected(size, res))
      throw BenchExpectationError("benchmark '" + prep.spec->name + "' size " +
                                  std::to_string(size) + " produced an unexpected result after " +
                                  std::to_string(res.steps_taken) +
                                  " step(s): " + print_term(res.final) +
                                  (res.exhausted ? " (fuel exhausted)" : ""));
  }
  if (timed) {
    std::sort(times.begin(), times.end());
    row.seconds = times[times.size() / 2];
  }
  return row;
}

}  // namespace detail

// Runs the given cases at the given sizes (empty = per-case defaults).
// Sequential by default for timing stability; `parallel` fans the
// (case, size) tasks out and reports correctness only.
inline SuiteReport run_cases(const StaticModel& model, const std::filesystem::path& languages_dir,
                             std::span<const BenchmarkCase> cases, std::span<const long> sizes,
                             int repetitions, bool parallel = false) {
  std::vector<detail::PreparedCase> prepared;
  for (const BenchmarkCase& c : cases) {
    LanguageDefinition def = parse_definition(read_file(languages_dir / c.definition_file));
    CompiledLanguage lang = compile_definition(def, model);
    GroundTerm prog = parse_term_file(read_file(languages_dir / c.program_file));
    prepared.push_back({&c, std::move(lang.theory), std::move(prog)});
  }

  auto sizes_for = [&](const detail::PreparedCase& p) {
    return sizes.empty() ? std::span<const long>(p.spec->default_sizes) : sizes;
  };

  SuiteReport report;
  if (!parallel) {
    for (const auto& prep : prepared)
      for (long n : sizes_for(prep))
        report.rows.push_back(detail::run_one(model, prep, n, repetitions, /*timed=*/true));
    return report;
  }

  std::vector<std::future<BenchRow>> tasks;
  for (const auto& prep : prepared)
    for (long n : sizes_for(prep))
      tasks.push_back(std::async(std::launch::async, [&model, &prep, n, repetitions] {
        return detail::run_one(model, prep, n, repetitions, /*timed=*/false);
      }));
  for (auto& t : tasks) report.rows.push_back(t.get());
  return report;
}

inline SuiteReport run_suite(const StaticModel& model, const std::filesystem::path& languages_dir,
                             std::span<const std::string> case_names, std::span<const long> sizes,
                             int repetitions, bool parallel = false) {
  std::vector<BenchmarkCase> selected;
  if (case_names.empty()) {
    selected = bundled_cases();
  } else {
    for (const std::string& name : case_names) {
      bool found = false;
      for (const BenchmarkCase& c : bundled_cases())
        if (c.name == name) {
          selected.push_back(c);
          found = true;
        }
      if (!found) throw std::invalid_argument("unknown benchmark case '" + name + "'");
    }
  }
  return run_cases(model, languages_dir, selected, sizes, repetitions, parallel);
}

}  // namespace strew
