// Command-line driver: compile language definitions, run programs against
// compiled theories (optionally validating the produced trace against the
// declarative semantics), inspect compiled theories, and run the bundled
// benchmark suite.
//
// Exit codes: 0 success, 1 diagnostics, 2 usage error, 3 fuel exhausted,
// 4 trace validation failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "strew/strew.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDiagnostics = 1;
constexpr int kExitUsage = 2;
constexpr int kExitFuelExhausted = 3;
constexpr int kExitCheckFailed = 4;

int cmd_compile(const std::string& input, std::string output) {
  std::string source = strew::read_file(input);
  strew::CompiledLanguage lang;
  try {
    lang = strew::compile_definition(strew::parse_definition(source), strew::default_model());
  } catch (const strew::ParseError& e) {
    std::cerr << input << ":" << e.what() << "\n";
    return kExitDiagnostics;
  } catch (const strew::CompileError& e) {
    std::cerr << input << ":" << e.what() << "\n";
    return kExitDiagnostics;
  }
  if (lang.theory.rules.empty())
    std::cerr << "warning: " << input << ": compiled theory has no rules\n";
  if (output.empty())
    output = std::filesystem::path(input).replace_extension(".theory").string();
  strew::write_file(output, strew::serialize_theory(lang, strew::fnv1a64(source)));
  std::cout << output << ": " << lang.theory.rules.size() << " rule(s)\n";
  return kExitOk;
}

struct RunArgs {
  std::string theory_file;
  std::string program_file;
  std::vector<std::string> arg_texts;
  std::uint64_t fuel = UINT64_MAX;
  bool trace = false;
  bool trace_terms = false;
  bool check = false;
  bool stats = false;
  bool json = false;
};

int cmd_run(const RunArgs& a) {
  strew::StaticModel model = strew::default_model();
  strew::LoadedTheory loaded = [&] {
    try {
      return strew::parse_theory_file(strew::read_file(a.theory_file));
    } catch (const strew::ParseError& e) {
      throw std::runtime_error(a.theory_file + ":" + e.what());
    }
  }();
  const strew::RewritingTheory& theory = loaded.language.theory;

  strew::GroundTerm program = [&] {
    try {
      return strew::parse_term_file(strew::read_file(a.program_file));
    } catch (const strew::ParseError& e) {
      throw std::runtime_error(a.program_file + ":" + e.what());
    }
  }();
  std::vector<strew::GroundTerm> args;
  for (const std::string& t : a.arg_texts) args.push_back(strew::parse_ground_term(t));
  strew::GroundTerm start =
      strew::wrap_for_theory(theory, strew::substitute_args(program, args));

  strew::RunOptions opts;
  opts.fuel = a.fuel;
  opts.record_trace = a.check || a.trace_terms;

  auto t0 = std::chrono::steady_clock::now();
  strew::RunResult res = strew::run(model, theory, start, opts);
  auto seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  if (a.trace || a.trace_terms) {
    for (std::size_t i = 0; i < res.action_word.size(); ++i) {
      std::cout << i << " " << res.action_word[i].name;
      if (a.trace_terms) std::cout << " " << strew::print_term(res.trace[i + 1]);
      std::cout << "\n";
    }
  }

  if (a.check) {
    std::span<const strew::GroundTerm> middle;
    if (res.steps_taken > 0)
      middle = std::span<const strew::GroundTerm>(res.trace).subspan(1, res.steps_taken - 1);
    auto violation = strew::first_trace_violation(model, theory, start, res.action_word, middle,
                                                  res.final);
    if (violation) {
      std::cerr << "check failed: step " << *violation
                << " is not justified by the declarative semantics\n";
      return kExitCheckFailed;
    }
  }

  if (a.json) {
    nlohmann::json out;
    out["final"] = strew::print_term(res.final);
    out["steps"] = res.steps_taken;
    out["exhausted"] = res.exhausted;
    out["wall_seconds"] = seconds;
    nlohmann::json counts = nlohmann::json::object();
    for (std::size_t i = 0; i < theory.rules.size(); ++i)
      if (res.rule_counts[i] > 0) counts[theory.rules[i].action.name] = res.rule_counts[i];
    out["rule_counts"] = counts;
    std::cout << out.dump() << "\n";
  } else {
    std::cout << strew::print_term(res.final) << "\n";
    std::cout << "steps: " << res.steps_taken << (res.exhausted ? " (fuel exhausted)" : "")
              << "\n";
    if (a.stats) {
      std::cout << "wall time: " << seconds << " s\n";
      for (std::size_t i = 0; i < theory.rules.size(); ++i)
        if (res.rule_counts[i] > 0)
          std::cout << "  " << theory.rules[i].action.name << ": " << res.rule_counts[i] << "\n";
    }
  }
  return res.exhausted ? kExitFuelExhausted : kExitOk;
}

int cmd_print_theory(const std::string& theory_file) {
  strew::LoadedTheory loaded = strew::parse_theory_file(strew::read_file(theory_file));
  std::cout << strew::print_theory_pretty(loaded.language);
  return kExitOk;
}

struct BenchArgs {
  std::vector<std::string> cases;
  std::string sizes_csv;
  int reps = 3;
  std::string languages_dir = "languages";
  bool json = false;
  bool parallel = false;
};

int cmd_bench(const BenchArgs& a) {
  std::vector<long> sizes;
  if (!a.sizes_csv.empty()) {
    std::string cur;
    for (char c : a.sizes_csv + ",") {
      if (c == ',') {
        if (!cur.empty()) sizes.push_back(std::stol(cur));
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
  }
  strew::StaticModel model = strew::default_model();
  strew::SuiteReport report =
      strew::run_suite(model, a.languages_dir, a.cases, sizes, a.reps, a.parallel);

  if (a.json) {
    nlohmann::json rows = nlohmann::json::array();
    for (const strew::BenchRow& r : report.rows)
      rows.push_back({{"case", r.case_name},
                      {"size", r.size},
                      {"steps", r.steps},
                      {"seconds", r.seconds},
                      {"ok", r.ok}});
    std::cout << rows.dump() << "\n";
  } else {
    std::printf("%-14s %10s %12s %12s\n", "case", "size", "steps", "median[s]");
    for (const strew::BenchRow& r : report.rows)
      std::printf("%-14s %10ld %12llu %12.4f\n", r.case_name.c_str(), r.size,
                  static_cast<unsigned long long>(r.steps), r.seconds);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"language definitions as rewriting theories, executed one step at a time"};
  app.require_subcommand(1);

  std::string compile_in, compile_out;
  CLI::App* compile = app.add_subcommand("compile", "compile a language definition (.m)");
  compile->add_option("input", compile_in, "language definition file")->required();
  compile->add_option("-o,--output", compile_out, "output theory file");

  RunArgs run_args;
  CLI::App* run = app.add_subcommand("run", "run a program against a compiled theory");
  run->add_option("theory", run_args.theory_file, "compiled theory file")->required();
  run->add_option("program", run_args.program_file, "program term file")->required();
  run->add_option("--arg", run_args.arg_texts, "argument term for $arg/$argN placeholders");
  run->add_option("--fuel", run_args.fuel, "maximum number of steps (> 0)");
  run->add_flag("--trace", run_args.trace, "print one line per step (index and action)");
  run->add_flag("--trace-terms", run_args.trace_terms, "print full terms in the trace");
  run->add_flag("--check", run_args.check,
                "validate the executed trace against the declarative semantics");
  run->add_flag("--stats", run_args.stats, "print per-rule fire counts and wall time");
  run->add_flag("--json", run_args.json, "machine-readable run result");

  std::string pt_theory;
  CLI::App* pt = app.add_subcommand("print-theory", "list the rules of a compiled theory");
  pt->add_option("theory", pt_theory, "compiled theory file")->required();

  BenchArgs bench_args;
  CLI::App* bench = app.add_subcommand("bench", "run the bundled benchmark suite");
  bench->add_option("--case", bench_args.cases, "case name (tc, imp-count-to, native-fib, ...)");
  bench->add_option("--sizes", bench_args.sizes_csv, "comma-separated sizes (default: per case)");
  bench->add_option("--reps", bench_args.reps, "repetitions per measurement");
  bench->add_option("--languages-dir", bench_args.languages_dir,
                    "directory with the bundled definitions");
  bench->add_flag("--json", bench_args.json, "machine-readable records");
  bench->add_flag("--parallel", bench_args.parallel, "run cases concurrently (correctness only)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (compile->parsed()) return cmd_compile(compile_in, compile_out);
    if (run->parsed()) {
      if (run_args.fuel == 0) {
        std::cerr << "error: --fuel must be > 0\n";
        return kExitUsage;
      }
      return cmd_run(run_args);
    }
    if (pt->parsed()) return cmd_print_theory(pt_theory);
    if (bench->parsed()) return cmd_bench(bench_args);
  } catch (const strew::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDiagnostics;
  } catch (const strew::CompileError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDiagnostics;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDiagnostics;
  }
  return kExitUsage;
}
