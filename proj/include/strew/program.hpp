#pragma once

// Program term files and the run conventions around them: $arg placeholder
// substitution and the init-wrapping convention. A program file holds one
// ground term; $arg / $argN placeholders stand for argument terms supplied
// at run time ($arg is an alias for $arg1).

#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "strew/parser.hpp"
#include "strew/semantics.hpp"

namespace strew {

class ProgramError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline GroundTerm parse_term_file(std::string_view text) {
  return parse_ground_term(text, /*allow_placeholders=*/true);
}

namespace detail {

inline std::optional<std::size_t> placeholder_index(std::string_view name) {
  if (name == "$arg") return 0;
  if (name.rfind("$arg", 0) != 0) return std::nullopt;
  std::string_view digits = name.substr(4);
  if (digits.empty()) return std::nullopt;
  std::size_t n = 0;
  for (char c : digits) {
    if (c < '0' || c > '9') return std::nullopt;
    n = n * 10 + static_cast<std::size_t>(c - '0');
  }
  if (n == 0) return std::nullopt;
  return n - 1;
}

}  // namespace detail

inline void collect_placeholders(const GroundTerm& g, std::set<std::string>& out) {
  if (g.is_leaf()) return;
  if (g.symbol().name()[0] == '$') out.insert(g.symbol().name());
  for (const GroundTerm& c : g.children()) collect_placeholders(c, out);
}

// Replaces every nullary $argN node by args[N-1]. Placeholders without a
// supplied argument, and $-symbols that are not $argN, are errors.
inline GroundTerm substitute_args(const GroundTerm& program, std::span<const GroundTerm> args) {
  if (program.is_leaf()) return program;
  const std::string& name = program.symbol().name();
  if (name[0] == '$' && program.children().empty()) {
    auto idx = detail::placeholder_index(name);
    if (!idx) throw ProgramError("unsupported placeholder '" + name + "' (use $arg or $argN)");
    if (*idx >= args.size())
      throw ProgramError("program uses '" + name + "' but only " + std::to_string(args.size()) +
                         " argument(s) were supplied");
    return args[*idx];
  }
  std::vector<GroundTerm> children;
  children.reserve(program.children().size());
  for (const GroundTerm& c : program.children()) children.push_back(substitute_args(c, args));
  return GroundTerm(program.symbol(), std::move(children));
}

inline bool theory_has_init(const RewritingTheory& theory) {
  for (const RewritingRule& r : theory.rules)
    if (r.action.name == "init") return true;
  return false;
}

// Theories with an `init` rule expect the program wrapped as
// builtin.init[program]; bare theories take the program as the initial
// configuration directly.
inline GroundTerm wrap_for_theory(const RewritingTheory& theory, GroundTerm program) {
  if (!theory_has_init(theory)) return program;
  return GroundTerm(Symbol("builtin.init"), {std::move(program)});
}

}  // namespace strew
