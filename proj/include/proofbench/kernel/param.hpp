#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "proofbench/kernel/term.hpp"

namespace proofbench::kernel {

struct UnboundParam : std::runtime_error {
  explicit UnboundParam(const std::string& name)
      : std::runtime_error("unbound parameter " + name), param(name) {}
  std::string param;
};

struct EmptyRange : std::runtime_error {
  EmptyRange(std::uint64_t lo, std::uint64_t hi)
      : std::runtime_error("empty range " + std::to_string(lo) + ".." + std::to_string(hi)), lower(lo), upper(hi) {}
  std::uint64_t lower, upper;
};

using ParamEnv = std::map<std::string, std::uint64_t>;

Term param_zero();
Term param_succ(const Term& e);
Term param_numeral(std::uint64_t n);
Term param_var(const std::string& name);
// One operand must be ground; the other is wrapped in successors.
Term param_add(const Term& a, const Term& b);

bool is_param_expr(const Term& e);

// e = base + offset, with base a Var or absent (ground).
struct ParamShape {
  std::optional<Term> base;
  std::uint64_t offset = 0;
};
// Throws TypeError on anything other than 0 / $succ / Var chains.
ParamShape param_shape(const Term& e);

std::uint64_t eval_param(const Term& e, const ParamEnv& env);

// Expands every BigAnd/BigOr whose bounds evaluate under env, and
// evaluates param subterms to numerals. Throws UnboundParam / EmptyRange.
Term unfold_schema_connective(const Term& f, const ParamEnv& env);

// Replaces ground param subterms by numerals and substitutes env values.
// BigAnd/BigOr are kept.
Term evaluate_params(const Term& f, const ParamEnv& env);

// One step of BigAnd(i=l..u)F rewriting, if bounds allow:
//   l == u         -> F[i:=l]
//   u = s(t), l!=u -> BigAnd(i=l..t)F /\ F[i:=s(t)]
std::optional<Term> big_and_step(const Term& f);

// Normal form under big_and_step applied anywhere; used to compare the two
// sides of AndEq rules.
Term big_and_normal(const Term& f);

} // namespace proofbench::kernel
