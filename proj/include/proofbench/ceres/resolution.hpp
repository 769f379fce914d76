#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "proofbench/calculus/sequent.hpp"
#include "proofbench/kernel/substitution.hpp"
#include "proofbench/transform/transform.hpp"

namespace proofbench::ceres {

using calculus::FSequent;
using kernel::Substitution;
using kernel::Term;

// A sequent of atoms. Free variables are implicitly universal.
using Clause = FSequent;
using ClauseSet = std::vector<Clause>;

bool is_clause(const FSequent& s);

// Most general unifier of two terms, with occurs check.
std::optional<Substitution> unify(const Term& a, const Term& b);

enum class StepKind { Input, Resolvent, Factor };

// Clause variables are normalised to V0, V1, ... in order of first
// occurrence; `rename` maps the premise variables to that form.
struct ResolutionStep {
  StepKind kind;
  Clause clause;
  std::size_t input = 0;          // Input: index into the clause set
  std::size_t left = 0, right = 0; // premises (Factor: left only)
  // Resolvent: suc literal `lit_left` of left against ant literal
  // `lit_right` of right. Factor: literal lit_right merged into lit_left
  // on side `side`.
  std::size_t lit_left = 0, lit_right = 0;
  calculus::Side side = calculus::Side::Ant;
  Substitution apart{};   // Resolvent: right premise variables renamed apart
  Substitution unifier{}; // most general unifier
  Substitution rename{};  // normalisation of the result (Input: of the input clause)
  std::optional<Term> atom{}; // Resolvent: the resolved atom, unifier applied
};

struct ResolutionProof {
  std::vector<ResolutionStep> steps; // premises precede conclusions
  std::size_t root = 0;
};

struct Limits {
  std::size_t max_clauses = 10000;
  double max_seconds = 10.0;
};

enum class RefuteStatus { Refuted, Saturated, LimitReached };
const char* refute_status_name(RefuteStatus s);

struct RefuteResult {
  RefuteStatus status;
  std::optional<ResolutionProof> proof; // Refuted
  ClauseSet saturated;                  // Saturated
  std::size_t generated = 0;
};

// Given-clause saturation with binary resolution and factoring. Clauses
// are selected by symbol count, ties by insertion order.
RefuteResult refute(const ClauseSet& cs, const Limits& limits = {}, const transform::CancelToken* cancel = nullptr);

// Checks every step of a resolution proof against its premises.
bool verify_resolution_proof(const ClauseSet& cs, const ResolutionProof& p, std::string* why = nullptr);

} // namespace proofbench::ceres
