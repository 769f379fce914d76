#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "proofbench/calculus/proof.hpp"
#include "proofbench/ceres/resolution.hpp"
#include "proofbench/transform/transform.hpp"

namespace proofbench::ceres {

using calculus::LKProof;

enum class StructKind { Leaf, Plus, Times };

struct StructNode;
using CeresStruct = std::shared_ptr<const StructNode>;

struct StructNode {
  StructKind kind;
  Clause clause; // Leaf only
  CeresStruct left, right;
};

CeresStruct struct_leaf(Clause c);
CeresStruct struct_plus(CeresStruct a, CeresStruct b);
CeresStruct struct_times(CeresStruct a, CeresStruct b);

// Leaf at axioms holding their cut-ancestor part; binary inferences give
// Plus on cut ancestors and Times otherwise. Throws
// transform::PreconditionError on links, generic nodes or parameters.
CeresStruct extract_struct(const LKProof& p);

// Three defining equations; duplicate clauses removed.
ClauseSet char_clause_set(const CeresStruct& s);

std::size_t struct_binary_nodes(const CeresStruct& s);
std::string plain(const CeresStruct& s);
std::string latex(const CeresStruct& s);

struct Projection {
  LKProof proof;
  Clause clause;
};

// One projection per clause of char_clause_set(extract_struct(p)), in the
// same order. p must be skolemized and regular.
std::vector<Projection> compute_projections(const LKProof& p);

struct RefutationFailed : std::runtime_error {
  RefutationFailed(RefuteStatus s, const std::string& msg) : std::runtime_error(msg), status(s) {}
  RefuteStatus status;
};

// Skolemizes (and regularizes), refutes the characteristic clause set and
// combines the ground refutation with projections. Cuts in the result are
// atomic. Cut-free proofs without strong end-sequent inferences are
// returned unchanged.
LKProof ceres_cut_elim(const LKProof& p, const Limits& limits = {}, const transform::CancelToken* cancel = nullptr);

} // namespace proofbench::ceres
