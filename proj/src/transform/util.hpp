#pragma once

#include <map>
#include <set>
#include <string>

#include "proofbench/kernel/substitution.hpp"
#include "proofbench/transform/transform.hpp"

namespace proofbench::transform::detail {

using calculus::OccId;
using calculus::ProofNode;

// Every variable and constant name in formulas and annotations.
std::set<std::string> names_in(const LKProof& p);

class NameSupply {
public:
  explicit NameSupply(std::set<std::string> used) : used_(std::move(used)) {}
  Term fresh(const Term& like);
  std::string fresh_name(const std::string& base);
  void reserve(const std::string& n) { used_.insert(n); }
  bool used(const std::string& n) const { return used_.count(n) > 0; }

private:
  std::set<std::string> used_;
};

using transform::substitute_proof;
using transform::require_first_order;

// Renames every eigenvariable to a fresh one, each within its own subtree.
LKProof freshen_eigenvariables(const LKProof& p, NameSupply& names);

// Rebuilds node n over new premises; the eigenvariable of a strong
// quantifier is re-derived from the premise.
LKProof rebuild(calculus::IdGen& gen, const ProofNode& n, const std::vector<LKProof>& premises,
                const std::vector<std::vector<OccId>>& aux);

// Copy of n with premises replaced; conclusion ids are kept.
LKProof with_premises(const ProofNode& n, std::vector<LKProof> premises);

bool is_main(const ProofNode& n, OccId id);

} // namespace proofbench::transform::detail

namespace proofbench::transform::detail {

using Path = std::vector<int>;

// Which immediate subformula of main the k-th auxiliary occurrence of
// premise prem is: 0 left/body/operand, 1 right; -2 for contraction
// (same position), -1 where the position is lost (AndEq rules).
int aux_child(const ProofNode& n, std::size_t prem, std::size_t k);

// Subformula at a path; binders are entered without instantiation.
Term subformula(const Term& f, const Path& path);

} // namespace proofbench::transform::detail
