#pragma once

#include <set>

#include "proofbench/calculus/proof.hpp"

namespace proofbench::calculus {

// Occurrences with a descendant that is an auxiliary formula of a cut.
std::set<OccId> cut_ancestors(const LKProof& p);

// All ancestors of the given occurrences, the occurrences included.
std::set<OccId> ancestors_of(const LKProof& p, const std::set<OccId>& ids);

// Node whose conclusion holds occurrence id, if any.
const ProofNode* node_of(const LKProof& p, OccId id);

} // namespace proofbench::calculus
