#pragma once

#include <vector>

#include "proofbench/calculus/proof.hpp"

namespace proofbench::testing {

// Valid first-order LK proofs with 1 or 2 cuts and at most 15 nodes,
// deterministic for a given seed.
std::vector<calculus::LKProof> random_proofs(unsigned seed = 2024, std::size_t count = 20);

// Atomic-axiom proof of F |- F.
calculus::LKProof identity_proof(calculus::IdGen& gen, const kernel::Term& f);

} // namespace proofbench::testing
