#pragma once

#include <string>

#include "proofbench/calculus/schema.hpp"

namespace proofbench::testing {

// Structural equality: same names, kinds, end-sequents and proof shapes.
// Returns an empty string when equal, else the first difference.
std::string database_diff(const calculus::ProofDatabase& a, const calculus::ProofDatabase& b);

} // namespace proofbench::testing
