#pragma once

#include <string_view>
#include <vector>

#include "proofbench/calculus/sequent.hpp"

namespace proofbench::testing {

// Reads `cnf(name, role, l1 | ... | ln).` lines back into clauses: negative
// literals go to the antecedent. Terms are first-order over individuals.
// Throws std::runtime_error on anything else.
std::vector<calculus::FSequent> read_tptp_cnf(std::string_view text);

} // namespace proofbench::testing
