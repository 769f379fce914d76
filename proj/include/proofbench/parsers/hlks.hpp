#pragma once

#include <string>
#include <string_view>

#include "proofbench/calculus/schema.hpp"

namespace proofbench::parsers {

// Handy LKS text:
//   proof NAME proves SEQUENT base { LABEL: rule(args) ... } [step { ... }]
//   define NAME(x, ...) := FORMULA
// A missing step block makes a plain proof; `proof NAME proves S { ... }`
// is accepted for plain proofs too.
calculus::ProofDatabase parse_hlks(std::string_view text, const std::string& file = {});

} // namespace proofbench::parsers
