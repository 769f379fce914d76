#pragma once

#include <string>
#include <string_view>

#include "proofbench/calculus/schema.hpp"

namespace proofbench::parsers {

// Simple XML interchange:
//   prooftrees (proof*); proof(symbol, calculus?) (rule);
//   rule(symbol?, type, param?) (conclusion, (rule|prooflink)*);
//   conclusion (#PCDATA); prooflink(symbol) EMPTY.
// Structure violations throw StructureError, conclusion text errors
// ParseError with a span into the document.
calculus::ProofDatabase parse_simple_xml(std::string_view text, const std::string& file = {});

} // namespace proofbench::parsers
