#pragma once

#include <string>

#include "proofbench/kernel/term.hpp"

namespace proofbench::kernel {

// Input syntax: ~ /\ \/ -> all ex BigAnd(i=l..u) BigOr(i=l..u).
// Output parses back to an alpha-equal term.
std::string plain(const Term& t);

// Fixed table: \neg \land \lor \to \forall \exists \bigwedge \bigvee.
std::string latex(const Term& t);

// Identifier as LaTeX: greek names become macros, trailing digits and
// `_n` suffixes become subscripts.
std::string latex_name(const std::string& name);

} // namespace proofbench::kernel
