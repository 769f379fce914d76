#pragma once

#include <map>
#include <string>

#include "proofbench/calculus/sequent.hpp"

namespace proofbench::testing {

using Assignment = std::map<std::string, bool>;

// Atoms are keyed by their plain rendering. Ground BigAnds are unfolded.
bool eval_formula(const kernel::Term& f, const Assignment& a);
bool eval_sequent(const calculus::FSequent& s, const Assignment& a);
// Brute force over all assignments to the atoms of s (at most 20 atoms).
bool valid(const calculus::FSequent& s);

} // namespace proofbench::testing
