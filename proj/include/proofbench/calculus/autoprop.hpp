#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <variant>

#include "proofbench/calculus/proof.hpp"

namespace proofbench::calculus {

struct NotPropositional : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Falsifying assignment, keyed by the plain rendering of each atom.
struct Countermodel {
  std::map<std::string, bool> values;
};

using AutopropResult = std::variant<LKProof, Countermodel>;

// Backward search with invertible rules. Ground BigAnds on the left are
// opened with andEqL1/andEqL3; anything else beyond propositional logic
// throws NotPropositional.
AutopropResult autoprop(const FSequent& s, IdGen& gen);
AutopropResult autoprop(const FSequent& s);

} // namespace proofbench::calculus
