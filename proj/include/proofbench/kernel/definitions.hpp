#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "proofbench/kernel/term.hpp"

namespace proofbench::kernel {

struct DefinitionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Definition {
  Term abbreviation; // a Const
  Term expansion;    // same type as abbreviation
};

// Display-level abbreviations. Expansion happens only on request.
class DefinitionList {
public:
  // Throws DefinitionError on duplicate names, non-constant abbreviations,
  // type mismatch, or a (transitive) self-reference.
  void add(const Term& abbreviation, const Term& expansion);

  const std::vector<Definition>& items() const { return items_; }
  bool empty() const { return items_.empty(); }
  const Definition* find(const std::string& name) const;

  // Replaces every defined constant until none remain, then beta-normalizes.
  Term expand(const Term& t) const;

private:
  bool reaches(const Term& t, const std::string& target, std::vector<std::string>& seen) const;
  std::vector<Definition> items_;
};

} // namespace proofbench::kernel
