#pragma once

#include <string>
#include <vector>

#include "proofbench/calculus/proof.hpp"

namespace proofbench::calculus {

struct ProofDatabase;

enum class ViolationKind { Arity, DuplicateId, MissingAux, Conclusion, Shape, Eigenvariable, Equivalence, Link, Unchecked };

const char* violation_kind_name(ViolationKind k);

struct Violation {
  ViolationKind kind;
  std::size_t node;  // preorder index, root = 0
  std::string path;  // premise indices from the root, e.g. "0.1"
  std::string rule;
  std::string message;
};

struct CheckReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::size_t count(ViolationKind k) const;
  std::string str() const;
};

// Local rule conditions, parent links, id uniqueness, eigenvariables;
// links are resolved against db when given.
CheckReport check_proof(const LKProof& p, const ProofDatabase* db = nullptr);

} // namespace proofbench::calculus
