#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "proofbench/calculus/proof.hpp"
#include "proofbench/kernel/definitions.hpp"

namespace proofbench::calculus {

struct LinkError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ProofSchema {
  std::string name;
  Term param; // Var of type w
  FSequent end;
  LKProof base;
  LKProof step; // proves end[param := param+1]
};

struct DbEntry {
  std::string name;
  LKProof proof;                     // plain proofs
  std::optional<ProofSchema> schema; // schemata
  std::string calculus;              // XML attribute, kept verbatim

  bool is_schema() const { return schema.has_value(); }
};

struct SequentList {
  std::string name;
  std::vector<FSequent> sequents;
};

struct ProofDatabase {
  std::vector<DbEntry> entries;
  std::vector<SequentList> sequent_lists;
  kernel::DefinitionList definitions;

  const DbEntry* find(const std::string& name) const;
  // Throws std::invalid_argument on duplicate names.
  void add(DbEntry e);
};

// End-sequent of the schema at a concrete value, params evaluated.
FSequent schema_end_at(const ProofSchema& s, std::uint64_t n);
// End-sequent at a param expression (used for link conclusions).
FSequent schema_end_at(const ProofSchema& s, const Term& arg);

// n = 0: base; otherwise step with param := n-1 and links expanded
// recursively. Result is link-free with ids renumbered. Throws LinkError.
LKProof instantiate_schema(const ProofDatabase& db, const std::string& name, std::uint64_t n);

// Replaces links to plain proofs (and ground links to schemata) by the
// proofs they name. Throws LinkError on unresolved targets.
LKProof expand_links(const ProofDatabase& db, const LKProof& p);

} // namespace proofbench::calculus
