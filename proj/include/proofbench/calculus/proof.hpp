#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "proofbench/calculus/sequent.hpp"

namespace proofbench::calculus {

enum class RuleKind {
  Axiom,
  Cut,
  NegL,
  NegR,
  AndL,
  AndR,
  OrL,
  OrR,
  ImpL,
  ImpR,
  ForAllL,
  ForAllR,
  ExistsL,
  ExistsR,
  WeakL,
  WeakR,
  ContrL,
  ContrR,
  AndEqL1,
  AndEqL3,
  ProofLink,
  AutoProp,
  Generic, // display-only node loaded from an unknown rule type
};

// Short names as used in hlks files: ax, cut, negL, ..., pLink, autoprop.
const char* rule_name(RuleKind k);
std::optional<RuleKind> rule_from_name(std::string_view name);
// Number of premises; -1 for Generic.
int rule_arity(RuleKind k);
bool is_structural(RuleKind k);
bool is_strong_quantifier(RuleKind k);
bool is_weak_quantifier(RuleKind k);

struct LinkData {
  std::string schema;
  std::optional<Term> arg; // absent for links to plain proofs
};

struct ProofNode;
using LKProof = std::shared_ptr<const ProofNode>;

struct ProofNode {
  RuleKind rule = RuleKind::Generic;
  Sequent conclusion;
  std::vector<LKProof> premises;
  std::vector<std::vector<OccId>> aux; // one list per premise
  std::vector<OccId> main;             // in conclusion
  std::optional<Term> term;            // quantifier witness or eigenvariable
  std::optional<LinkData> link;
  std::string label; // original rule type for Generic nodes
  std::string param; // free-form annotation carried from input

  const char* name() const;
  std::vector<Term> main_formulas() const;
};

struct InferenceError : std::runtime_error {
  enum class Kind { Arity, MissingAux, Shape, Eigenvariable, Equivalence, Link };
  InferenceError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
  Kind kind;
};

const char* inference_error_kind_name(InferenceError::Kind k);

struct InferenceInput {
  RuleKind rule;
  std::vector<LKProof> premises;
  std::vector<std::vector<OccId>> aux;
  std::vector<Term> main;    // needed for weakening, quantifier and AndEq rules
  std::optional<Term> term;  // optional witness; derived by matching when absent
  std::optional<LinkData> link;
  FSequent leaf;             // conclusion of ProofLink / Generic nodes
  std::string label;
  std::string param;
};

// Checks the rule's local condition and builds the node, assigning fresh
// occurrence ids from gen. Throws InferenceError.
LKProof build_inference(IdGen& gen, const InferenceInput& in);

// Conclusion a node's rule would produce, as (side, formula, parents)
// triples; throws InferenceError. Used by the checker.
struct ExpectedOccurrence {
  Side side;
  Term formula;
  std::vector<OccId> parents;
};
std::vector<ExpectedOccurrence> expected_conclusion(const ProofNode& node);

// Convenience constructors.
LKProof axiom(IdGen& gen, const Term& atom);
LKProof cut(IdGen& gen, const LKProof& l, const LKProof& r, OccId left_aux, OccId right_aux);
LKProof neg_l(IdGen& gen, const LKProof& p, OccId aux);
LKProof neg_r(IdGen& gen, const LKProof& p, OccId aux);
LKProof and_l(IdGen& gen, const LKProof& p, OccId a, OccId b);
LKProof and_r(IdGen& gen, const LKProof& l, const LKProof& r, OccId a, OccId b);
LKProof or_l(IdGen& gen, const LKProof& l, const LKProof& r, OccId a, OccId b);
LKProof or_r(IdGen& gen, const LKProof& p, OccId a, OccId b);
LKProof imp_l(IdGen& gen, const LKProof& l, const LKProof& r, OccId a, OccId b);
LKProof imp_r(IdGen& gen, const LKProof& p, OccId a, OccId b);
LKProof all_l(IdGen& gen, const LKProof& p, OccId aux, const Term& main, std::optional<Term> t = {});
LKProof all_r(IdGen& gen, const LKProof& p, OccId aux, const Term& main);
LKProof ex_l(IdGen& gen, const LKProof& p, OccId aux, const Term& main);
LKProof ex_r(IdGen& gen, const LKProof& p, OccId aux, const Term& main, std::optional<Term> t = {});
LKProof weak_l(IdGen& gen, const LKProof& p, const Term& f);
LKProof weak_r(IdGen& gen, const LKProof& p, const Term& f);
LKProof contr_l(IdGen& gen, const LKProof& p, OccId a, OccId b);
LKProof contr_r(IdGen& gen, const LKProof& p, OccId a, OccId b);
LKProof and_eq_l1(IdGen& gen, const LKProof& p, OccId aux, const Term& main);
LKProof and_eq_l3(IdGen& gen, const LKProof& p, OccId aux, const Term& main);
LKProof proof_link(IdGen& gen, const std::string& schema, std::optional<Term> arg, const FSequent& conclusion);
LKProof generic(IdGen& gen, const std::string& label, const FSequent& conclusion, const std::vector<LKProof>& premises);

// Rebuilds `node` over new premises whose aux occurrences are given.
LKProof replay(IdGen& gen, const ProofNode& node, const std::vector<LKProof>& premises,
               const std::vector<std::vector<OccId>>& aux);

// Traversal and bookkeeping.
void preorder(const LKProof& p, const std::function<void(const LKProof&)>& f);
std::size_t node_count(const LKProof& p);
std::size_t count_rule(const LKProof& p, RuleKind k);
bool is_cut_free(const LKProof& p);
bool has_only_atomic_cuts(const LKProof& p);
bool has_links(const LKProof& p);
OccId max_id(const LKProof& p);

// Occurrence of `p`'s conclusion descending from premise occurrence x, if any.
std::optional<OccId> child_of(const ProofNode& p, OccId x);

// Applies f to every formula and term annotation; ids and shape unchanged.
LKProof map_formulas(const LKProof& p, const std::function<Term(const Term&)>& f);

// Fresh ids everywhere from gen.
LKProof refresh(const LKProof& p, IdGen& gen);
// Ids 1..N in postorder; deterministic normal form.
LKProof renumber(const LKProof& p);

// Replaces the ids of the root conclusion according to `rename`.
LKProof relabel_root(const LKProof& p, const std::vector<std::pair<OccId, OccId>>& rename);

// Structural equality ignoring occurrence ids.
bool same_shape(const LKProof& a, const LKProof& b);

} // namespace proofbench::calculus
