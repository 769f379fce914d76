#pragma once

#include <atomic>
#include <stdexcept>
#include <string>
#include <vector>

#include "proofbench/calculus/schema.hpp"
#include "proofbench/kernel/substitution.hpp"

namespace proofbench::transform {

using calculus::FSequent;
using calculus::LKProof;
using kernel::Term;

struct PreconditionError : std::runtime_error {
  PreconditionError(std::string reason, const std::string& msg) : std::runtime_error(msg), reason(std::move(reason)) {}
  // Machine-readable, e.g. "non-atomic-cuts".
  std::string reason;
};

struct Cancelled : std::runtime_error {
  Cancelled() : std::runtime_error("cancelled") {}
};

// Cooperative cancellation; long-running operations poll it.
class CancelToken {
public:
  void cancel() { flag_.store(true); }
  bool cancelled() const { return flag_.load(); }
  void check() const {
    if (cancelled()) throw Cancelled();
  }

private:
  std::atomic<bool> flag_{false};
};

// Throws PreconditionError for links, generic or autoprop leaves and
// symbolic parameters; op names the operation in the message.
void require_first_order(const LKProof& p, const char* op);

LKProof substitute_proof(const LKProof& p, const kernel::Substitution& s);

// Reductive cut-elimination. Always reduces an uppermost-leftmost cut;
// contraction on a cut formula duplicates the other side. Throws
// PreconditionError on links, generic nodes or symbolic parameters.
LKProof gentzen_cut_elim(const LKProof& p, const CancelToken* cancel = nullptr);

// Eigenvariables pairwise distinct, each occurring only above its own
// inference. Proofs that already satisfy this are returned unchanged.
LKProof regularize(const LKProof& p);

// Removes strong quantifier inferences on end-sequent ancestors. Skolem
// symbols s0, s1, ... follow the end-sequent left to right; strong
// quantifiers on cut ancestors stay.
LKProof skolemize(const LKProof& p);
// End-sequent as skolemize() would produce it.
FSequent skolemize_sequent(const FSequent& s, const std::vector<std::string>& taken = {});
// Strong quantifier inferences on end-sequent ancestors, preorder.
std::vector<const calculus::ProofNode*> end_sequent_strong_inferences(const LKProof& p);

struct HerbrandMember {
  Term formula;
  calculus::Side side;
  std::size_t source;  // index of the end-sequent formula on that side
  std::vector<std::pair<Term, Term>> witnesses; // bound variable, instance
};

struct HerbrandSequent {
  FSequent sequent;
  std::vector<HerbrandMember> members; // ant members first
};

// Instances of the end-sequent formulas collected from the weak
// quantifier inferences of a skolemized proof with at most atomic cuts.
HerbrandSequent herbrand_sequent(const LKProof& p);

// Cut formulas, preorder (top-down, left to right), duplicates kept.
std::vector<Term> extract_cut_formulas(const LKProof& p);
std::vector<Term> extract_cut_formulas(const calculus::ProofDatabase& db, const std::string& schema, std::uint64_t n);

} // namespace proofbench::transform
