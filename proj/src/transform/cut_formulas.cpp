#include "proofbench/transform/transform.hpp"

namespace proofbench::transform {

using namespace calculus;

std::vector<Term> extract_cut_formulas(const LKProof& p) {
  std::vector<Term> out;
  preorder(p, [&](const LKProof& q) {
    if (q->rule != RuleKind::Cut) return;
    out.push_back(q->premises[0]->conclusion.find(q->aux[0][0])->formula);
  });
  return out;
}

std::vector<Term> extract_cut_formulas(const ProofDatabase& db, const std::string& schema, std::uint64_t n) {
  return extract_cut_formulas(instantiate_schema(db, schema, n));
}

} // namespace proofbench::transform
