#include "proofbench/calculus/ancestry.hpp"

namespace proofbench::calculus {

namespace {

// Top-down: a premise occurrence inherits the mark of its child, and
// seeds are marked outright.
void mark(const ProofNode& n, std::set<OccId>& marked, const std::function<bool(const ProofNode&, OccId)>& seed) {
  for (const auto& q : n.premises) {
    for (const auto* side : {&q->conclusion.ant, &q->conclusion.suc})
      for (const auto& o : *side) {
        auto c = child_of(n, o.id);
        if ((c && marked.count(*c)) || seed(n, o.id)) marked.insert(o.id);
      }
    mark(*q, marked, seed);
  }
}

} // namespace

std::set<OccId> cut_ancestors(const LKProof& p) {
  std::set<OccId> out;
  mark(*p, out, [](const ProofNode& n, OccId x) {
    if (n.rule != RuleKind::Cut) return false;
    for (const auto& a : n.aux)
      for (OccId y : a)
        if (y == x) return true;
    return false;
  });
  return out;
}

std::set<OccId> ancestors_of(const LKProof& p, const std::set<OccId>& ids) {
  std::set<OccId> out;
  for (const auto* side : {&p->conclusion.ant, &p->conclusion.suc})
    for (const auto& o : *side)
      if (ids.count(o.id)) out.insert(o.id);
  std::function<void(const ProofNode&)> walk = [&](const ProofNode& n) {
    for (const auto& q : n.premises) {
      for (const auto* side : {&q->conclusion.ant, &q->conclusion.suc})
        for (const auto& o : *side) {
          auto c = child_of(n, o.id);
          if ((c && out.count(*c)) || ids.count(o.id)) out.insert(o.id);
        }
      walk(*q);
    }
  };
  walk(*p);
  return out;
}

const ProofNode* node_of(const LKProof& p, OccId id) {
  const ProofNode* found = nullptr;
  preorder(p, [&](const LKProof& q) {
    if (!found && q->conclusion.find(id)) found = q.get();
  });
  return found;
}

} // namespace proofbench::calculus
