#include <functional>

#include "util.hpp"

namespace proofbench::transform {

using namespace calculus;
using detail::NameSupply;

namespace {

std::size_t free_count(const LKProof& p, const Term& v) {
  std::size_t n = 0;
  preorder(p, [&](const LKProof& q) {
    for (const auto* side : {&q->conclusion.ant, &q->conclusion.suc})
      for (const auto& o : *side) n += kernel::occurs_free(v, o.formula);
    if (q->term) n += kernel::occurs_free(v, *q->term);
  });
  return n;
}

LKProof replace_at(const LKProof& p, const std::vector<std::size_t>& path, std::size_t depth, const LKProof& sub) {
  if (depth == path.size()) return sub;
  std::vector<LKProof> prem = p->premises;
  prem[path[depth]] = replace_at(prem[path[depth]], path, depth + 1, sub);
  return detail::with_premises(*p, prem);
}

// First strong inference (preorder) whose eigenvariable is shared with an
// earlier one or occurs outside its premise.
bool find_dirty(const LKProof& root, std::vector<std::size_t>& path_out) {
  std::set<std::string> claimed;
  std::vector<std::size_t> path;
  std::function<bool(const LKProof&)> walk = [&](const LKProof& q) {
    if (is_strong_quantifier(q->rule) && q->term && q->term->is_var()) {
      const Term& a = *q->term;
      std::size_t inside = free_count(q->premises[0], a);
      bool dirty = claimed.count(a.name()) || free_count(root, a) > inside + 1;
      if (dirty) {
        path_out = path;
        return true;
      }
      claimed.insert(a.name());
    }
    for (std::size_t i = 0; i < q->premises.size(); ++i) {
      path.push_back(i);
      if (walk(q->premises[i])) return true;
      path.pop_back();
    }
    return false;
  };
  return walk(root);
}

} // namespace

LKProof regularize(const LKProof& p) {
  NameSupply names(detail::names_in(p));
  LKProof cur = p;
  std::vector<std::size_t> path;
  while (find_dirty(cur, path)) {
    LKProof n = cur;
    for (std::size_t i : path) n = n->premises[i];
    Term fresh = names.fresh(*n->term);
    auto c = std::make_shared<ProofNode>(*n);
    c->premises[0] = detail::substitute_proof(n->premises[0], kernel::Substitution{{*n->term, fresh}});
    c->term = fresh;
    cur = replace_at(cur, path, 0, c);
  }
  return cur;
}

} // namespace proofbench::transform
