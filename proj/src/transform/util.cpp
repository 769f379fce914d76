#include "util.hpp"

#include <algorithm>

#include "proofbench/kernel/formula.hpp"
#include "proofbench/kernel/param.hpp"
#include "proofbench/kernel/render.hpp"

namespace proofbench::transform::detail {

using namespace calculus;
using kernel::Substitution;

std::set<std::string> names_in(const LKProof& p) {
  std::vector<std::string> out;
  preorder(p, [&](const LKProof& q) {
    for (const auto* side : {&q->conclusion.ant, &q->conclusion.suc})
      for (const auto& o : *side) kernel::collect_names(o.formula, out);
    if (q->term) kernel::collect_names(*q->term, out);
  });
  return {out.begin(), out.end()};
}

std::string NameSupply::fresh_name(const std::string& base) {
  std::string n = kernel::fresh_name(base, [&](const std::string& s) { return used_.count(s) > 0; });
  used_.insert(n);
  return n;
}

Term NameSupply::fresh(const Term& like) { return Term::var(fresh_name(like.name()), like.type()); }

LKProof freshen_eigenvariables(const LKProof& p, NameSupply& names) {
  std::vector<LKProof> prem;
  for (const auto& q : p->premises) prem.push_back(freshen_eigenvariables(q, names));
  auto n = std::make_shared<ProofNode>(*p);
  n->premises = prem;
  if (is_strong_quantifier(p->rule) && p->term && p->term->is_var()) {
    Term fresh = names.fresh(*p->term);
    n->premises[0] = substitute_proof(n->premises[0], Substitution{{*p->term, fresh}});
    n->term = fresh;
  }
  return n;
}

LKProof rebuild(IdGen& gen, const ProofNode& n, const std::vector<LKProof>& premises,
                const std::vector<std::vector<OccId>>& aux) {
  if (!is_strong_quantifier(n.rule)) return replay(gen, n, premises, aux);
  ProofNode copy = n;
  copy.term.reset();
  return replay(gen, copy, premises, aux);
}

LKProof with_premises(const ProofNode& n, std::vector<LKProof> premises) {
  auto c = std::make_shared<ProofNode>(n);
  c->premises = std::move(premises);
  return c;
}

bool is_main(const ProofNode& n, OccId id) { return std::find(n.main.begin(), n.main.end(), id) != n.main.end(); }

} // namespace proofbench::transform::detail

namespace proofbench::transform::detail {

using namespace calculus;
using kernel::FormulaKind;

int aux_child(const ProofNode& n, std::size_t prem, std::size_t k) {
  switch (n.rule) {
    case RuleKind::NegL:
    case RuleKind::NegR:
    case RuleKind::ForAllL:
    case RuleKind::ForAllR:
    case RuleKind::ExistsL:
    case RuleKind::ExistsR:
      return 0;
    case RuleKind::AndR:
    case RuleKind::OrL:
    case RuleKind::ImpL:
      return static_cast<int>(prem);
    case RuleKind::ImpR:
      return static_cast<int>(k);
    case RuleKind::AndL:
    case RuleKind::OrR: {
      if (n.aux[0].size() == 2) return static_cast<int>(k);
      const auto* a = n.premises[0]->conclusion.find(n.aux[0][0]);
      const auto* m = n.conclusion.find(n.main[0]);
      return a && m && kernel::view(m->formula).left == a->formula ? 0 : 1;
    }
    case RuleKind::ContrL:
    case RuleKind::ContrR:
      return -2;
    default:
      return -1;
  }
}

Term subformula(const Term& f, const Path& path) {
  Term cur = f;
  for (int i : path) {
    auto v = kernel::view(cur);
    cur = i == 0 ? v.left : *v.right;
  }
  return cur;
}

} // namespace proofbench::transform::detail

namespace proofbench::transform {

using namespace calculus;

LKProof substitute_proof(const LKProof& p, const kernel::Substitution& s) {
  return map_formulas(p, [&](const Term& t) { return kernel::substitute(t, s); });
}

void require_first_order(const LKProof& p, const char* op) {
  preorder(p, [&](const LKProof& q) {
    if (q->rule == RuleKind::ProofLink) throw PreconditionError("proof-link", std::string(op) + ": proof contains a proof link; instantiate first");
    if (q->rule == RuleKind::Generic) throw PreconditionError("generic-node", std::string(op) + ": proof contains an unchecked '" + q->label + "' node");
    if (q->rule == RuleKind::AutoProp) throw PreconditionError("autoprop-leaf", std::string(op) + ": proof contains an unexpanded autoprop leaf");
    for (const auto* side : {&q->conclusion.ant, &q->conclusion.suc})
      for (const auto& o : *side)
        for (const auto& v : kernel::free_vars(o.formula))
          if (v.type() == kernel::Type::param())
            throw PreconditionError("symbolic-parameter", std::string(op) + ": symbolic parameter " + v.name() + " in " + kernel::plain(o.formula));
  });
}

} // namespace proofbench::transform
