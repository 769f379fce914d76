#include "proofbench/calculus/autoprop.hpp"

#include <algorithm>

#include "proofbench/kernel/formula.hpp"
#include "proofbench/kernel/param.hpp"
#include "proofbench/kernel/render.hpp"

namespace proofbench::calculus {

using namespace kernel;

namespace {

bool ground_bounds(const FormulaView& v) {
  return !param_shape(*v.lower).base && !param_shape(*v.upper).base;
}

void require_propositional(const Term& f, Side side) {
  FormulaView v = view(f);
  switch (v.kind) {
    case FormulaKind::Atom:
      return;
    case FormulaKind::All:
    case FormulaKind::Ex:
      throw NotPropositional("autoprop: quantified formula " + plain(f));
    case FormulaKind::BigOr:
      throw NotPropositional("autoprop: BigOr is not supported: " + plain(f));
    case FormulaKind::BigAnd:
      if (side != Side::Ant || !ground_bounds(v))
        throw NotPropositional("autoprop: BigAnd needs ground bounds in the antecedent: " + plain(f));
      require_propositional(v.left, side);
      return;
    case FormulaKind::Neg:
      require_propositional(v.left, side == Side::Ant ? Side::Suc : Side::Ant);
      return;
    case FormulaKind::Imp:
      require_propositional(v.left, side == Side::Ant ? Side::Suc : Side::Ant);
      require_propositional(*v.right, side);
      return;
    default:
      require_propositional(v.left, side);
      require_propositional(*v.right, side);
  }
}

// Occurrence of f in p's root on the given side, skipping `avoid`.
OccId find_occ(const LKProof& p, Side side, const Term& f, OccId avoid = 0) {
  for (const auto& o : p->conclusion.side(side))
    if (o.id != avoid && o.formula == f) return o.id;
  throw std::logic_error("autoprop: lost track of " + plain(f));
}

class Search {
public:
  explicit Search(IdGen& gen) : gen_(gen) {}
  std::optional<FSequent> failed_leaf;

  std::optional<LKProof> prove(const FSequent& s) {
    for (std::size_t i = 0; i < s.ant.size(); ++i)
      if (!is_atom(s.ant[i])) return left(s, i);
    for (std::size_t i = 0; i < s.suc.size(); ++i)
      if (!is_atom(s.suc[i])) return right(s, i);
    return close(s);
  }

private:
  IdGen& gen_;

  static FSequent without(const FSequent& s, Side side, std::size_t i) {
    FSequent r = s;
    auto& v = side == Side::Ant ? r.ant : r.suc;
    v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
    return r;
  }

  std::optional<LKProof> close(const FSequent& s) {
    for (const auto& a : s.ant)
      if (std::find(s.suc.begin(), s.suc.end(), a) != s.suc.end()) {
        LKProof p = axiom(gen_, a);
        bool skipped = false;
        for (const auto& f : s.ant) {
          if (!skipped && f == a) {
            skipped = true;
            continue;
          }
          p = weak_l(gen_, p, f);
        }
        skipped = false;
        for (const auto& f : s.suc) {
          if (!skipped && f == a) {
            skipped = true;
            continue;
          }
          p = weak_r(gen_, p, f);
        }
        return p;
      }
    if (!failed_leaf) failed_leaf = s;
    return std::nullopt;
  }

  std::optional<LKProof> left(const FSequent& s, std::size_t i) {
    const Term f = s.ant[i];
    FormulaView v = view(f);
    FSequent ctx = without(s, Side::Ant, i);
    switch (v.kind) {
      case FormulaKind::Neg: {
        FSequent prem = ctx;
        prem.suc.push_back(v.left);
        auto p = prove(prem);
        if (!p) return p;
        return neg_l(gen_, *p, find_occ(*p, Side::Suc, v.left));
      }
      case FormulaKind::And: {
        FSequent prem = ctx;
        prem.ant.insert(prem.ant.begin(), {v.left, *v.right});
        auto p = prove(prem);
        if (!p) return p;
        OccId a = find_occ(*p, Side::Ant, v.left);
        OccId b = find_occ(*p, Side::Ant, *v.right, a);
        return and_l(gen_, *p, a, b);
      }
      case FormulaKind::Or:
      case FormulaKind::Imp: {
        bool is_or = v.kind == FormulaKind::Or;
        FSequent pl = ctx, pr = ctx;
        if (is_or) pl.ant.insert(pl.ant.begin(), v.left);
        else pl.suc.push_back(v.left);
        pr.ant.insert(pr.ant.begin(), *v.right);
        auto l = prove(pl);
        if (!l) return l;
        auto r = prove(pr);
        if (!r) return r;
        OccId a = find_occ(*l, is_or ? Side::Ant : Side::Suc, v.left);
        OccId b = find_occ(*r, Side::Ant, *v.right);
        LKProof p = is_or ? or_l(gen_, *l, *r, a, b) : imp_l(gen_, *l, *r, a, b);
        return contract_all(p, ctx, *l, *r);
      }
      case FormulaKind::BigAnd: {
        auto step = big_and_step(f);
        if (!step) throw NotPropositional("autoprop: cannot open " + plain(f));
        FSequent prem = ctx;
        prem.ant.insert(prem.ant.begin(), *step);
        auto p = prove(prem);
        if (!p) return p;
        OccId a = find_occ(*p, Side::Ant, *step);
        return *v.lower == *v.upper ? and_eq_l3(gen_, *p, a, f) : and_eq_l1(gen_, *p, a, f);
      }
      default:
        throw NotPropositional("autoprop: unsupported formula " + plain(f));
    }
  }

  std::optional<LKProof> right(const FSequent& s, std::size_t i) {
    const Term f = s.suc[i];
    FormulaView v = view(f);
    FSequent ctx = without(s, Side::Suc, i);
    switch (v.kind) {
      case FormulaKind::Neg: {
        FSequent prem = ctx;
        prem.ant.insert(prem.ant.begin(), v.left);
        auto p = prove(prem);
        if (!p) return p;
        return neg_r(gen_, *p, find_occ(*p, Side::Ant, v.left));
      }
      case FormulaKind::Or: {
        FSequent prem = ctx;
        prem.suc.push_back(v.left);
        prem.suc.push_back(*v.right);
        auto p = prove(prem);
        if (!p) return p;
        OccId a = find_occ(*p, Side::Suc, v.left);
        OccId b = find_occ(*p, Side::Suc, *v.right, a);
        return or_r(gen_, *p, a, b);
      }
      case FormulaKind::Imp: {
        FSequent prem = ctx;
        prem.ant.insert(prem.ant.begin(), v.left);
        prem.suc.push_back(*v.right);
        auto p = prove(prem);
        if (!p) return p;
        return imp_r(gen_, *p, find_occ(*p, Side::Ant, v.left), find_occ(*p, Side::Suc, *v.right));
      }
      case FormulaKind::And: {
        FSequent pl = ctx, pr = ctx;
        pl.suc.push_back(v.left);
        pr.suc.push_back(*v.right);
        auto l = prove(pl);
        if (!l) return l;
        auto r = prove(pr);
        if (!r) return r;
        LKProof p = and_r(gen_, *l, *r, find_occ(*l, Side::Suc, v.left), find_occ(*r, Side::Suc, *v.right));
        return contract_all(p, ctx, *l, *r);
      }
      default:
        throw NotPropositional("autoprop: unsupported formula " + plain(f));
    }
  }

  // After a binary rule every context formula appears twice: one copy from
  // each premise. Contract them pairwise.
  LKProof contract_all(LKProof p, const FSequent& ctx, const LKProof& l, const LKProof& r) {
    std::vector<std::pair<Side, std::pair<OccId, OccId>>> pairs;
    const ProofNode& bin = *p;
    for (Side side : {Side::Ant, Side::Suc}) {
      std::vector<bool> taken(bin.conclusion.side(side).size(), false);
      for (const auto& f : side == Side::Ant ? ctx.ant : ctx.suc) {
        OccId a = 0, b = 0;
        const auto& occs = bin.conclusion.side(side);
        for (std::size_t k = 0; k < occs.size(); ++k) {
          const auto& o = occs[k];
          if (taken[k] || !(o.formula == f) || o.parents.size() != 1) continue;
          bool from_l = l->conclusion.find(o.parents[0]) != nullptr;
          if (from_l && !a) {
            a = o.id;
            taken[k] = true;
          } else if (!from_l && !b) {
            b = o.id;
            taken[k] = true;
          }
        }
        if (!a || !b) throw std::logic_error("autoprop: duplicated context not found for " + plain(f));
        pairs.push_back({side, {a, b}});
      }
    }
    // Contraction gives fresh ids to the whole conclusion; follow them.
    for (auto& [side, ab] : pairs) {
      OccId a = ab.first, b = ab.second;
      LKProof next = side == Side::Ant ? contr_l(gen_, p, a, b) : contr_r(gen_, p, a, b);
      for (auto& [s2, cd] : pairs) {
        if (auto c = child_of(*next, cd.first); c && &cd != &ab) cd.first = *c;
        if (auto d = child_of(*next, cd.second); d && &cd != &ab) cd.second = *d;
      }
      p = next;
    }
    return p;
  }
};

} // namespace

AutopropResult autoprop(const FSequent& s, IdGen& gen) {
  for (const auto& f : s.ant) require_propositional(f, Side::Ant);
  for (const auto& f : s.suc) require_propositional(f, Side::Suc);
  Search search(gen);
  if (auto p = search.prove(s)) return *p;
  Countermodel cm;
  std::vector<Term> atoms;
  for (const auto* side : {&s.ant, &s.suc})
    for (const auto& f : *side)
      for (const auto& a : atoms_of(unfold_schema_connective(f, {})))
        if (std::find(atoms.begin(), atoms.end(), a) == atoms.end()) atoms.push_back(a);
  const FSequent& leaf = *search.failed_leaf;
  for (const auto& a : atoms)
    cm.values[plain(a)] = std::find(leaf.ant.begin(), leaf.ant.end(), a) != leaf.ant.end();
  return cm;
}

AutopropResult autoprop(const FSequent& s) {
  IdGen gen;
  return autoprop(s, gen);
}

} // namespace proofbench::calculus
