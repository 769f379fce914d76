#include <functional>
#include <stdexcept>

#include "proofbench/kernel/formula.hpp"
#include "util.hpp"

namespace proofbench::transform {

using namespace calculus;
using detail::NameSupply;
using kernel::Substitution;

namespace {

std::vector<std::string> eigenvariables(const LKProof& p) {
  std::vector<std::string> out;
  preorder(p, [&](const LKProof& q) {
    if (is_strong_quantifier(q->rule) && q->term) out.push_back(q->term->name());
  });
  return out;
}

// Occurrence of premise `prem` whose descendant in n is x.
std::optional<OccId> parent_in(const ProofNode& n, std::size_t prem, OccId x) {
  for (OccId id : n.premises[prem]->conclusion.ids())
    if (child_of(n, id) == x) return id;
  return std::nullopt;
}

OccId follow(const LKProof& n, OccId x) {
  auto c = child_of(*n, x);
  if (!c) throw std::logic_error("gentzen: lost track of occurrence");
  return *c;
}

// Root conclusion of p as a list of (side, id), in order.
std::vector<std::pair<Side, OccId>> positions(const LKProof& p) {
  std::vector<std::pair<Side, OccId>> out;
  for (const auto& o : p->conclusion.ant) out.emplace_back(Side::Ant, o.id);
  for (const auto& o : p->conclusion.suc) out.emplace_back(Side::Suc, o.id);
  return out;
}

class Eliminator {
public:
  Eliminator(const LKProof& p, const CancelToken* cancel)
      : gen_(max_id(p) + 1), names_(detail::names_in(p)), cancel_(cancel) {}

  LKProof run(LKProof p) {
    std::vector<std::size_t> path;
    while (find_cut(p, path)) {
      if (cancel_) cancel_->check();
      LKProof c = p;
      for (std::size_t i : path) c = c->premises[i];
      LKProof r = match_root(reduce(*c), c->conclusion);
      p = replace_at(p, path, 0, r);
    }
    return p;
  }

private:
  // Uppermost-leftmost cut: first cut in preorder whose premises are cut-free.
  static bool find_cut(const LKProof& p, std::vector<std::size_t>& path) {
    path.clear();
    std::function<bool(const LKProof&)> walk = [&](const LKProof& q) {
      for (std::size_t i = 0; i < q->premises.size(); ++i) {
        path.push_back(i);
        if (walk(q->premises[i])) return true;
        path.pop_back();
      }
      return q->rule == RuleKind::Cut;
    };
    return walk(p);
  }

  static LKProof replace_at(const LKProof& p, const std::vector<std::size_t>& path, std::size_t depth, const LKProof& sub) {
    if (depth == path.size()) return sub;
    std::vector<LKProof> prem = p->premises;
    prem[path[depth]] = replace_at(prem[path[depth]], path, depth + 1, sub);
    return detail::with_premises(*p, prem);
  }

  // Gives r's root occurrences the ids of equal formulas in target.
  static LKProof match_root(const LKProof& r, const Sequent& target) {
    std::vector<std::pair<OccId, OccId>> rename;
    for (Side s : {Side::Ant, Side::Suc}) {
      const auto& have = r->conclusion.side(s);
      std::vector<bool> used(have.size(), false);
      for (const auto& t : target.side(s)) {
        std::size_t i = 0;
        while (i < have.size() && (used[i] || have[i].formula != t.formula)) ++i;
        if (i == have.size()) throw std::logic_error("gentzen: reduction changed the end-sequent");
        used[i] = true;
        rename.emplace_back(have[i].id, t.id);
      }
      if (std::find(used.begin(), used.end(), false) != used.end())
        throw std::logic_error("gentzen: reduction changed the end-sequent");
    }
    return relabel_root(r, rename);
  }

  LKProof weaken(LKProof p, const LKProof& from, OccId except) {
    for (const auto& o : from->conclusion.ant)
      if (o.id != except) p = weak_l(gen_, p, o.formula);
    for (const auto& o : from->conclusion.suc)
      if (o.id != except) p = weak_r(gen_, p, o.formula);
    return p;
  }

  // Contracts each (first, second) pair, following ids through the new nodes.
  LKProof contract(LKProof p, std::vector<std::pair<Side, std::pair<OccId, OccId>>> pairs) {
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      auto [side, ids] = pairs[i];
      p = side == Side::Ant ? contr_l(gen_, p, ids.first, ids.second) : contr_r(gen_, p, ids.first, ids.second);
      for (std::size_t j = i + 1; j < pairs.size(); ++j) {
        pairs[j].second.first = follow(p, pairs[j].second.first);
        pairs[j].second.second = follow(p, pairs[j].second.second);
      }
    }
    return p;
  }

  LKProof copy(const LKProof& p) { return refresh(detail::freshen_eigenvariables(p, names_), gen_); }

  // p with eigenvariables renamed apart from the free variables of t.
  LKProof apart(const LKProof& p, const Term& t) {
    auto ev = eigenvariables(p);
    for (const auto& v : kernel::free_vars(t))
      if (std::find(ev.begin(), ev.end(), v.name()) != ev.end()) return detail::freshen_eigenvariables(p, names_);
    return p;
  }

  LKProof reduce(const ProofNode& c) {
    const LKProof& l = c.premises[0];
    const LKProof& r = c.premises[1];
    OccId a = c.aux[0][0], b = c.aux[1][0];

    if (l->rule == RuleKind::Axiom) return r;
    if (r->rule == RuleKind::Axiom) return l;
    if (!detail::is_main(*l, a)) return rank(c, 0);
    if (l->rule == RuleKind::WeakR) return weaken(l->premises[0], r, b);
    if (l->rule == RuleKind::ContrR) return contract_left(c);
    if (!detail::is_main(*r, b)) return rank(c, 1);
    if (r->rule == RuleKind::WeakL) return weaken(r->premises[0], l, a);
    if (r->rule == RuleKind::ContrL) return contract_right(c);
    return grade(c);
  }

  // Moves the cut above the last inference of premise `side`.
  LKProof rank(const ProofNode& c, std::size_t side) {
    const LKProof& rho = c.premises[side];
    const LKProof& other = c.premises[1 - side];
    OccId x = c.aux[side][0];
    std::size_t j = 0;
    std::optional<OccId> up;
    for (; j < rho->premises.size(); ++j)
      if ((up = parent_in(*rho, j, x))) break;
    if (!up) throw std::logic_error("gentzen: cut formula has no ancestor");

    LKProof above = rho->premises[j];
    if (is_strong_quantifier(rho->rule) && rho->term) {
      bool clash = false;
      for (const auto* s : {&other->conclusion.ant, &other->conclusion.suc})
        for (const auto& o : *s) clash = clash || kernel::occurs_free(*rho->term, o.formula);
      if (clash) {
        Term fresh = names_.fresh(*rho->term);
        above = detail::substitute_proof(above, Substitution{{*rho->term, fresh}});
      }
    }

    LKProof moved = side == 0 ? cut(gen_, above, other, *up, c.aux[1][0]) : cut(gen_, other, above, c.aux[0][0], *up);
    std::vector<LKProof> prem = rho->premises;
    prem[j] = moved;
    auto aux = rho->aux;
    for (auto& id : aux[j]) id = follow(moved, id);
    return detail::rebuild(gen_, *rho, prem, aux);
  }

  LKProof contract_left(const ProofNode& c) {
    const LKProof& l = c.premises[0];
    const LKProof& r = c.premises[1];
    OccId b = c.aux[1][0];
    const LKProof& body = l->premises[0];
    OccId a1 = l->aux[0][0], a2 = l->aux[0][1];
    LKProof r2 = copy(r);
    auto pos1 = positions(r), pos2 = positions(r2);

    LKProof c1 = cut(gen_, body, r, a1, b);
    OccId b2 = 0;
    for (std::size_t i = 0; i < pos1.size(); ++i)
      if (pos1[i].second == b) b2 = pos2[i].second;
    LKProof c2 = cut(gen_, c1, r2, follow(c1, a2), b2);

    std::vector<std::pair<Side, std::pair<OccId, OccId>>> pairs;
    for (std::size_t i = 0; i < pos1.size(); ++i) {
      if (pos1[i].second == b) continue;
      pairs.push_back({pos1[i].first, {follow(c2, follow(c1, pos1[i].second)), follow(c2, pos2[i].second)}});
    }
    return contract(c2, pairs);
  }

  LKProof contract_right(const ProofNode& c) {
    const LKProof& l = c.premises[0];
    const LKProof& r = c.premises[1];
    OccId a = c.aux[0][0];
    const LKProof& body = r->premises[0];
    OccId b1 = r->aux[0][0], b2 = r->aux[0][1];
    LKProof l2 = copy(l);
    auto pos1 = positions(l), pos2 = positions(l2);

    LKProof c1 = cut(gen_, l, body, a, b1);
    OccId a2 = 0;
    for (std::size_t i = 0; i < pos1.size(); ++i)
      if (pos1[i].second == a) a2 = pos2[i].second;
    LKProof c2 = cut(gen_, l2, c1, a2, follow(c1, b2));

    std::vector<std::pair<Side, std::pair<OccId, OccId>>> pairs;
    for (std::size_t i = 0; i < pos1.size(); ++i) {
      if (pos1[i].second == a) continue;
      pairs.push_back({pos1[i].first, {follow(c2, follow(c1, pos1[i].second)), follow(c2, pos2[i].second)}});
    }
    return contract(c2, pairs);
  }

  LKProof grade(const ProofNode& c) {
    const LKProof& l = c.premises[0];
    const LKProof& r = c.premises[1];
    switch (l->rule) {
      case RuleKind::NegR:
        if (r->rule != RuleKind::NegL) break;
        return cut(gen_, r->premises[0], l->premises[0], r->aux[0][0], l->aux[0][0]);

      case RuleKind::AndR: {
        if (r->rule != RuleKind::AndL) break;
        const auto& rb = r->premises[0];
        if (r->aux[0].size() == 2) {
          LKProof c1 = cut(gen_, l->premises[0], rb, l->aux[0][0], r->aux[0][0]);
          return cut(gen_, l->premises[1], c1, l->aux[1][0], follow(c1, r->aux[0][1]));
        }
        std::size_t k = static_cast<std::size_t>(detail::aux_child(*r, 0, 0));
        LKProof c1 = cut(gen_, l->premises[k], rb, l->aux[k][0], r->aux[0][0]);
        return weaken(c1, l->premises[1 - k], l->aux[1 - k][0]);
      }

      case RuleKind::OrR: {
        if (r->rule != RuleKind::OrL) break;
        const auto& lb = l->premises[0];
        if (l->aux[0].size() == 2) {
          LKProof c1 = cut(gen_, lb, r->premises[0], l->aux[0][0], r->aux[0][0]);
          return cut(gen_, c1, r->premises[1], follow(c1, l->aux[0][1]), r->aux[1][0]);
        }
        std::size_t k = static_cast<std::size_t>(detail::aux_child(*l, 0, 0));
        LKProof c1 = cut(gen_, lb, r->premises[k], l->aux[0][0], r->aux[k][0]);
        return weaken(c1, r->premises[1 - k], r->aux[1 - k][0]);
      }

      case RuleKind::ImpR: {
        if (r->rule != RuleKind::ImpL) break;
        const auto& lb = l->premises[0];
        OccId ant = l->aux[0][0], suc = l->aux[0][1];
        if (lb->conclusion.side_of(ant) != Side::Ant) std::swap(ant, suc);
        LKProof c1 = cut(gen_, r->premises[0], lb, r->aux[0][0], ant);
        return cut(gen_, c1, r->premises[1], follow(c1, suc), r->aux[1][0]);
      }

      case RuleKind::ForAllR: {
        if (r->rule != RuleKind::ForAllL) break;
        const Term& t = *r->term;
        LKProof lb = apart(l->premises[0], t);
        lb = detail::substitute_proof(lb, Substitution{{*l->term, t}});
        return cut(gen_, lb, r->premises[0], l->aux[0][0], r->aux[0][0]);
      }

      case RuleKind::ExistsR: {
        if (r->rule != RuleKind::ExistsL) break;
        const Term& t = *l->term;
        LKProof rb = apart(r->premises[0], t);
        rb = detail::substitute_proof(rb, Substitution{{*r->term, t}});
        return cut(gen_, l->premises[0], rb, l->aux[0][0], r->aux[0][0]);
      }

      default:
        break;
    }
    throw std::logic_error(std::string("gentzen: no reduction for ") + l->name() + " against " + r->name());
  }

  IdGen gen_;
  NameSupply names_;
  const CancelToken* cancel_;
};

} // namespace

LKProof gentzen_cut_elim(const LKProof& p, const CancelToken* cancel) {
  detail::require_first_order(p, "gentzen");
  if (is_cut_free(p)) return p;
  LKProof q = regularize(p);
  return renumber(Eliminator(q, cancel).run(q));
}

} // namespace proofbench::transform
