#include "random_proofs.hpp"

#include <random>

#include "proofbench/calculus/check.hpp"
#include "proofbench/kernel/formula.hpp"
#include "proofbench/kernel/substitution.hpp"

namespace proofbench::testing {

using namespace calculus;
using namespace kernel;

namespace {

const Type kI = Type::individual();

OccId first_id(const LKProof& p, Side s) { return p->conclusion.side(s).front().id; }
OccId last_id(const LKProof& p, Side s) { return p->conclusion.side(s).back().id; }

class Builder {
public:
  explicit Builder(unsigned seed) : rng_(seed) {}

  LKProof make(int depth) {
    if (depth <= 0 || pick(4) == 0) return axiom(gen_, random_atom());
    if (pick(3) == 0) return binary(make(depth - 1), make(depth - 1));
    return unary(make(depth - 1));
  }

  LKProof with_cut(LKProof p) {
    bool right = pick(2) == 0 && !p->conclusion.suc.empty();
    if (right || p->conclusion.ant.empty()) {
      const auto& o = p->conclusion.suc[pick(static_cast<int>(p->conclusion.suc.size()))];
      LKProof id = identity_proof(gen_, o.formula);
      return cut(gen_, p, id, o.id, first_id(id, Side::Ant));
    }
    const auto& o = p->conclusion.ant[pick(static_cast<int>(p->conclusion.ant.size()))];
    LKProof id = identity_proof(gen_, o.formula);
    return cut(gen_, id, p, first_id(id, Side::Suc), o.id);
  }

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

private:
  Term random_atom() {
    switch (pick(5)) {
      case 0: return atom("P", {Term::constant("a", kI)});
      case 1: return atom("P", {Term::var("u", kI)});
      case 2: return atom("Q", {Term::constant("b", kI)});
      case 3: return atom("Q", {Term::var("u", kI)});
      default: return atom("R", {});
    }
  }

  const FormulaOccurrence& any(const LKProof& p, Side s) {
    const auto& v = p->conclusion.side(s);
    return v[pick(static_cast<int>(v.size()))];
  }

  LKProof unary(const LKProof& p) {
    const auto& c = p->conclusion;
    switch (pick(11)) {
      case 0:
        if (!c.ant.empty()) return neg_r(gen_, p, any(p, Side::Ant).id);
        break;
      case 1:
        if (!c.suc.empty()) return neg_l(gen_, p, any(p, Side::Suc).id);
        break;
      case 2:
        if (c.ant.size() >= 2) return and_l(gen_, p, c.ant[0].id, c.ant[1].id);
        break;
      case 3:
        if (c.suc.size() >= 2) return or_r(gen_, p, c.suc[0].id, c.suc[1].id);
        break;
      case 4:
        if (!c.ant.empty() && !c.suc.empty()) return imp_r(gen_, p, any(p, Side::Ant).id, any(p, Side::Suc).id);
        break;
      case 5: return pick(2) ? weak_l(gen_, p, random_atom()) : weak_r(gen_, p, random_atom());
      case 6:
      case 7: return quantify_weak(p);
      case 8:
      case 9: return quantify_strong(p);
      default: break;
    }
    return weak_r(gen_, p, random_atom());
  }

  LKProof binary(const LKProof& l, const LKProof& r) {
    switch (pick(3)) {
      case 0:
        if (!l->conclusion.suc.empty() && !r->conclusion.suc.empty())
          return and_r(gen_, l, r, any(l, Side::Suc).id, any(r, Side::Suc).id);
        break;
      case 1:
        if (!l->conclusion.ant.empty() && !r->conclusion.ant.empty())
          return or_l(gen_, l, r, any(l, Side::Ant).id, any(r, Side::Ant).id);
        break;
      default:
        if (!l->conclusion.suc.empty() && !r->conclusion.ant.empty())
          return imp_l(gen_, l, r, any(l, Side::Suc).id, any(r, Side::Ant).id);
        break;
    }
    return l;
  }

  // allL / exR abstracting a constant or u.
  LKProof quantify_weak(const LKProof& p) {
    Side s = pick(2) ? Side::Ant : Side::Suc;
    if (p->conclusion.side(s).empty()) return p;
    const auto& o = any(p, s);
    for (const auto& t : {Term::constant("a", kI), Term::constant("b", kI), Term::var("u", kI)}) {
      Term x = Term::var("x", kI);
      if (occurs_free(x, o.formula)) continue;
      Term body = replace(o.formula, t, x);
      if (body == o.formula) continue;
      return s == Side::Ant ? all_l(gen_, p, o.id, forall(x, body), t) : ex_r(gen_, p, o.id, exists(x, body), t);
    }
    return p;
  }

  // allR / exL on u when the eigenvariable condition holds.
  LKProof quantify_strong(const LKProof& p) {
    Term u = Term::var("u", kI), x = Term::var("y", kI);
    Side s = pick(2) ? Side::Ant : Side::Suc;
    for (const auto& o : p->conclusion.side(s)) {
      if (!occurs_free(u, o.formula) || occurs_free(x, o.formula)) continue;
      bool elsewhere = false;
      for (Side t : {Side::Ant, Side::Suc})
        for (const auto& q : p->conclusion.side(t))
          if (q.id != o.id && occurs_free(u, q.formula)) elsewhere = true;
      if (elsewhere) continue;
      Term body = substitute(o.formula, Substitution{{u, x}});
      return s == Side::Ant ? ex_l(gen_, p, o.id, exists(x, body)) : all_r(gen_, p, o.id, forall(x, body));
    }
    return p;
  }

  static Term replace(const Term& f, const Term& from, const Term& to) {
    if (f == from) return to;
    if (f.is_app()) return Term::app(replace(f.fn(), from, to), replace(f.arg(), from, to));
    if (f.is_abs()) return Term::abs(f.bound(), replace(f.body(), from, to));
    return f;
  }

  std::mt19937 rng_;
  IdGen gen_;
};

} // namespace

LKProof identity_proof(IdGen& gen, const Term& f) {
  auto v = view(f);
  switch (v.kind) {
    case FormulaKind::Neg: {
      LKProof p = identity_proof(gen, v.left);
      p = neg_l(gen, p, first_id(p, Side::Suc));
      return neg_r(gen, p, first_id(p, Side::Ant));
    }
    case FormulaKind::And: {
      LKProof l = identity_proof(gen, v.left), r = identity_proof(gen, *v.right);
      LKProof p = and_r(gen, l, r, first_id(l, Side::Suc), first_id(r, Side::Suc));
      return and_l(gen, p, p->conclusion.ant[0].id, p->conclusion.ant[1].id);
    }
    case FormulaKind::Or: {
      LKProof l = identity_proof(gen, v.left), r = identity_proof(gen, *v.right);
      LKProof p = or_l(gen, l, r, first_id(l, Side::Ant), first_id(r, Side::Ant));
      return or_r(gen, p, p->conclusion.suc[0].id, p->conclusion.suc[1].id);
    }
    case FormulaKind::Imp: {
      LKProof l = identity_proof(gen, v.left), r = identity_proof(gen, *v.right);
      LKProof p = imp_l(gen, l, r, first_id(l, Side::Suc), first_id(r, Side::Ant));
      return imp_r(gen, p, last_id(p, Side::Ant), last_id(p, Side::Suc));
    }
    case FormulaKind::All:
    case FormulaKind::Ex: {
      std::vector<std::string> used;
      collect_names(f, used);
      Term a = Term::var(fresh_name("v", [&](const std::string& s) { return std::find(used.begin(), used.end(), s) != used.end(); }), v.var->type());
      LKProof p = identity_proof(gen, instantiate_body(v, a));
      if (v.kind == FormulaKind::All) {
        p = all_l(gen, p, first_id(p, Side::Ant), f, a);
        return all_r(gen, p, first_id(p, Side::Suc), f);
      }
      p = ex_r(gen, p, first_id(p, Side::Suc), f, a);
      return ex_l(gen, p, first_id(p, Side::Ant), f);
    }
    default:
      return axiom(gen, f);
  }
}

std::vector<LKProof> random_proofs(unsigned seed, std::size_t count) {
  Builder b(seed);
  std::vector<LKProof> out;
  while (out.size() < count) {
    try {
      LKProof p = b.make(3);
      int cuts = 1 + b.pick(2);
      for (int i = 0; i < cuts; ++i) p = b.with_cut(p);
      if (node_count(p) > 15 || count_rule(p, RuleKind::Cut) == 0) continue;
      if (!check_proof(p).ok()) continue;
      out.push_back(renumber(p));
    } catch (const InferenceError&) {
    }
  }
  return out;
}

} // namespace proofbench::testing
