#include "proofbench/ceres/ceres.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "proofbench/calculus/ancestry.hpp"
#include "proofbench/kernel/formula.hpp"
#include "proofbench/kernel/render.hpp"

namespace proofbench::ceres {

using namespace calculus;
using transform::PreconditionError;

CeresStruct struct_leaf(Clause c) { return std::make_shared<StructNode>(StructNode{StructKind::Leaf, std::move(c), nullptr, nullptr}); }
CeresStruct struct_plus(CeresStruct a, CeresStruct b) { return std::make_shared<StructNode>(StructNode{StructKind::Plus, {}, std::move(a), std::move(b)}); }
CeresStruct struct_times(CeresStruct a, CeresStruct b) { return std::make_shared<StructNode>(StructNode{StructKind::Times, {}, std::move(a), std::move(b)}); }

namespace {

Clause cut_part(const Sequent& s, const std::set<OccId>& ca) {
  Clause c;
  for (const auto& o : s.ant)
    if (ca.count(o.id)) c.ant.push_back(o.formula);
  for (const auto& o : s.suc)
    if (ca.count(o.id)) c.suc.push_back(o.formula);
  return c;
}

CeresStruct extract(const ProofNode& n, const std::set<OccId>& ca) {
  if (n.premises.empty()) return struct_leaf(cut_part(n.conclusion, ca));
  if (n.premises.size() == 1) return extract(*n.premises[0], ca);
  auto l = extract(*n.premises[0], ca), r = extract(*n.premises[1], ca);
  return ca.count(n.aux[0][0]) ? struct_plus(l, r) : struct_times(l, r);
}

void add_unique(ClauseSet& out, const Clause& c) {
  if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
}

std::string render(const CeresStruct& s, bool tex) {
  switch (s->kind) {
    case StructKind::Leaf: return tex ? latex(s->clause) : "[" + calculus::plain(s->clause) + "]";
    case StructKind::Plus: return "(" + render(s->left, tex) + (tex ? " \\oplus " : " + ") + render(s->right, tex) + ")";
    case StructKind::Times: return "(" + render(s->left, tex) + (tex ? " \\otimes " : " x ") + render(s->right, tex) + ")";
  }
  return {};
}

// A projection under construction: end-sequent ancestors of the current
// node mapped to occurrences of the proof, and the clause literals.
struct Partial {
  LKProof proof;
  std::map<OccId, OccId> map;
  std::vector<OccId> lits;
};

OccId follow(const LKProof& n, OccId x) {
  auto c = child_of(*n, x);
  if (!c) throw std::logic_error("projection: lost track of occurrence");
  return *c;
}

class Projector {
public:
  Projector(const LKProof& p) : gen_(max_id(p) + 1), ca_(cut_ancestors(p)) {}

  std::vector<Partial> run(const ProofNode& n) {
    if (n.premises.empty()) {
      Partial x;
      auto self = std::make_shared<ProofNode>(n);
      x.proof = self;
      for (const auto* side : {&n.conclusion.ant, &n.conclusion.suc})
        for (const auto& o : *side) {
          if (ca_.count(o.id)) x.lits.push_back(o.id);
          else x.map[o.id] = o.id;
        }
      return {x};
    }
    if (n.premises.size() == 1) {
      auto below = run(*n.premises[0]);
      bool on_cut = !n.main.empty() && ca_.count(n.main[0]);
      for (auto& x : below) x = on_cut ? skip(n, x) : apply(n, {x});
      return below;
    }
    auto left = run(*n.premises[0]);
    auto right = run(*n.premises[1]);
    std::vector<Partial> out;
    if (ca_.count(n.aux[0][0])) {
      for (auto& x : left) out.push_back(skip(n, x));
      for (auto& x : right) out.push_back(skip(n, x));
      return out;
    }
    for (auto& x : left)
      for (auto& y : right) out.push_back(apply(n, {x, y}));
    return out;
  }

private:
  // Inference on cut ancestors: dropped.
  Partial skip(const ProofNode& n, const Partial& x) {
    Partial y{x.proof, {}, x.lits};
    for (const auto& [orig, id] : x.map)
      if (auto c = child_of(n, orig)) y.map[*c] = id;
    return y;
  }

  Partial apply(const ProofNode& n, std::vector<Partial> xs) {
    std::vector<LKProof> prem;
    std::vector<std::vector<OccId>> aux;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      for (OccId a : n.aux[i])
        if (!xs[i].map.count(a)) xs[i] = weaken(xs[i], *n.premises[i], a);
      prem.push_back(xs[i].proof);
      aux.emplace_back();
      for (OccId a : n.aux[i]) aux.back().push_back(xs[i].map.at(a));
    }
    LKProof r = replay(gen_, n, prem, aux);
    Partial y{r, {}, {}};
    for (const auto& x : xs) {
      for (const auto& [orig, id] : x.map)
        if (auto c = child_of(n, orig); c && !std::count(n.main.begin(), n.main.end(), *c)) y.map[*c] = follow(r, id);
      for (OccId l : x.lits) y.lits.push_back(follow(r, l));
    }
    for (std::size_t k = 0; k < n.main.size(); ++k) y.map[n.main[k]] = r->main[k];
    return y;
  }

  // An auxiliary end-sequent ancestor that was dropped with the other side of
  // a cut is weakened in where it is needed.
  Partial weaken(Partial x, const ProofNode& premise, OccId a) {
    Side s = *premise.conclusion.side_of(a);
    const Term& f = premise.conclusion.find(a)->formula;
    LKProof w = s == Side::Ant ? weak_l(gen_, x.proof, f) : weak_r(gen_, x.proof, f);
    for (auto& [orig, id] : x.map) id = follow(w, id);
    for (auto& l : x.lits) l = follow(w, l);
    x.map[a] = w->main[0];
    x.proof = w;
    return x;
  }

  IdGen gen_;
  std::set<OccId> ca_;
};

Clause clause_of(const Partial& x) {
  Clause c;
  for (OccId l : x.lits) {
    auto side = x.proof->conclusion.side_of(l);
    (side == Side::Ant ? c.ant : c.suc).push_back(x.proof->conclusion.find(l)->formula);
  }
  return c;
}

void require_skolemized_regular(const LKProof& p) {
  auto strong = transform::end_sequent_strong_inferences(p);
  if (!strong.empty()) {
    const auto* n = strong.front();
    throw PreconditionError("not-skolemized", std::string("projections: ") + n->name() + " on " +
                            kernel::plain(n->conclusion.find(n->main[0])->formula) +
                            " with eigenvariable " + kernel::plain(*n->term) + " is on the end-sequent; skolemize first");
  }
  std::set<std::string> seen;
  preorder(p, [&](const LKProof& q) {
    if (is_strong_quantifier(q->rule) && q->term && !seen.insert(q->term->name()).second)
      throw PreconditionError("not-regular", "projections: eigenvariable " + q->term->name() + " is used twice; regularize first");
  });
}

// Variables of the end-sequent behave as constants in the clause set.
class Freezer {
public:
  explicit Freezer(const FSequent& end) {
    for (const auto* side : {&end.ant, &end.suc})
      for (const auto& f : *side)
        for (const auto& v : kernel::free_vars(f)) {
          freeze_.set(v, Term::constant("#" + v.name(), v.type()));
          thaw_.insert_or_assign("#" + v.name() + ":" + v.type().str(), v);
        }
  }
  Term freeze(const Term& t) const { return kernel::substitute(t, freeze_); }
  Clause freeze(const Clause& c) const {
    Clause out;
    for (const auto& a : c.ant) out.ant.push_back(freeze(a));
    for (const auto& a : c.suc) out.suc.push_back(freeze(a));
    return out;
  }
  Term thaw(const Term& t) const {
    if (t.is_const()) {
      auto it = thaw_.find(t.name() + ":" + t.type().str());
      return it == thaw_.end() ? t : it->second;
    }
    if (t.is_app()) return Term::app(thaw(t.fn()), thaw(t.arg()));
    return t;
  }

private:
  Substitution freeze_;
  std::map<std::string, Term> thaw_;
};

std::vector<Term> vars_of(const Clause& c) {
  std::vector<Term> out;
  for (const auto* side : {&c.ant, &c.suc})
    for (const auto& a : *side)
      for (const auto& v : kernel::free_vars(a))
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  return out;
}

// A ground instance of a refutation step as an LK proof: its end-sequent
// holds the ground clause (literal ids in clause order) and copies of
// end-sequent formulas.
struct Simulated {
  LKProof proof;
  std::vector<OccId> ant, suc;
};

class Recombiner {
public:
  Recombiner(const ClauseSet& frozen, const std::vector<Projection>& projections, const Freezer& freezer,
             const ResolutionProof& refutation, std::set<std::string> names, const transform::CancelToken* cancel)
      : frozen_(frozen), projections_(projections), freezer_(freezer), refutation_(refutation),
        names_(std::move(names)), cancel_(cancel) {}

  Simulated run() { return build(refutation_.root, {}); }

  IdGen& gen() { return gen_; }

private:
  // theta restricted to the clause of step i, residual variables sent to
  // a fresh constant of their type.
  Substitution complete(const Clause& c, Substitution theta) {
    for (const auto& v : vars_of(c)) {
      if (theta.contains(v)) continue;
      theta.bind(v, residual(v.type()));
    }
    return theta;
  }

  Term residual(const kernel::Type& t) {
    auto it = residuals_.find(t.str());
    if (it != residuals_.end()) return it->second;
    std::string n = kernel::fresh_name("c", [&](const std::string& s) { return names_.count(s) > 0; });
    names_.insert(n);
    Term c = Term::constant(n, t);
    residuals_.emplace(t.str(), c);
    return c;
  }

  // x -> theta(rename(pre(x))) for the variables of `premise`; variables
  // the step drops are sent to a residual constant.
  Substitution pull_back(const Clause& premise, const std::vector<const Substitution*>& pre, const Substitution& rename,
                         const Substitution& theta) {
    Substitution out;
    for (const auto& v : vars_of(premise)) {
      Term t = v;
      for (const auto* s : pre) t = kernel::substitute(t, *s);
      Substitution post;
      for (const auto& w : kernel::free_vars(t))
        post.bind(w, rename.contains(w) ? kernel::substitute(*rename.lookup(w), theta) : residual(w.type()));
      out.bind(v, kernel::substitute(t, post));
    }
    return out;
  }

  Simulated build(std::size_t i, const Substitution& theta_in) {
    if (cancel_) cancel_->check();
    const auto& s = refutation_.steps[i];
    Substitution theta = complete(s.clause, theta_in);
    switch (s.kind) {
      case StepKind::Input: return input(s, theta);
      case StepKind::Factor: {
        const auto& prem = refutation_.steps[s.left];
        Simulated x = build(s.left, pull_back(prem.clause, {&s.unifier}, s.rename, theta));
        auto& lits = s.side == Side::Ant ? x.ant : x.suc;
        OccId a = lits[s.lit_left], b = lits[s.lit_right];
        LKProof c = s.side == Side::Ant ? contr_l(gen_, x.proof, a, b) : contr_r(gen_, x.proof, a, b);
        lits.erase(lits.begin() + static_cast<long>(s.lit_right));
        for (auto* v : {&x.ant, &x.suc})
          for (auto& id : *v) id = id == a ? c->main[0] : follow(c, id);
        x.proof = c;
        return x;
      }
      case StepKind::Resolvent: {
        const auto& lp = refutation_.steps[s.left];
        const auto& rp = refutation_.steps[s.right];
        Simulated l = build(s.left, pull_back(lp.clause, {&s.unifier}, s.rename, theta));
        Simulated r = build(s.right, pull_back(rp.clause, {&s.apart, &s.unifier}, s.rename, theta));
        LKProof c = cut(gen_, l.proof, r.proof, l.suc[s.lit_left], r.ant[s.lit_right]);
        Simulated out{c, {}, {}};
        for (OccId id : l.ant) out.ant.push_back(follow(c, id));
        for (std::size_t k = 0; k < r.ant.size(); ++k)
          if (k != s.lit_right) out.ant.push_back(follow(c, r.ant[k]));
        for (std::size_t k = 0; k < l.suc.size(); ++k)
          if (k != s.lit_left) out.suc.push_back(follow(c, l.suc[k]));
        for (OccId id : r.suc) out.suc.push_back(follow(c, id));
        return out;
      }
    }
    throw std::logic_error("ceres: unknown step");
  }

  Simulated input(const ResolutionStep& s, const Substitution& theta) {
    const Projection& pr = projections_[s.input];
    const Clause& fc = frozen_[s.input];
    Substitution ground;
    for (const auto& v : vars_of(fc)) {
      Term t = kernel::substitute(kernel::substitute(v, s.rename), theta);
      ground.bind(v, freezer_.thaw(t));
    }
    LKProof inst = refresh(transform::substitute_proof(pr.proof, ground), gen_);

    // Literals in clause-set order; among equal formulas any occurrence
    // will do.
    Simulated out{inst, {}, {}};
    std::set<OccId> used;
    auto pick = [&](Side side, const Term& lit) {
      Term want = kernel::substitute(lit, ground);
      for (const auto& o : inst->conclusion.side(side))
        if (!used.count(o.id) && o.formula == want) {
          used.insert(o.id);
          return o.id;
        }
      throw std::logic_error("ceres: projection does not contain its clause");
    };
    for (const auto& lit : pr.clause.ant) out.ant.push_back(pick(Side::Ant, lit));
    for (const auto& lit : pr.clause.suc) out.suc.push_back(pick(Side::Suc, lit));
    return out;
  }

  static OccId follow(const LKProof& n, OccId x) { return ceres::follow(n, x); }

  const ClauseSet& frozen_;
  const std::vector<Projection>& projections_;
  const Freezer& freezer_;
  const ResolutionProof& refutation_;
  std::set<std::string> names_;
  const transform::CancelToken* cancel_;
  std::map<std::string, Term> residuals_;
  IdGen gen_;
};

std::set<std::string> all_names(const LKProof& p) {
  std::vector<std::string> out;
  preorder(p, [&](const LKProof& q) {
    for (const auto* side : {&q->conclusion.ant, &q->conclusion.suc})
      for (const auto& o : *side) kernel::collect_names(o.formula, out);
    if (q->term) kernel::collect_names(*q->term, out);
  });
  return {out.begin(), out.end()};
}

// Contracts surplus copies and weakens in missing ones so the end-sequent
// is exactly `end`.
LKProof fit_end_sequent(IdGen& gen, LKProof p, const FSequent& end) {
  for (Side s : {Side::Ant, Side::Suc}) {
    const auto& want = s == Side::Ant ? end.ant : end.suc;
    std::vector<Term> distinct;
    for (const auto& f : want)
      if (std::find(distinct.begin(), distinct.end(), f) == distinct.end()) distinct.push_back(f);
    for (const auto& o : p->conclusion.side(s))
      if (std::find(distinct.begin(), distinct.end(), o.formula) == distinct.end()) distinct.push_back(o.formula);
    for (const auto& f : distinct) {
      auto need = static_cast<std::size_t>(std::count(want.begin(), want.end(), f));
      for (;;) {
        std::vector<OccId> have;
        for (const auto& o : p->conclusion.side(s))
          if (o.formula == f) have.push_back(o.id);
        if (have.size() > need && have.size() >= 2) {
          p = s == Side::Ant ? contr_l(gen, p, have[0], have[1]) : contr_r(gen, p, have[0], have[1]);
        } else if (have.size() < need) {
          p = s == Side::Ant ? weak_l(gen, p, f) : weak_r(gen, p, f);
        } else {
          if (have.size() != need) throw std::logic_error("ceres: end-sequent cannot be fitted");
          break;
        }
      }
    }
  }
  return p;
}

} // namespace

CeresStruct extract_struct(const LKProof& p) {
  transform::require_first_order(p, "struct");
  return extract(*p, cut_ancestors(p));
}

ClauseSet char_clause_set(const CeresStruct& s) {
  ClauseSet out;
  switch (s->kind) {
    case StructKind::Leaf:
      out.push_back(s->clause);
      break;
    case StructKind::Plus:
      for (const auto& c : char_clause_set(s->left)) add_unique(out, c);
      for (const auto& c : char_clause_set(s->right)) add_unique(out, c);
      break;
    case StructKind::Times: {
      auto l = char_clause_set(s->left), r = char_clause_set(s->right);
      for (const auto& a : l)
        for (const auto& b : r) add_unique(out, a + b);
      break;
    }
  }
  return out;
}

std::size_t struct_binary_nodes(const CeresStruct& s) {
  if (s->kind == StructKind::Leaf) return 0;
  return 1 + struct_binary_nodes(s->left) + struct_binary_nodes(s->right);
}

std::string plain(const CeresStruct& s) { return render(s, false); }
std::string latex(const CeresStruct& s) { return render(s, true); }

std::vector<Projection> compute_projections(const LKProof& p) {
  transform::require_first_order(p, "projections");
  require_skolemized_regular(p);
  auto partials = Projector(p).run(*p);
  std::vector<Projection> out;
  for (const auto& c : char_clause_set(extract_struct(p))) {
    auto it = std::find_if(partials.begin(), partials.end(), [&](const Partial& x) { return clause_of(x) == c; });
    if (it == partials.end()) throw std::logic_error("projections: no projection for clause " + calculus::plain(c));
    out.push_back({renumber(it->proof), c});
  }
  return out;
}

LKProof ceres_cut_elim(const LKProof& p, const Limits& limits, const transform::CancelToken* cancel) {
  transform::require_first_order(p, "ceres");
  bool strong = !transform::end_sequent_strong_inferences(p).empty();
  if (is_cut_free(p)) return strong ? transform::skolemize(p) : p;
  LKProof q = strong ? transform::skolemize(p) : transform::regularize(p);
  FSequent end = q->conclusion.formulas();

  auto projections = compute_projections(q);
  Freezer freezer(end);
  ClauseSet frozen;
  for (const auto& pr : projections) frozen.push_back(freezer.freeze(pr.clause));

  auto result = refute(frozen, limits, cancel);
  if (result.status != RefuteStatus::Refuted)
    throw RefutationFailed(result.status, std::string("ceres: clause set not refuted (") + refute_status_name(result.status) + ")");

  Recombiner rec(frozen, projections, freezer, *result.proof, all_names(q), cancel);
  Simulated root = rec.run();
  return renumber(fit_end_sequent(rec.gen(), root.proof, end));
}

} // namespace proofbench::ceres
