#include <functional>
#include <map>

#include "proofbench/calculus/ancestry.hpp"
#include "proofbench/kernel/formula.hpp"
#include "util.hpp"

namespace proofbench::transform {

using namespace calculus;
using detail::NameSupply;
using detail::Path;
using kernel::FormulaKind;
using kernel::Substitution;

namespace {

bool has_quantifier(const Term& f) {
  auto v = kernel::view(f);
  switch (v.kind) {
    case FormulaKind::Atom: return false;
    case FormulaKind::All:
    case FormulaKind::Ex: return true;
    default: return has_quantifier(v.left) || (v.right && has_quantifier(*v.right));
  }
}

// Skolemized form of one end-sequent formula, with the skolemized
// subformula at every original position and the skolem term standing for
// every strong quantifier.
struct SkolemForm {
  Term result;
  std::map<Path, Term> sub;
  std::map<Path, Term> skolem;
};

class Skolemizer {
public:
  explicit Skolemizer(NameSupply& names) : names_(names) {}

  SkolemForm run(const Term& f, Side side) {
    SkolemForm out{f, {}, {}};
    std::vector<Term> weak;
    Path path;
    out.result = walk(f, side == Side::Suc, path, weak, out);
    return out;
  }

private:
  Term walk(const Term& f, bool pos, Path& path, std::vector<Term>& weak, SkolemForm& out) {
    auto v = kernel::view(f);
    Term r = f;
    auto child = [&](int i, const Term& g, bool p) {
      path.push_back(i);
      Term t = walk(g, p, path, weak, out);
      path.pop_back();
      return t;
    };
    switch (v.kind) {
      case FormulaKind::Atom:
        break;
      case FormulaKind::Neg:
        r = kernel::neg(child(0, v.left, !pos));
        break;
      case FormulaKind::And:
        r = kernel::conj(child(0, v.left, pos), child(1, *v.right, pos));
        break;
      case FormulaKind::Or:
        r = kernel::disj(child(0, v.left, pos), child(1, *v.right, pos));
        break;
      case FormulaKind::Imp:
        r = kernel::imp(child(0, v.left, !pos), child(1, *v.right, pos));
        break;
      case FormulaKind::All:
      case FormulaKind::Ex: {
        bool strong = (v.kind == FormulaKind::All) == pos;
        if (strong) {
          std::vector<kernel::Type> types;
          for (const auto& w : weak) types.push_back(w.type());
          std::string name;
          do name = "s" + std::to_string(counter_++);
          while (names_.used(name));
          names_.reserve(name);
          Term c = Term::constant(name, kernel::arrows(types, v.var->type()));
          Term sk = kernel::apply_args(c, weak);
          out.skolem.insert_or_assign(path, sk);
          r = child(0, kernel::instantiate_body(v, sk), pos);
        } else {
          weak.push_back(*v.var);
          Term body = child(0, v.left, pos);
          weak.pop_back();
          r = v.kind == FormulaKind::All ? kernel::forall(*v.var, body) : kernel::exists(*v.var, body);
        }
        break;
      }
      case FormulaKind::BigAnd:
      case FormulaKind::BigOr:
        if (has_quantifier(v.left))
          throw PreconditionError("schematic-quantifier", "skolemize: quantifier inside a schematic connective");
        break;
    }
    out.sub.insert_or_assign(path, r);
    return r;
  }

  NameSupply& names_;
  int counter_ = 0;
};

std::vector<SkolemForm> skolem_forms(const FSequent& s, NameSupply& names) {
  Skolemizer sk(names);
  std::vector<SkolemForm> out;
  for (const auto& f : s.ant) out.push_back(sk.run(f, Side::Ant));
  for (const auto& f : s.suc) out.push_back(sk.run(f, Side::Suc));
  return out;
}

struct Track {
  std::size_t formula; // index into the skolem forms
  Path path;
  Substitution sigma;
};

class ProofSkolemizer {
public:
  ProofSkolemizer(const LKProof& root, std::vector<SkolemForm> forms) : forms_(std::move(forms)) {
    std::size_t i = 0;
    for (const auto& o : root->conclusion.ant) originals_.push_back(o.formula), tracks_[o.id] = Track{i++, {}, {}};
    for (const auto& o : root->conclusion.suc) originals_.push_back(o.formula), tracks_[o.id] = Track{i++, {}, {}};
  }

  LKProof run(const LKProof& n, const Substitution& theta) {
    const Track* main_track = nullptr;
    if (!n->main.empty()) {
      auto it = tracks_.find(n->main[0]);
      if (it != tracks_.end()) main_track = &it->second;
    }

    Substitution inner = theta;
    if (is_strong_quantifier(n->rule) && main_track) {
      const auto& form = forms_[main_track->formula];
      Term sk = kernel::substitute(form.skolem.at(main_track->path), main_track->sigma);
      inner.set(*n->term, sk);
    }

    for (std::size_t i = 0; i < n->premises.size(); ++i) {
      const auto& q = n->premises[i];
      for (const auto* side : {&q->conclusion.ant, &q->conclusion.suc})
        for (const auto& o : *side) {
          auto c = child_of(*n, o.id);
          if (!c) continue;
          auto it = tracks_.find(*c);
          if (it == tracks_.end()) continue;
          if (!detail::is_main(*n, *c)) {
            tracks_[o.id] = it->second;
            continue;
          }
          const auto& a = n->aux[i];
          std::size_t k = std::find(a.begin(), a.end(), o.id) - a.begin();
          int ch = detail::aux_child(*n, i, k);
          if (ch == -1) continue;
          Track t = it->second;
          if (ch >= 0) {
            if (is_weak_quantifier(n->rule)) {
              Term orig = detail::subformula(originals_[t.formula], t.path);
              t.sigma.set(*kernel::view(orig).var, kernel::substitute(*n->term, theta));
            }
            t.path.push_back(ch);
          }
          tracks_[o.id] = std::move(t);
        }
    }

    std::vector<LKProof> prem;
    for (const auto& q : n->premises) prem.push_back(run(q, inner));

    if (is_strong_quantifier(n->rule) && main_track)
    {
      std::vector<std::pair<OccId, OccId>> rename;
      for (OccId id : n->premises[0]->conclusion.ids())
        if (auto c = child_of(*n, id)) rename.emplace_back(id, *c);
      return relabel_root(prem[0], rename);
    }

    auto c = std::make_shared<ProofNode>(*n);
    c->premises = std::move(prem);
    for (auto* side : {&c->conclusion.ant, &c->conclusion.suc})
      for (auto& o : *side) {
        auto it = tracks_.find(o.id);
        if (it == tracks_.end()) {
          o.formula = kernel::substitute(o.formula, theta);
        } else {
          const auto& t = it->second;
          o.formula = kernel::substitute(forms_[t.formula].sub.at(t.path), t.sigma);
        }
      }
    if (c->term && !is_strong_quantifier(c->rule)) c->term = kernel::substitute(*c->term, theta);
    return c;
  }

private:
  std::vector<SkolemForm> forms_;
  std::vector<Term> originals_;
  std::map<OccId, Track> tracks_;
};

} // namespace

FSequent skolemize_sequent(const FSequent& s, const std::vector<std::string>& taken) {
  NameSupply names({taken.begin(), taken.end()});
  auto forms = skolem_forms(s, names);
  FSequent out;
  for (std::size_t i = 0; i < forms.size(); ++i)
    (i < s.ant.size() ? out.ant : out.suc).push_back(forms[i].result);
  return out;
}

LKProof skolemize(const LKProof& p) {
  detail::require_first_order(p, "skolemize");
  LKProof q = regularize(p);
  NameSupply names(detail::names_in(q));
  auto forms = skolem_forms(q->conclusion.formulas(), names);
  ProofSkolemizer sk(q, std::move(forms));
  return renumber(sk.run(q, {}));
}

std::vector<const ProofNode*> end_sequent_strong_inferences(const LKProof& p) {
  auto anc = ancestors_of(p, [&] {
    auto ids = p->conclusion.ids();
    return std::set<OccId>(ids.begin(), ids.end());
  }());
  std::vector<const ProofNode*> out;
  preorder(p, [&](const LKProof& q) {
    if (is_strong_quantifier(q->rule) && !q->main.empty() && anc.count(q->main[0])) out.push_back(q.get());
  });
  return out;
}

} // namespace proofbench::transform
