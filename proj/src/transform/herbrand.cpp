#include <algorithm>
#include <map>

#include "proofbench/kernel/formula.hpp"
#include "proofbench/kernel/param.hpp"
#include "util.hpp"

namespace proofbench::transform {

using namespace calculus;
using detail::Path;
using kernel::FormulaKind;
using kernel::Substitution;

namespace {

using Bindings = std::vector<std::pair<Term, Term>>;

struct Track {
  std::size_t formula;
  Path path;
  Bindings sigma;
};

struct Witness {
  Bindings outer;
  Term term;
};

using WitnessTable = std::map<std::pair<std::size_t, Path>, std::vector<Witness>>;

bool same_bindings(const Bindings& a, const Bindings& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].first != b[i].first || a[i].second != b[i].second) return false;
  return true;
}

class Collector {
public:
  Collector(const LKProof& root, WitnessTable& table) : table_(table) {
    std::size_t i = 0;
    for (const auto* side : {&root->conclusion.ant, &root->conclusion.suc})
      for (const auto& o : *side) {
        originals_.push_back(o.formula);
        tracks_[o.id] = Track{i++, {}, {}};
      }
  }

  void run(const ProofNode& n) {
    for (std::size_t i = 0; i < n.premises.size(); ++i) {
      const auto& q = n.premises[i];
      for (const auto* side : {&q->conclusion.ant, &q->conclusion.suc})
        for (const auto& o : *side) {
          auto c = child_of(n, o.id);
          if (!c) continue;
          auto it = tracks_.find(*c);
          if (it == tracks_.end()) continue;
          if (!detail::is_main(n, *c)) {
            tracks_[o.id] = it->second;
            continue;
          }
          const auto& a = n.aux[i];
          std::size_t k = std::find(a.begin(), a.end(), o.id) - a.begin();
          int ch = detail::aux_child(n, i, k);
          if (ch == -1) continue;
          Track t = it->second;
          if (ch >= 0) {
            if (is_weak_quantifier(n.rule)) {
              Term orig = detail::subformula(originals_[t.formula], t.path);
              auto& list = table_[{t.formula, t.path}];
              Witness w{t.sigma, *n.term};
              bool seen = std::any_of(list.begin(), list.end(), [&](const Witness& x) {
                return x.term == w.term && same_bindings(x.outer, w.outer);
              });
              if (!seen) list.push_back(w);
              t.sigma.emplace_back(*kernel::view(orig).var, *n.term);
            }
            t.path.push_back(ch);
          }
          tracks_[o.id] = std::move(t);
        }
    }
    for (const auto& q : n.premises) run(*q);
  }

private:
  WitnessTable& table_;
  std::vector<Term> originals_;
  std::map<OccId, Track> tracks_;
};

struct Instance {
  Term formula;
  Bindings witnesses;
};

// Every combination of recorded witnesses; a quantifier with none drops
// the instance.
std::vector<Instance> expand(const Term& f, std::size_t e, Path& path, const Bindings& sigma, const WitnessTable& table) {
  auto v = kernel::view(f);
  auto sub = [&](int i, const Term& g, const Bindings& s) {
    path.push_back(i);
    auto r = expand(g, e, path, s, table);
    path.pop_back();
    return r;
  };
  auto pairwise = [&](auto build) {
    std::vector<Instance> out;
    auto ls = sub(0, v.left, sigma);
    auto rs = sub(1, *v.right, sigma);
    for (const auto& l : ls)
      for (const auto& r : rs) {
        Bindings w = l.witnesses;
        w.insert(w.end(), r.witnesses.begin() + static_cast<long>(sigma.size()), r.witnesses.end());
        out.push_back({build(l.formula, r.formula), w});
      }
    return out;
  };
  switch (v.kind) {
    case FormulaKind::Neg: {
      auto out = sub(0, v.left, sigma);
      for (auto& x : out) x.formula = kernel::neg(x.formula);
      return out;
    }
    case FormulaKind::And: return pairwise([](const Term& a, const Term& b) { return kernel::conj(a, b); });
    case FormulaKind::Or: return pairwise([](const Term& a, const Term& b) { return kernel::disj(a, b); });
    case FormulaKind::Imp: return pairwise([](const Term& a, const Term& b) { return kernel::imp(a, b); });
    case FormulaKind::All:
    case FormulaKind::Ex: {
      std::vector<Instance> out;
      auto it = table.find({e, path});
      if (it == table.end()) return out;
      for (const auto& w : it->second) {
        if (!same_bindings(w.outer, sigma)) continue;
        Bindings inner = sigma;
        inner.emplace_back(*v.var, w.term);
        for (auto& x : sub(0, v.left, inner)) out.push_back(std::move(x));
      }
      return out;
    }
    default: {
      Substitution s;
      for (const auto& [x, t] : sigma) s.set(x, t);
      return {{kernel::substitute(f, s), sigma}};
    }
  }
}

} // namespace

HerbrandSequent herbrand_sequent(const LKProof& p) {
  detail::require_first_order(p, "herbrand");
  if (!has_only_atomic_cuts(p)) throw PreconditionError("non-atomic-cuts", "herbrand: proof has non-atomic cuts; eliminate them first");
  if (!end_sequent_strong_inferences(p).empty())
    throw PreconditionError("not-skolemized", "herbrand: proof has strong quantifier inferences on the end-sequent; skolemize first");

  WitnessTable table;
  Collector(p, table).run(*p);

  HerbrandSequent out;
  std::size_t e = 0;
  for (Side side : {Side::Ant, Side::Suc}) {
    const auto& occs = p->conclusion.side(side);
    auto& dest = side == Side::Ant ? out.sequent.ant : out.sequent.suc;
    for (std::size_t i = 0; i < occs.size(); ++i, ++e) {
      Path path;
      for (auto& inst : expand(occs[i].formula, e, path, {}, table)) {
        Term f = kernel::unfold_schema_connective(inst.formula, {});
        if (std::find(dest.begin(), dest.end(), f) != dest.end()) continue;
        dest.push_back(f);
        out.members.push_back({f, side, i, std::move(inst.witnesses)});
      }
    }
  }
  return out;
}

} // namespace proofbench::transform
