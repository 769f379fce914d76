#include "proofbench/calculus/schema.hpp"

#include <algorithm>

#include "proofbench/kernel/param.hpp"
#include "proofbench/kernel/render.hpp"
#include "proofbench/kernel/substitution.hpp"

namespace proofbench::calculus {

using namespace kernel;

const DbEntry* ProofDatabase::find(const std::string& name) const {
  for (const auto& e : entries)
    if (e.name == name) return &e;
  return nullptr;
}

void ProofDatabase::add(DbEntry e) {
  if (find(e.name)) throw std::invalid_argument("duplicate proof name " + e.name);
  entries.push_back(std::move(e));
}

namespace {

FSequent map_sequent(const FSequent& s, const Substitution& sub) {
  FSequent r;
  for (const auto& f : s.ant) r.ant.push_back(substitute(f, sub));
  for (const auto& f : s.suc) r.suc.push_back(substitute(f, sub));
  return r;
}

constexpr int kMaxDepth = 100000;

class Instantiator {
public:
  Instantiator(const ProofDatabase& db) : db_(db) {}

  LKProof schema_instance(const std::string& name, std::uint64_t n, int depth) {
    const DbEntry* e = db_.find(name);
    if (!e) throw LinkError("no proof named '" + name + "'");
    if (!e->schema) throw LinkError("'" + name + "' is not a schema");
    if (depth > kMaxDepth) throw LinkError("link recursion too deep at '" + name + "'");
    const ProofSchema& s = *e->schema;
    LKProof tmpl = n == 0 ? s.base : s.step;
    Substitution sub{{s.param, param_numeral(n == 0 ? 0 : n - 1)}};
    LKProof p = map_formulas(tmpl, [&](const Term& t) { return substitute(t, sub); });
    return expand(refresh(p, gen_), depth);
  }

  LKProof plain_instance(const std::string& name, int depth) {
    const DbEntry* e = db_.find(name);
    if (!e) throw LinkError("no proof named '" + name + "'");
    if (e->schema) throw LinkError("link to schema '" + name + "' needs a parameter");
    if (std::find(stack_.begin(), stack_.end(), name) != stack_.end())
      throw LinkError("cyclic link through '" + name + "'");
    stack_.push_back(name);
    LKProof r = expand(refresh(e->proof, gen_), depth);
    stack_.pop_back();
    return r;
  }

  LKProof expand(const LKProof& p, int depth) {
    if (p->rule == RuleKind::ProofLink) {
      const LinkData& l = *p->link;
      LKProof sub;
      if (l.arg) {
        std::uint64_t m;
        try {
          m = eval_param(*l.arg, {});
        } catch (const UnboundParam& e) {
          throw LinkError("link to '" + l.schema + "' has a non-ground parameter " + plain(*l.arg));
        }
        sub = schema_instance(l.schema, m, depth + 1);
      } else {
        sub = plain_instance(l.schema, depth + 1);
      }
      return graft(p, sub);
    }
    bool changed = false;
    std::vector<LKProof> prem;
    for (const auto& q : p->premises) {
      prem.push_back(expand(q, depth));
      changed = changed || prem.back() != q;
    }
    if (!changed) return p;
    auto n = std::make_shared<ProofNode>(*p);
    n->premises = std::move(prem);
    return n;
  }

private:
  // Puts sub in place of the link leaf, reusing the leaf's occurrence ids.
  static LKProof graft(const LKProof& link, const LKProof& sub) {
    std::vector<std::pair<OccId, OccId>> rename;
    std::vector<bool> used_ant(sub->conclusion.ant.size()), used_suc(sub->conclusion.suc.size());
    auto assign = [&](const std::vector<FormulaOccurrence>& want, const std::vector<FormulaOccurrence>& have,
                      std::vector<bool>& used) {
      for (const auto& w : want) {
        bool found = false;
        for (std::size_t i = 0; i < have.size(); ++i)
          if (!used[i] && have[i].formula == w.formula) {
            used[i] = found = true;
            rename.emplace_back(have[i].id, w.id);
            break;
          }
        if (!found)
          throw LinkError("link conclusion " + plain(link->conclusion) + " does not match instance " +
                          plain(sub->conclusion));
      }
    };
    if (link->conclusion.ant.size() != sub->conclusion.ant.size() ||
        link->conclusion.suc.size() != sub->conclusion.suc.size())
      throw LinkError("link conclusion " + plain(link->conclusion) + " does not match instance " + plain(sub->conclusion));
    assign(link->conclusion.ant, sub->conclusion.ant, used_ant);
    assign(link->conclusion.suc, sub->conclusion.suc, used_suc);
    return relabel_root(sub, rename);
  }

  const ProofDatabase& db_;
  IdGen gen_{1};
  std::vector<std::string> stack_;

public:
  void start_after(OccId m) { gen_ = IdGen(m + 1); }
};

} // namespace

FSequent schema_end_at(const ProofSchema& s, std::uint64_t n) {
  return map_sequent(s.end, Substitution{{s.param, param_numeral(n)}});
}

FSequent schema_end_at(const ProofSchema& s, const Term& arg) { return map_sequent(s.end, Substitution{{s.param, arg}}); }

LKProof instantiate_schema(const ProofDatabase& db, const std::string& name, std::uint64_t n) {
  Instantiator inst(db);
  return renumber(inst.schema_instance(name, n, 0));
}

LKProof expand_links(const ProofDatabase& db, const LKProof& p) {
  if (!has_links(p)) return p;
  Instantiator inst(db);
  inst.start_after(max_id(p));
  return renumber(inst.expand(p, 0));
}

} // namespace proofbench::calculus
