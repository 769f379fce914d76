#include "proofbench/calculus/proof.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "proofbench/kernel/formula.hpp"
#include "proofbench/kernel/param.hpp"
#include "proofbench/kernel/render.hpp"
#include "proofbench/kernel/substitution.hpp"

namespace proofbench::calculus {

using namespace kernel;

namespace {

struct RuleInfo {
  RuleKind kind;
  const char* name;
  int arity;
};

constexpr RuleInfo kRules[] = {
    {RuleKind::Axiom, "ax", 0},        {RuleKind::Cut, "cut", 2},         {RuleKind::NegL, "negL", 1},
    {RuleKind::NegR, "negR", 1},       {RuleKind::AndL, "andL", 1},       {RuleKind::AndR, "andR", 2},
    {RuleKind::OrL, "orL", 2},         {RuleKind::OrR, "orR", 1},         {RuleKind::ImpL, "impL", 2},
    {RuleKind::ImpR, "impR", 1},       {RuleKind::ForAllL, "allL", 1},    {RuleKind::ForAllR, "allR", 1},
    {RuleKind::ExistsL, "exL", 1},     {RuleKind::ExistsR, "exR", 1},     {RuleKind::WeakL, "weakL", 1},
    {RuleKind::WeakR, "weakR", 1},     {RuleKind::ContrL, "contrL", 1},   {RuleKind::ContrR, "contrR", 1},
    {RuleKind::AndEqL1, "andEqL1", 1}, {RuleKind::AndEqL3, "andEqL3", 1}, {RuleKind::ProofLink, "pLink", 0},
    {RuleKind::AutoProp, "autoprop", 0}, {RuleKind::Generic, "generic", -1},
};

constexpr std::pair<const char*, RuleKind> kAliases[] = {
    {"axiom", RuleKind::Axiom},      {"forallL", RuleKind::ForAllL}, {"forallR", RuleKind::ForAllR},
    {"existsL", RuleKind::ExistsL},  {"existsR", RuleKind::ExistsR}, {"prooflink", RuleKind::ProofLink},
};

const RuleInfo& info(RuleKind k) {
  for (const auto& r : kRules)
    if (r.kind == k) return r;
  return kRules[std::size(kRules) - 1];
}

using Kind = InferenceError::Kind;

[[noreturn]] void fail(Kind k, const std::string& msg) { throw InferenceError(k, msg); }

struct Expected {
  std::vector<ExpectedOccurrence> occs;
  std::vector<bool> main;
};

const FormulaOccurrence& aux_in(const LKProof& p, OccId id, Side side, RuleKind rule) {
  const FormulaOccurrence* o = p->conclusion.find(id);
  if (!o) fail(Kind::MissingAux, std::string(rule_name(rule)) + ": no occurrence " + std::to_string(id) + " in premise");
  if (p->conclusion.side_of(id) != side)
    fail(Kind::MissingAux, std::string(rule_name(rule)) + ": occurrence " + std::to_string(id) + " is on the wrong side");
  return *o;
}

// Does target equal body[x := t] for some t? Records t when x occurs.
class InstanceMatcher {
public:
  explicit InstanceMatcher(const Term& x) : x_(x) {}
  std::optional<Term> witness;

  bool match(const Term& p, const Term& s) { return go(p, s); }

private:
  const Term& x_;
  std::vector<std::pair<Term, Term>> env_;

  static bool same(const Term& a, const Term& b) { return a.name() == b.name() && a.type() == b.type(); }

  int bound_index(const Term& v, bool pattern_side) const {
    for (std::size_t i = env_.size(); i-- > 0;)
      if (same(pattern_side ? env_[i].first : env_[i].second, v)) return static_cast<int>(i);
    return -1;
  }

  bool captures(const Term& s) const {
    for (const auto& fv : free_vars(s))
      if (bound_index(fv, false) >= 0) return true;
    return false;
  }

  bool go(const Term& p, const Term& s) {
    if (p.is_var()) {
      int bi = bound_index(p, true);
      if (bi >= 0) return s.is_var() && bound_index(s, false) == bi;
      if (same(p, x_)) {
        if (!(s.type() == p.type()) || captures(s)) return false;
        if (witness) return *witness == s;
        witness = s;
        return true;
      }
      return s.is_var() && same(p, s) && bound_index(s, false) < 0;
    }
    if (p.kind() != s.kind()) return false;
    switch (p.kind()) {
      case Term::Kind::Const:
        return same(p, s);
      case Term::Kind::App:
        return go(p.fn(), s.fn()) && go(p.arg(), s.arg());
      case Term::Kind::Abs: {
        if (!(p.bound().type() == s.bound().type())) return false;
        env_.emplace_back(p.bound(), s.bound());
        bool ok = go(p.body(), s.body());
        env_.pop_back();
        return ok;
      }
      default:
        return false;
    }
  }
};

void add_context(Expected& e, const LKProof& p, const std::vector<OccId>& aux, Side side) {
  for (const auto& o : p->conclusion.side(side))
    if (std::find(aux.begin(), aux.end(), o.id) == aux.end()) {
      e.occs.push_back({side, o.formula, {o.id}});
      e.main.push_back(false);
    }
}

void add_main(Expected& e, Side side, const Term& f, std::vector<OccId> parents) {
  e.occs.push_back({side, f, std::move(parents)});
  e.main.push_back(true);
}

// Conclusion for rules with one main formula.
Expected assemble(const std::vector<LKProof>& prem, const std::vector<std::vector<OccId>>& aux,
                  std::optional<Side> main_side, const Term* main, std::vector<OccId> parents) {
  Expected e;
  if (main_side == Side::Ant) add_main(e, Side::Ant, *main, parents);
  for (std::size_t i = 0; i < prem.size(); ++i) add_context(e, prem[i], aux[i], Side::Ant);
  for (std::size_t i = 0; i < prem.size(); ++i) add_context(e, prem[i], aux[i], Side::Suc);
  if (main_side == Side::Suc) add_main(e, Side::Suc, *main, parents);
  return e;
}

void expect_aux_count(const InferenceInput& in, std::initializer_list<std::size_t> counts) {
  std::size_t i = 0;
  for (std::size_t c : counts) {
    if (in.aux[i].size() != c)
      fail(Kind::MissingAux, std::string(rule_name(in.rule)) + ": expected " + std::to_string(c) +
                                 " auxiliary occurrence(s) in premise " + std::to_string(i + 1));
    ++i;
  }
}

const Term& given_main(const InferenceInput& in) {
  if (in.main.size() != 1) fail(Kind::Shape, std::string(rule_name(in.rule)) + ": main formula required");
  return in.main[0];
}

Expected quantifier(const InferenceInput& in, Side side, FormulaKind q, bool strong, std::optional<Term>& term) {
  expect_aux_count(in, {1});
  const auto& a = aux_in(in.premises[0], in.aux[0][0], side, in.rule);
  const Term& m = given_main(in);
  FormulaView v = view(m);
  if (v.kind != q)
    fail(Kind::Shape, std::string(rule_name(in.rule)) + ": main formula " + plain(m) + " has the wrong quantifier");
  if (in.term) {
    if (!(instantiate_body(v, *in.term) == a.formula))
      fail(Kind::Shape, std::string(rule_name(in.rule)) + ": " + plain(a.formula) + " is not the instance of " + plain(m) +
                            " at " + plain(*in.term));
    term = in.term;
  } else {
    InstanceMatcher mt(*v.var);
    if (!mt.match(v.left, a.formula))
      fail(Kind::Shape, std::string(rule_name(in.rule)) + ": " + plain(a.formula) + " is not an instance of " + plain(m));
    term = mt.witness;
  }
  Expected e = assemble(in.premises, in.aux, side, &m, {a.id});
  if (strong && term) {
    if (!term->is_var())
      fail(Kind::Eigenvariable, std::string(rule_name(in.rule)) + ": eigenvariable " + plain(*term) + " is not a variable");
    for (const auto& o : e.occs)
      if (occurs_free(*term, o.formula))
        fail(Kind::Eigenvariable, std::string(rule_name(in.rule)) + ": eigenvariable " + term->name() +
                                      " occurs in the conclusion formula " + plain(o.formula));
  }
  return e;
}

Expected derive(const InferenceInput& in, std::optional<Term>& term) {
  const RuleKind r = in.rule;
  const std::string rn = rule_name(r);
  int arity = rule_arity(r);
  if (arity >= 0 && in.premises.size() != static_cast<std::size_t>(arity))
    fail(Kind::Arity, rn + " expects " + std::to_string(arity) + " premise(s), got " + std::to_string(in.premises.size()));
  if (in.aux.size() != in.premises.size() && r != RuleKind::Generic)
    fail(Kind::MissingAux, rn + ": auxiliary selection does not match premise count");
  for (const auto& p : in.premises)
    if (!p) fail(Kind::Arity, rn + ": null premise");

  auto A = [&](std::size_t prem, std::size_t k, Side s) -> const FormulaOccurrence& {
    return aux_in(in.premises[prem], in.aux[prem][k], s, r);
  };

  switch (r) {
    case RuleKind::Axiom: {
      const Term& f = given_main(in);
      if (!is_atom(f)) fail(Kind::Shape, "ax: axiom formula " + plain(f) + " is not atomic");
      Expected e;
      add_main(e, Side::Ant, f, {});
      add_main(e, Side::Suc, f, {});
      return e;
    }
    case RuleKind::ProofLink:
    case RuleKind::AutoProp: {
      if (r == RuleKind::ProofLink && !in.link) fail(Kind::Link, "pLink: missing link target");
      Expected e;
      for (const auto& f : in.leaf.ant) add_main(e, Side::Ant, f, {});
      for (const auto& f : in.leaf.suc) add_main(e, Side::Suc, f, {});
      return e;
    }
    case RuleKind::Generic: {
      // Parents are guessed by formula identity; the node is flagged anyway.
      Expected e;
      std::set<std::pair<std::size_t, OccId>> used;
      auto guess = [&](Side s, const Term& f) {
        for (std::size_t i = 0; i < in.premises.size(); ++i)
          for (const auto& o : in.premises[i]->conclusion.side(s))
            if (!used.count({i, o.id}) && o.formula == f) {
              used.insert({i, o.id});
              return std::vector<OccId>{o.id};
            }
        return std::vector<OccId>{};
      };
      for (const auto& f : in.leaf.ant) {
        auto ps = guess(Side::Ant, f);
        e.occs.push_back({Side::Ant, f, ps});
        e.main.push_back(ps.empty());
      }
      for (const auto& f : in.leaf.suc) {
        auto ps = guess(Side::Suc, f);
        e.occs.push_back({Side::Suc, f, ps});
        e.main.push_back(ps.empty());
      }
      return e;
    }
    case RuleKind::Cut: {
      expect_aux_count(in, {1, 1});
      const auto& a = A(0, 0, Side::Suc);
      const auto& b = A(1, 0, Side::Ant);
      if (!(a.formula == b.formula))
        fail(Kind::Shape, "cut: formulas differ: " + plain(a.formula) + " vs " + plain(b.formula));
      return assemble(in.premises, in.aux, std::nullopt, nullptr, {});
    }
    case RuleKind::NegL:
    case RuleKind::NegR: {
      expect_aux_count(in, {1});
      bool left = r == RuleKind::NegL;
      const auto& a = A(0, 0, left ? Side::Suc : Side::Ant);
      Term m = neg(a.formula);
      return assemble(in.premises, in.aux, left ? Side::Ant : Side::Suc, &m, {a.id});
    }
    case RuleKind::AndL:
    case RuleKind::OrR: {
      bool left = r == RuleKind::AndL;
      Side s = left ? Side::Ant : Side::Suc;
      FormulaKind fk = left ? FormulaKind::And : FormulaKind::Or;
      if (in.aux.at(0).size() == 1) {
        // One-sided variant: main given, aux is one of its components.
        const Term& m = given_main(in);
        FormulaView v = view(m);
        const auto& a = A(0, 0, s);
        if (v.kind != fk || !(a.formula == v.left || a.formula == *v.right))
          fail(Kind::Shape, rn + ": " + plain(a.formula) + " is not a component of " + plain(m));
        return assemble(in.premises, in.aux, s, &m, {a.id});
      }
      expect_aux_count(in, {2});
      const auto& a = A(0, 0, s);
      const auto& b = A(0, 1, s);
      if (a.id == b.id) fail(Kind::MissingAux, rn + ": the two auxiliary occurrences coincide");
      Term m = left ? conj(a.formula, b.formula) : disj(a.formula, b.formula);
      return assemble(in.premises, in.aux, s, &m, {a.id, b.id});
    }
    case RuleKind::AndR:
    case RuleKind::OrL:
    case RuleKind::ImpL: {
      expect_aux_count(in, {1, 1});
      Side s0 = r == RuleKind::AndR ? Side::Suc : r == RuleKind::OrL ? Side::Ant : Side::Suc;
      Side s1 = r == RuleKind::AndR ? Side::Suc : Side::Ant;
      const auto& a = A(0, 0, s0);
      const auto& b = A(1, 0, s1);
      Term m = r == RuleKind::AndR ? conj(a.formula, b.formula)
               : r == RuleKind::OrL ? disj(a.formula, b.formula)
                                    : imp(a.formula, b.formula);
      return assemble(in.premises, in.aux, r == RuleKind::AndR ? Side::Suc : Side::Ant, &m, {a.id, b.id});
    }
    case RuleKind::ImpR: {
      expect_aux_count(in, {2});
      const auto& a = A(0, 0, Side::Ant);
      const auto& b = A(0, 1, Side::Suc);
      Term m = imp(a.formula, b.formula);
      return assemble(in.premises, in.aux, Side::Suc, &m, {a.id, b.id});
    }
    case RuleKind::ForAllL:
      return quantifier(in, Side::Ant, FormulaKind::All, false, term);
    case RuleKind::ForAllR:
      return quantifier(in, Side::Suc, FormulaKind::All, true, term);
    case RuleKind::ExistsL:
      return quantifier(in, Side::Ant, FormulaKind::Ex, true, term);
    case RuleKind::ExistsR:
      return quantifier(in, Side::Suc, FormulaKind::Ex, false, term);
    case RuleKind::WeakL:
    case RuleKind::WeakR: {
      expect_aux_count(in, {0});
      const Term& m = given_main(in);
      view(m);
      return assemble(in.premises, in.aux, r == RuleKind::WeakL ? Side::Ant : Side::Suc, &m, {});
    }
    case RuleKind::ContrL:
    case RuleKind::ContrR: {
      expect_aux_count(in, {2});
      Side s = r == RuleKind::ContrL ? Side::Ant : Side::Suc;
      const auto& a = A(0, 0, s);
      const auto& b = A(0, 1, s);
      if (a.id == b.id) fail(Kind::MissingAux, rn + ": the two auxiliary occurrences coincide");
      if (!(a.formula == b.formula))
        fail(Kind::Shape, rn + ": cannot contract different formulas " + plain(a.formula) + " and " + plain(b.formula));
      return assemble(in.premises, in.aux, s, &a.formula, {a.id, b.id});
    }
    case RuleKind::AndEqL1:
    case RuleKind::AndEqL3: {
      expect_aux_count(in, {1});
      const auto& a = A(0, 0, Side::Ant);
      const Term& m = given_main(in);
      FormulaView v = view(m);
      if (v.kind != FormulaKind::BigAnd) fail(Kind::Equivalence, rn + ": main formula " + plain(m) + " is not a BigAnd");
      bool base_form = *v.lower == *v.upper;
      if ((r == RuleKind::AndEqL3) != base_form)
        fail(Kind::Equivalence, rn + ": bounds of " + plain(m) +
                                    (base_form ? " coincide (use andEqL3)" : " differ (use andEqL1)"));
      if (!(big_and_normal(m) == big_and_normal(a.formula)))
        fail(Kind::Equivalence, rn + ": " + plain(a.formula) + " and " + plain(m) + " are not equivalent");
      return assemble(in.premises, in.aux, Side::Ant, &m, {a.id});
    }
  }
  fail(Kind::Shape, "unknown rule");
}

} // namespace

const char* rule_name(RuleKind k) { return info(k).name; }

std::optional<RuleKind> rule_from_name(std::string_view name) {
  for (const auto& r : kRules)
    if (name == r.name && r.kind != RuleKind::Generic) return r.kind;
  for (const auto& [n, k] : kAliases)
    if (name == n) return k;
  return std::nullopt;
}

int rule_arity(RuleKind k) { return info(k).arity; }

bool is_structural(RuleKind k) {
  return k == RuleKind::WeakL || k == RuleKind::WeakR || k == RuleKind::ContrL || k == RuleKind::ContrR;
}
bool is_strong_quantifier(RuleKind k) { return k == RuleKind::ForAllR || k == RuleKind::ExistsL; }
bool is_weak_quantifier(RuleKind k) { return k == RuleKind::ForAllL || k == RuleKind::ExistsR; }

const char* inference_error_kind_name(InferenceError::Kind k) {
  switch (k) {
    case Kind::Arity: return "arity";
    case Kind::MissingAux: return "missing-aux";
    case Kind::Shape: return "shape";
    case Kind::Eigenvariable: return "eigenvariable";
    case Kind::Equivalence: return "equivalence";
    case Kind::Link: return "link";
  }
  return "?";
}

const char* ProofNode::name() const { return rule == RuleKind::Generic && !label.empty() ? label.c_str() : rule_name(rule); }

std::vector<Term> ProofNode::main_formulas() const {
  std::vector<Term> r;
  for (OccId id : main)
    if (const auto* o = conclusion.find(id)) r.push_back(o->formula);
  return r;
}

LKProof build_inference(IdGen& gen, const InferenceInput& in) {
  std::optional<Term> term;
  Expected e = derive(in, term);
  auto node = std::make_shared<ProofNode>();
  node->rule = in.rule;
  node->premises = in.premises;
  node->aux = in.aux;
  node->term = term;
  node->link = in.link;
  node->label = in.label;
  node->param = in.param;
  for (std::size_t i = 0; i < e.occs.size(); ++i) {
    FormulaOccurrence o{gen.next(), e.occs[i].formula, e.occs[i].parents};
    if (e.main[i]) node->main.push_back(o.id);
    node->conclusion.side(e.occs[i].side).push_back(std::move(o));
  }
  return node;
}

std::vector<ExpectedOccurrence> expected_conclusion(const ProofNode& node) {
  InferenceInput in{node.rule, node.premises, node.aux, {}, node.term, node.link, node.conclusion.formulas(), node.label, node.param};
  if (node.rule == RuleKind::Axiom) {
    if (!node.conclusion.ant.empty()) in.main.push_back(node.conclusion.ant[0].formula);
  } else {
    in.main = node.main_formulas();
  }
  std::optional<Term> term;
  return derive(in, term).occs;
}

LKProof axiom(IdGen& gen, const Term& a) {
  InferenceInput in{RuleKind::Axiom, {}, {}, {a}, {}, {}, {}, {}, {}};
  return build_inference(gen, in);
}

namespace {
LKProof unary(IdGen& gen, RuleKind r, const LKProof& p, std::vector<OccId> aux, std::vector<Term> main = {},
              std::optional<Term> t = {}) {
  InferenceInput in{r, {p}, {std::move(aux)}, std::move(main), std::move(t), {}, {}, {}, {}};
  return build_inference(gen, in);
}
LKProof binary(IdGen& gen, RuleKind r, const LKProof& l, const LKProof& rp, OccId a, OccId b) {
  InferenceInput in{r, {l, rp}, {{a}, {b}}, {}, {}, {}, {}, {}, {}};
  return build_inference(gen, in);
}
} // namespace

LKProof cut(IdGen& gen, const LKProof& l, const LKProof& r, OccId a, OccId b) { return binary(gen, RuleKind::Cut, l, r, a, b); }
LKProof neg_l(IdGen& gen, const LKProof& p, OccId a) { return unary(gen, RuleKind::NegL, p, {a}); }
LKProof neg_r(IdGen& gen, const LKProof& p, OccId a) { return unary(gen, RuleKind::NegR, p, {a}); }
LKProof and_l(IdGen& gen, const LKProof& p, OccId a, OccId b) { return unary(gen, RuleKind::AndL, p, {a, b}); }
LKProof and_r(IdGen& gen, const LKProof& l, const LKProof& r, OccId a, OccId b) { return binary(gen, RuleKind::AndR, l, r, a, b); }
LKProof or_l(IdGen& gen, const LKProof& l, const LKProof& r, OccId a, OccId b) { return binary(gen, RuleKind::OrL, l, r, a, b); }
LKProof or_r(IdGen& gen, const LKProof& p, OccId a, OccId b) { return unary(gen, RuleKind::OrR, p, {a, b}); }
LKProof imp_l(IdGen& gen, const LKProof& l, const LKProof& r, OccId a, OccId b) { return binary(gen, RuleKind::ImpL, l, r, a, b); }
LKProof imp_r(IdGen& gen, const LKProof& p, OccId a, OccId b) { return unary(gen, RuleKind::ImpR, p, {a, b}); }
LKProof all_l(IdGen& gen, const LKProof& p, OccId a, const Term& m, std::optional<Term> t) {
  return unary(gen, RuleKind::ForAllL, p, {a}, {m}, std::move(t));
}
LKProof all_r(IdGen& gen, const LKProof& p, OccId a, const Term& m) { return unary(gen, RuleKind::ForAllR, p, {a}, {m}); }
LKProof ex_l(IdGen& gen, const LKProof& p, OccId a, const Term& m) { return unary(gen, RuleKind::ExistsL, p, {a}, {m}); }
LKProof ex_r(IdGen& gen, const LKProof& p, OccId a, const Term& m, std::optional<Term> t) {
  return unary(gen, RuleKind::ExistsR, p, {a}, {m}, std::move(t));
}
LKProof weak_l(IdGen& gen, const LKProof& p, const Term& f) { return unary(gen, RuleKind::WeakL, p, {}, {f}); }
LKProof weak_r(IdGen& gen, const LKProof& p, const Term& f) { return unary(gen, RuleKind::WeakR, p, {}, {f}); }
LKProof contr_l(IdGen& gen, const LKProof& p, OccId a, OccId b) { return unary(gen, RuleKind::ContrL, p, {a, b}); }
LKProof contr_r(IdGen& gen, const LKProof& p, OccId a, OccId b) { return unary(gen, RuleKind::ContrR, p, {a, b}); }
LKProof and_eq_l1(IdGen& gen, const LKProof& p, OccId a, const Term& m) { return unary(gen, RuleKind::AndEqL1, p, {a}, {m}); }
LKProof and_eq_l3(IdGen& gen, const LKProof& p, OccId a, const Term& m) { return unary(gen, RuleKind::AndEqL3, p, {a}, {m}); }

LKProof proof_link(IdGen& gen, const std::string& schema, std::optional<Term> arg, const FSequent& conclusion) {
  InferenceInput in{RuleKind::ProofLink, {}, {}, {}, {}, LinkData{schema, std::move(arg)}, conclusion, {}, {}};
  return build_inference(gen, in);
}

LKProof generic(IdGen& gen, const std::string& label, const FSequent& conclusion, const std::vector<LKProof>& premises) {
  InferenceInput in{RuleKind::Generic, premises, std::vector<std::vector<OccId>>(premises.size()), {}, {}, {}, conclusion, label, {}};
  return build_inference(gen, in);
}

LKProof replay(IdGen& gen, const ProofNode& node, const std::vector<LKProof>& premises,
               const std::vector<std::vector<OccId>>& aux) {
  InferenceInput in{node.rule, premises, aux, {}, node.term, node.link, node.conclusion.formulas(), node.label, node.param};
  switch (node.rule) {
    case RuleKind::Axiom:
      in.main.push_back(node.conclusion.ant.at(0).formula);
      break;
    case RuleKind::ForAllL:
    case RuleKind::ForAllR:
    case RuleKind::ExistsL:
    case RuleKind::ExistsR:
    case RuleKind::WeakL:
    case RuleKind::WeakR:
    case RuleKind::AndEqL1:
    case RuleKind::AndEqL3:
      in.main = node.main_formulas();
      break;
    case RuleKind::AndL:
    case RuleKind::OrR:
      if (aux.size() == 1 && aux[0].size() == 1) in.main = node.main_formulas();
      break;
    default:
      break;
  }
  return build_inference(gen, in);
}

void preorder(const LKProof& p, const std::function<void(const LKProof&)>& f) {
  f(p);
  for (const auto& q : p->premises) preorder(q, f);
}

std::size_t node_count(const LKProof& p) {
  std::size_t n = 0;
  preorder(p, [&](const LKProof&) { ++n; });
  return n;
}

std::size_t count_rule(const LKProof& p, RuleKind k) {
  std::size_t n = 0;
  preorder(p, [&](const LKProof& q) { n += q->rule == k; });
  return n;
}

bool is_cut_free(const LKProof& p) { return count_rule(p, RuleKind::Cut) == 0; }

bool has_only_atomic_cuts(const LKProof& p) {
  bool ok = true;
  preorder(p, [&](const LKProof& q) {
    if (q->rule == RuleKind::Cut) {
      const auto* o = q->premises[0]->conclusion.find(q->aux[0][0]);
      if (!o || !is_atom(o->formula)) ok = false;
    }
  });
  return ok;
}

bool has_links(const LKProof& p) { return count_rule(p, RuleKind::ProofLink) > 0; }

OccId max_id(const LKProof& p) {
  OccId m = 0;
  preorder(p, [&](const LKProof& q) {
    for (OccId id : q->conclusion.ids()) m = std::max(m, id);
  });
  return m;
}

std::optional<OccId> child_of(const ProofNode& p, OccId x) {
  for (const auto* side : {&p.conclusion.ant, &p.conclusion.suc})
    for (const auto& o : *side)
      if (std::find(o.parents.begin(), o.parents.end(), x) != o.parents.end()) return o.id;
  return std::nullopt;
}

LKProof map_formulas(const LKProof& p, const std::function<Term(const Term&)>& f) {
  auto n = std::make_shared<ProofNode>(*p);
  for (auto& q : n->premises) q = map_formulas(q, f);
  for (auto* side : {&n->conclusion.ant, &n->conclusion.suc})
    for (auto& o : *side) o.formula = f(o.formula);
  if (n->term) n->term = f(*n->term);
  if (n->link && n->link->arg) n->link->arg = f(*n->link->arg);
  return n;
}

namespace {

LKProof remap_node(const LKProof& p, const std::function<OccId(OccId)>& fresh) {
  auto n = std::make_shared<ProofNode>(*p);
  std::vector<std::map<OccId, OccId>> prem_maps;
  for (auto& q : n->premises) {
    auto nq = remap_node(q, fresh);
    std::map<OccId, OccId> m;
    auto old_ids = q->conclusion.ids();
    auto new_ids = nq->conclusion.ids();
    for (std::size_t i = 0; i < old_ids.size(); ++i) m[old_ids[i]] = new_ids[i];
    prem_maps.push_back(std::move(m));
    q = nq;
  }
  auto translate = [&](OccId x) {
    for (const auto& m : prem_maps)
      if (auto it = m.find(x); it != m.end()) return it->second;
    return x;
  };
  for (std::size_t i = 0; i < n->aux.size() && i < prem_maps.size(); ++i)
    for (auto& a : n->aux[i])
      if (auto it = prem_maps[i].find(a); it != prem_maps[i].end()) a = it->second;
  std::map<OccId, OccId> own;
  for (auto* side : {&n->conclusion.ant, &n->conclusion.suc})
    for (auto& o : *side) {
      for (auto& par : o.parents) par = translate(par);
      OccId nid = fresh(o.id);
      own[o.id] = nid;
      o.id = nid;
    }
  for (auto& m : n->main) m = own.count(m) ? own[m] : m;
  return n;
}
} // namespace

LKProof refresh(const LKProof& p, IdGen& gen) {
  return remap_node(p, [&](OccId) { return gen.next(); });
}

LKProof renumber(const LKProof& p) {
  IdGen gen;
  return refresh(p, gen);
}

LKProof relabel_root(const LKProof& p, const std::vector<std::pair<OccId, OccId>>& rename) {
  auto n = std::make_shared<ProofNode>(*p);
  auto tr = [&](OccId x) {
    for (const auto& [a, b] : rename)
      if (a == x) return b;
    return x;
  };
  for (auto* side : {&n->conclusion.ant, &n->conclusion.suc})
    for (auto& o : *side) o.id = tr(o.id);
  for (auto& m : n->main) m = tr(m);
  return n;
}

namespace {

struct Pos {
  std::size_t prem;
  int side;
  std::size_t idx;
  bool operator==(const Pos& o) const { return prem == o.prem && side == o.side && idx == o.idx; }
};

std::optional<Pos> position(const Sequent& s, OccId id, std::size_t prem) {
  for (std::size_t i = 0; i < s.ant.size(); ++i)
    if (s.ant[i].id == id) return Pos{prem, 0, i};
  for (std::size_t i = 0; i < s.suc.size(); ++i)
    if (s.suc[i].id == id) return Pos{prem, 1, i};
  return std::nullopt;
}

std::optional<Pos> premise_position(const ProofNode& n, OccId id) {
  for (std::size_t i = 0; i < n.premises.size(); ++i)
    if (auto p = position(n.premises[i]->conclusion, id, i)) return p;
  return std::nullopt;
}

bool same_terms(const std::optional<Term>& a, const std::optional<Term>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || *a == *b;
}

} // namespace

bool same_shape(const LKProof& a, const LKProof& b) {
  if (a->rule != b->rule || a->label != b->label || a->param != b->param) return false;
  if (a->premises.size() != b->premises.size()) return false;
  if (!same_terms(a->term, b->term)) return false;
  if (a->link.has_value() != b->link.has_value()) return false;
  if (a->link && (a->link->schema != b->link->schema || !same_terms(a->link->arg, b->link->arg))) return false;
  const auto& ca = a->conclusion;
  const auto& cb = b->conclusion;
  if (ca.ant.size() != cb.ant.size() || ca.suc.size() != cb.suc.size()) return false;
  auto occ_eq = [&](const FormulaOccurrence& x, const FormulaOccurrence& y) {
    if (!(x.formula == y.formula) || x.parents.size() != y.parents.size()) return false;
    for (std::size_t i = 0; i < x.parents.size(); ++i)
      if (!(premise_position(*a, x.parents[i]) == premise_position(*b, y.parents[i]))) return false;
    return true;
  };
  for (std::size_t i = 0; i < ca.ant.size(); ++i)
    if (!occ_eq(ca.ant[i], cb.ant[i])) return false;
  for (std::size_t i = 0; i < ca.suc.size(); ++i)
    if (!occ_eq(ca.suc[i], cb.suc[i])) return false;
  if (a->main.size() != b->main.size()) return false;
  for (std::size_t i = 0; i < a->main.size(); ++i)
    if (!(position(ca, a->main[i], 0) == position(cb, b->main[i], 0))) return false;
  if (a->aux.size() != b->aux.size()) return false;
  for (std::size_t i = 0; i < a->aux.size(); ++i) {
    if (a->aux[i].size() != b->aux[i].size()) return false;
    for (std::size_t j = 0; j < a->aux[i].size(); ++j)
      if (!(premise_position(*a, a->aux[i][j]) == premise_position(*b, b->aux[i][j]))) return false;
  }
  for (std::size_t i = 0; i < a->premises.size(); ++i)
    if (!same_shape(a->premises[i], b->premises[i])) return false;
  return true;
}

} // namespace proofbench::calculus
