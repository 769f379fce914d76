#include "proofbench/parsers/hlks.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "proofbench/calculus/autoprop.hpp"
#include "proofbench/calculus/check.hpp"
#include "proofbench/kernel/formula.hpp"
#include "proofbench/kernel/param.hpp"
#include "proofbench/kernel/render.hpp"
#include "proofbench/kernel/substitution.hpp"
#include "proofbench/parsers/formula.hpp"

namespace proofbench::parsers {

using namespace calculus;
using namespace kernel;

namespace {

// Argument shapes: I = premise label, F = formula, S = sequent,
// L = link target `(name, param)` followed by a sequent.
struct RuleSig {
  const char* name;
  RuleKind kind;
  const char* args;
};

constexpr RuleSig kSigs[] = {
    {"ax", RuleKind::Axiom, "S"},          {"autoprop", RuleKind::AutoProp, "S"}, {"pLink", RuleKind::ProofLink, "L"},
    {"cut", RuleKind::Cut, "IIF"},         {"negL", RuleKind::NegL, "IF"},        {"negR", RuleKind::NegR, "IF"},
    {"andL", RuleKind::AndL, "IFF"},       {"andR", RuleKind::AndR, "IIFF"},      {"orL", RuleKind::OrL, "IIFF"},
    {"orR", RuleKind::OrR, "IFF"},         {"impL", RuleKind::ImpL, "IIFF"},      {"impR", RuleKind::ImpR, "IFF"},
    {"allL", RuleKind::ForAllL, "IFF"},    {"allR", RuleKind::ForAllR, "IFF"},    {"exL", RuleKind::ExistsL, "IFF"},
    {"exR", RuleKind::ExistsR, "IFF"},     {"weakL", RuleKind::WeakL, "IF"},      {"weakR", RuleKind::WeakR, "IF"},
    {"contrL", RuleKind::ContrL, "IF"},    {"contrR", RuleKind::ContrR, "IF"},    {"andEqL1", RuleKind::AndEqL1, "IFF"},
    {"andEqL3", RuleKind::AndEqL3, "IFF"},
};

const RuleSig* find_sig(const std::string& name) {
  for (const auto& s : kSigs)
    if (name == s.name) return &s;
  return nullptr;
}

struct Ref {
  std::string label;
  SourceSpan span;
};

struct RawLine {
  Ref label;
  const RuleSig* sig = nullptr;
  SourceSpan rule_span;
  std::vector<Ref> refs;
  std::vector<RawFormula> formulas;
  std::optional<RawSequent> seq;
  Ref link;
  std::optional<RawTerm> link_arg;
};

struct RawBlock {
  std::vector<RawLine> lines;
  SourceSpan span;
};

struct RawProof {
  Ref name;
  RawSequent end;
  std::optional<RawBlock> base, step;
};

struct RawDefine {
  Ref name;
  std::vector<std::string> params;
  RawFormula body;
};

class HlksReader {
public:
  explicit HlksReader(TokenCursor& c) : c_(c) {}

  void document(std::vector<RawProof>& proofs, std::vector<RawDefine>& defs) {
    if (c_.at(Tok::End)) c_.error("'proof'");
    while (!c_.at(Tok::End)) {
      if (c_.at_ident("define")) {
        defs.push_back(define());
      } else {
        proofs.push_back(proof());
      }
    }
  }

private:
  TokenCursor& c_;

  Ref ident(const char* what) {
    Token t = c_.expect(Tok::Ident, what);
    return {t.text, t.span};
  }

  RawDefine define() {
    c_.expect_ident("define");
    RawDefine d;
    d.name = ident("a definition name");
    if (c_.at(Tok::LParen)) {
      c_.next();
      d.params.push_back(ident("a parameter").label);
      while (c_.at(Tok::Comma)) {
        c_.next();
        d.params.push_back(ident("a parameter").label);
      }
      c_.expect(Tok::RParen, "',' or ')'");
    }
    c_.expect(Tok::Assign);
    d.body = c_.formula();
    return d;
  }

  RawProof proof() {
    c_.expect_ident("proof");
    RawProof p;
    p.name = ident("a proof name");
    c_.expect_ident("proves");
    p.end = c_.sequent();
    if (c_.at(Tok::LBrace)) {
      p.base = block();
      return p;
    }
    c_.expect_ident("base");
    p.base = block();
    if (c_.at_ident("step")) {
      c_.next();
      p.step = block();
    }
    return p;
  }

  RawBlock block() {
    RawBlock b;
    b.span = c_.expect(Tok::LBrace).span;
    while (!c_.at(Tok::RBrace)) b.lines.push_back(line());
    c_.next();
    return b;
  }

  Ref label_token(const char* what) {
    if (c_.at(Tok::Number) || c_.at(Tok::Ident)) {
      Token t = c_.next();
      return {t.text, t.span};
    }
    c_.error(what);
  }

  RawLine line() {
    RawLine l;
    l.label = label_token("a line label or '}'");
    c_.expect(Tok::Colon);
    Token rule = c_.expect(Tok::Ident, "a rule name");
    l.rule_span = rule.span;
    l.sig = find_sig(rule.text);
    if (!l.sig) {
      if (rule.text == "andEqL2") throw SemanticError(rule.span, "rule andEqL2 is reserved but not implemented");
      throw SemanticError(rule.span, "unknown rule '" + rule.text + "'");
    }
    c_.expect(Tok::LParen);
    bool first = true;
    for (const char* a = l.sig->args; *a; ++a) {
      if (!first) c_.expect(Tok::Comma);
      first = false;
      switch (*a) {
        case 'I': l.refs.push_back(label_token("a premise label")); break;
        case 'F': l.formulas.push_back(c_.formula()); break;
        case 'S': l.seq = c_.sequent(); break;
        case 'L': {
          c_.expect(Tok::LParen);
          l.link = ident("a proof name");
          c_.expect(Tok::Comma);
          l.link_arg = c_.term();
          c_.expect(Tok::RParen);
          l.seq = c_.sequent();
          break;
        }
      }
    }
    c_.expect(Tok::RParen, *l.sig->args == 'I' && l.sig->args[1] ? "','" : "')'");
    return l;
  }
};

// Which side of which premise each formula argument lives on.
struct AuxPlan {
  std::size_t premise;
  Side side;
};

std::vector<AuxPlan> aux_plan(RuleKind k) {
  using S = Side;
  switch (k) {
    case RuleKind::Cut: return {{0, S::Suc}, {1, S::Ant}};
    case RuleKind::NegL: return {{0, S::Suc}};
    case RuleKind::NegR: return {{0, S::Ant}};
    case RuleKind::AndL: return {{0, S::Ant}, {0, S::Ant}};
    case RuleKind::OrR: return {{0, S::Suc}, {0, S::Suc}};
    case RuleKind::AndR: return {{0, S::Suc}, {1, S::Suc}};
    case RuleKind::OrL: return {{0, S::Ant}, {1, S::Ant}};
    case RuleKind::ImpL: return {{0, S::Suc}, {1, S::Ant}};
    case RuleKind::ImpR: return {{0, S::Ant}, {0, S::Suc}};
    case RuleKind::ForAllL:
    case RuleKind::ExistsL:
    case RuleKind::AndEqL1:
    case RuleKind::AndEqL3: return {{0, S::Ant}};
    case RuleKind::ForAllR:
    case RuleKind::ExistsR: return {{0, S::Suc}};
    case RuleKind::ContrL: return {{0, S::Ant}, {0, S::Ant}};
    case RuleKind::ContrR: return {{0, S::Suc}, {0, S::Suc}};
    default: return {};
  }
}

struct LinkSite {
  const ProofNode* node;
  SourceSpan span;
};

class BlockBuilder {
public:
  BlockBuilder(const RawBlock& b, Typer& typer, IdGen& gen, std::vector<LinkSite>& links)
      : block_(b), typer_(typer), gen_(gen), links_(links) {
    for (std::size_t i = 0; i < b.lines.size(); ++i) {
      const auto& l = b.lines[i];
      if (!index_.emplace(l.label.label, i).second)
        throw SemanticError(l.label.span, "label '" + l.label.label + "' defined twice in this block");
    }
  }

  std::pair<LKProof, SourceSpan> root() {
    auto it = index_.find("root");
    if (it == index_.end()) throw SemanticError(block_.span, "block has no 'root' line");
    return {get(Ref{"root", block_.lines[it->second].label.span}), block_.lines[it->second].label.span};
  }

private:
  const RawBlock& block_;
  Typer& typer_;
  IdGen& gen_;
  std::vector<LinkSite>& links_;
  std::map<std::string, std::size_t> index_;
  std::map<std::string, LKProof> done_;
  std::vector<std::string> active_;

  LKProof get(const Ref& r) {
    auto it = index_.find(r.label);
    if (it == index_.end()) throw SemanticError(r.span, "dangling reference to label '" + r.label + "'");
    if (auto d = done_.find(r.label); d != done_.end()) return refresh(d->second, gen_);
    if (std::find(active_.begin(), active_.end(), r.label) != active_.end())
      throw SemanticError(r.span, "label '" + r.label + "' depends on itself");
    active_.push_back(r.label);
    LKProof p = build(block_.lines[it->second]);
    active_.pop_back();
    done_[r.label] = p;
    return p;
  }

  LKProof build(const RawLine& l) {
    RuleKind k = l.sig->kind;
    try {
      switch (k) {
        case RuleKind::Axiom:
          return axiom_line(l);
        case RuleKind::AutoProp:
          return autoprop_line(l, typer_.sequent(*l.seq));
        case RuleKind::ProofLink: {
          LKProof p = proof_link(gen_, l.link.label, typer_.param_term(*l.link_arg), typer_.sequent(*l.seq));
          links_.push_back({p.get(), l.link.span});
          return p;
        }
        default:
          break;
      }
      std::vector<LKProof> prem;
      for (const auto& r : l.refs) prem.push_back(get(r));
      std::vector<Term> fs;
      for (const auto& f : l.formulas) fs.push_back(typer_.formula(f));

      InferenceInput in{k, prem, std::vector<std::vector<OccId>>(prem.size()), {}, {}, {}, {}, {}, {}};
      auto plan = aux_plan(k);
      std::size_t nf = 0;
      if (k == RuleKind::Cut || k == RuleKind::ContrL || k == RuleKind::ContrR) {
        // One formula names both auxiliary occurrences.
        select(in, l, plan[0], fs[0], 0);
        select(in, l, plan[1], fs[0], 0);
        nf = 1;
      } else {
        for (std::size_t j = 0; j < plan.size(); ++j) select(in, l, plan[j], fs[j], j);
        nf = plan.size();
      }
      for (std::size_t j = nf; j < fs.size(); ++j) in.main.push_back(fs[j]);
      return build_inference(gen_, in);
    } catch (const InferenceError& e) {
      throw SemanticError(l.rule_span, e.what());
    } catch (const TypeError& e) {
      throw SemanticError(l.rule_span, e.what());
    }
  }

  void select(InferenceInput& in, const RawLine& l, const AuxPlan& plan, const Term& f, std::size_t fi) {
    const auto& occs = in.premises[plan.premise]->conclusion.side(plan.side);
    auto& chosen = in.aux[plan.premise];
    for (const auto& o : occs)
      if (o.formula == f && std::find(chosen.begin(), chosen.end(), o.id) == chosen.end()) {
        chosen.push_back(o.id);
        return;
      }
    const SourceSpan& where = fi < l.formulas.size() ? l.formulas[fi].span : l.rule_span;
    throw SemanticError(where, "formula " + plain(f) + " not found in the " +
                                   (plan.side == Side::Ant ? "antecedent" : "succedent") + " of premise '" +
                                   l.refs[plan.premise].label + "'");
  }

  LKProof axiom_line(const RawLine& l) {
    FSequent s = typer_.sequent(*l.seq);
    if (s.ant.size() == 1 && s.suc.size() == 1 && s.ant[0] == s.suc[0] && is_atom(s.ant[0])) return axiom(gen_, s.ant[0]);
    // Non-atomic axioms are expanded into atomic ones.
    return autoprop_line(l, s);
  }

  LKProof autoprop_line(const RawLine& l, const FSequent& s) {
    try {
      auto r = calculus::autoprop(s, gen_);
      if (auto* p = std::get_if<LKProof>(&r)) return *p;
      std::string cm;
      for (const auto& [a, v] : std::get<Countermodel>(r).values) cm += (cm.empty() ? "" : ", ") + a + "=" + (v ? "1" : "0");
      throw SemanticError(l.rule_span, "sequent " + plain(s) + " is not provable (countermodel " + cm + ")");
    } catch (const NotPropositional& e) {
      throw SemanticError(l.rule_span, e.what());
    }
  }
};

std::vector<Term> free_params(const FSequent& s) {
  std::vector<Term> out;
  for (const auto* side : {&s.ant, &s.suc})
    for (const auto& f : *side)
      for (const auto& v : free_vars(f))
        if (v.type() == Type::param() && std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  return out;
}

FSequent subst_seq(const FSequent& s, const Substitution& sub) {
  FSequent r;
  for (const auto& f : s.ant) r.ant.push_back(substitute(f, sub));
  for (const auto& f : s.suc) r.suc.push_back(substitute(f, sub));
  return r;
}

std::optional<std::string> link_param_name(const RawBlock& b, const std::string& self) {
  for (const auto& l : b.lines)
    if (l.sig->kind == RuleKind::ProofLink && l.link.label == self && l.link_arg && l.link_arg->kind == RawTerm::Kind::Ident)
      return l.link_arg->name;
  return std::nullopt;
}

} // namespace

ProofDatabase parse_hlks(std::string_view text, const std::string& file) {
  TokenCursor cursor(tokenize(text, SourceSpan{file, 1, 1, 0, 0}));
  std::vector<RawProof> raws;
  std::vector<RawDefine> defines;
  HlksReader(cursor).document(raws, defines);

  Typer typer;
  for (const auto& d : defines) typer.add(d.body);
  for (const auto& p : raws) {
    typer.add(p.end);
    for (const auto* b : {&p.base, &p.step}) {
      if (!*b) continue;
      for (const auto& l : (*b)->lines) {
        if (l.seq) typer.add(*l.seq);
        for (const auto& f : l.formulas) typer.add(f);
        if (l.link_arg) typer.add_term(*l.link_arg, true);
      }
    }
    if (p.step)
      if (auto n = link_param_name(*p.step, p.name.label)) typer.add_param_name(*n);
  }
  typer.solve();

  ProofDatabase db;
  for (const auto& d : defines) {
    Term body = typer.formula(d.body);
    std::vector<Term> vars;
    for (const auto& n : d.params)
      vars.push_back(typer.is_param(n) ? param_var(n) : Term::var(n, Type::individual()));
    Term lam = body;
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) lam = Term::abs(*it, lam);
    try {
      db.definitions.add(Term::constant(d.name.label, lam.type()), lam);
    } catch (const DefinitionError& e) {
      throw SemanticError(d.name.span, e.what());
    }
  }

  std::vector<LinkSite> links;
  for (const auto& raw : raws) {
    if (db.find(raw.name.label)) throw SemanticError(raw.name.span, "proof '" + raw.name.label + "' defined twice");
    FSequent end = typer.sequent(raw.end);
    IdGen gen;
    auto check_root = [&](const LKProof& p, const SourceSpan& at, const FSequent& want, const char* what) {
      if (!(p->conclusion.formulas() == want))
        throw SemanticError(at, std::string(what) + " proves " + plain(p->conclusion) + " but " + plain(want) +
                                    " is required");
    };
    if (!raw.step) {
      auto [root, at] = BlockBuilder(*raw.base, typer, gen, links).root();
      check_root(root, at, end, "proof");
      db.add(DbEntry{raw.name.label, root, std::nullopt, {}});
      continue;
    }
    auto params = free_params(end);
    Term k = param_var("k");
    if (params.size() > 1)
      throw SemanticError(raw.name.span, "end-sequent of schema '" + raw.name.label + "' has more than one parameter");
    if (params.size() == 1) k = params[0];
    else if (auto n = link_param_name(*raw.step, raw.name.label)) k = param_var(*n);

    auto [base, base_at] = BlockBuilder(*raw.base, typer, gen, links).root();
    check_root(base, base_at, subst_seq(end, Substitution{{k, param_zero()}}), "base");
    auto [step, step_at] = BlockBuilder(*raw.step, typer, gen, links).root();
    check_root(step, step_at, subst_seq(end, Substitution{{k, param_succ(k)}}), "step");
    db.add(DbEntry{raw.name.label, nullptr, ProofSchema{raw.name.label, k, end, base, step}, {}});
  }

  for (const auto& site : links) {
    const LinkData& l = *site.node->link;
    const DbEntry* e = db.find(l.schema);
    if (!e) throw SemanticError(site.span, "link to unknown proof '" + l.schema + "'");
    if (!e->schema) throw SemanticError(site.span, "'" + l.schema + "' is not a schema");
    FSequent want = schema_end_at(*e->schema, *l.arg);
    if (!(want == site.node->conclusion.formulas()))
      throw SemanticError(site.span, "link conclusion " + plain(site.node->conclusion) + " does not match " + plain(want));
  }
  return db;
}

} // namespace proofbench::parsers
