#include "proofbench/parsers/xml.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "proofbench/calculus/autoprop.hpp"
#include "proofbench/kernel/formula.hpp"
#include "proofbench/parsers/formula.hpp"

namespace proofbench::parsers {

using namespace calculus;
using kernel::Term;
namespace pt = boost::property_tree;

namespace {

const std::string kAttr = "<xmlattr>";

bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

// Line/column of the n-th <conclusion> content in the raw text.
class ConclusionLocator {
public:
  ConclusionLocator(std::string_view text, std::string file) : text_(text), file_(std::move(file)) {}

  SourceSpan next() {
    SourceSpan s{file_, 1, 1, 0, 0};
    for (;;) {
      std::size_t p = text_.find("<conclusion", pos_);
      if (p == std::string_view::npos) return s;
      std::size_t gt = text_.find('>', p);
      if (gt == std::string_view::npos) return s;
      pos_ = gt + 1;
      char after = text_[p + 11];
      if (after != '>' && after != '/' && !std::isspace(static_cast<unsigned char>(after))) continue;
      if (text_[gt - 1] == '/') return at(gt + 1);
      std::size_t start = gt + 1;
      if (text_.compare(start, 9, "<![CDATA[") == 0) start += 9;
      return at(start);
    }
  }

private:
  SourceSpan at(std::size_t off) {
    while (scanned_ < off) {
      if (text_[scanned_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++scanned_;
    }
    return SourceSpan{file_, line_, col_, off, 0};
  }

  std::string_view text_;
  std::string file_;
  std::size_t pos_ = 0, scanned_ = 0, line_ = 1, col_ = 1;
};

struct XRule {
  std::string path;
  std::string type, symbol, param;
  RawSequent conclusion;
  struct Child {
    bool link;
    std::size_t index; // into rules or links
  };
  std::vector<Child> children;
};

struct XLink {
  std::string path, symbol;
};

struct XProof {
  std::string path, symbol, calculus;
  std::size_t root;
};

struct Document {
  std::vector<XProof> proofs;
  std::vector<XRule> rules;
  std::vector<XLink> links;
};

class Walker {
public:
  Walker(Document& d, ConclusionLocator& loc) : doc_(d), loc_(loc) {}

  void top(const pt::ptree& t) {
    const pt::ptree* root = nullptr;
    for (const auto& [k, v] : t) {
      if (k == "prooftrees" && !root) root = &v;
      else throw StructureError("/", "unexpected top-level element <" + k + ">, expected a single <prooftrees>");
    }
    if (!root) throw StructureError("/", "missing <prooftrees> root element");
    attributes(*root, "/prooftrees", {}, {});
    text_free(*root, "/prooftrees");
    std::size_t n = 0;
    for (const auto& [k, v] : *root) {
      if (k == kAttr) continue;
      if (k != "proof") throw StructureError("/prooftrees", "unexpected element <" + k + ">, expected <proof>");
      proof(v, "/prooftrees/proof[" + std::to_string(++n) + "]");
    }
  }

private:
  Document& doc_;
  ConclusionLocator& loc_;

  std::map<std::string, std::string> attributes(const pt::ptree& t, const std::string& path,
                                                std::set<std::string> required, std::set<std::string> implied) {
    std::map<std::string, std::string> out;
    if (auto a = t.get_child_optional(kAttr))
      for (const auto& [k, v] : *a) {
        if (!required.count(k) && !implied.count(k)) throw StructureError(path, "undeclared attribute '" + k + "'", k);
        out[k] = v.data();
      }
    for (const auto& r : required)
      if (!out.count(r)) throw StructureError(path, "missing required attribute '" + r + "'", r);
    return out;
  }

  void text_free(const pt::ptree& t, const std::string& path) {
    if (!blank(t.data())) throw StructureError(path, "unexpected character data");
  }

  void proof(const pt::ptree& t, const std::string& path) {
    auto at = attributes(t, path, {"symbol"}, {"calculus"});
    text_free(t, path);
    std::optional<std::size_t> root;
    for (const auto& [k, v] : t) {
      if (k == kAttr) continue;
      if (k != "rule") throw StructureError(path, "unexpected element <" + k + ">, expected <rule>");
      if (root) throw StructureError(path, "a proof has exactly one root <rule>");
      root = rule(v, path + "/rule");
    }
    if (!root) throw StructureError(path, "missing root <rule>");
    doc_.proofs.push_back({path, at["symbol"], at["calculus"], *root});
  }

  std::size_t rule(const pt::ptree& t, const std::string& path) {
    auto at = attributes(t, path, {"type"}, {"symbol", "param"});
    text_free(t, path);
    XRule r;
    r.path = path;
    r.type = at["type"];
    r.symbol = at["symbol"];
    r.param = at["param"];
    bool seen = false;
    std::size_t nr = 0, nl = 0;
    for (const auto& [k, v] : t) {
      if (k == kAttr) continue;
      if (k == "conclusion") {
        if (seen) throw StructureError(path, "more than one <conclusion>");
        if (!r.children.empty()) throw StructureError(path, "<conclusion> must come before premises");
        seen = true;
        if (!v.empty()) throw StructureError(path + "/conclusion", "<conclusion> holds text only");
        SourceSpan origin = loc_.next();
        TokenCursor c(tokenize(v.data(), origin));
        r.conclusion = c.sequent();
        if (!c.at(Tok::End)) c.error("end of conclusion");
      } else if (k == "rule") {
        if (!seen) throw StructureError(path, "<conclusion> must be the first child of <rule>");
        r.children.push_back({false, rule(v, path + "/rule[" + std::to_string(++nr) + "]")});
      } else if (k == "prooflink") {
        if (!seen) throw StructureError(path, "<conclusion> must be the first child of <rule>");
        std::string lp = path + "/prooflink[" + std::to_string(++nl) + "]";
        auto la = attributes(v, lp, {"symbol"}, {});
        if (!blank(v.data()) || std::any_of(v.begin(), v.end(), [](const auto& c) { return c.first != kAttr; }))
          throw StructureError(lp, "<prooflink> must be empty");
        doc_.links.push_back({lp, la["symbol"]});
        r.children.push_back({true, doc_.links.size() - 1});
      } else {
        throw StructureError(path, "unexpected element <" + k + ">");
      }
    }
    if (!seen) throw StructureError(path, "missing <conclusion>");
    doc_.rules.push_back(std::move(r));
    return doc_.rules.size() - 1;
  }
};

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

std::optional<Side> main_side(RuleKind k) {
  switch (k) {
    case RuleKind::WeakL:
    case RuleKind::ForAllL:
    case RuleKind::ExistsL:
    case RuleKind::AndEqL1:
    case RuleKind::AndEqL3: return Side::Ant;
    case RuleKind::WeakR:
    case RuleKind::ForAllR:
    case RuleKind::ExistsR: return Side::Suc;
    default: return std::nullopt;
  }
}

class Builder {
public:
  Builder(const Document& d, Typer& typer) : doc_(d), typer_(typer) {
    for (std::size_t i = 0; i < d.proofs.size(); ++i)
      if (!by_name_.emplace(d.proofs[i].symbol, i).second)
        throw StructureError(d.proofs[i].path, "duplicate proof symbol '" + d.proofs[i].symbol + "'", "symbol");
  }

  LKProof proof(std::size_t i) {
    if (auto it = built_.find(i); it != built_.end()) return it->second;
    if (active_.count(i)) throw StructureError(doc_.proofs[i].path, "cyclic prooflink through '" + doc_.proofs[i].symbol + "'");
    active_.insert(i);
    IdGen gen;
    LKProof p = renumber(rule(doc_.proofs[i].root, gen));
    active_.erase(i);
    return built_[i] = p;
  }

private:
  const Document& doc_;
  Typer& typer_;
  std::map<std::string, std::size_t> by_name_;
  std::map<std::size_t, LKProof> built_;
  std::set<std::size_t> active_;

  LKProof link(const XLink& l, IdGen& gen) {
    auto it = by_name_.find(l.symbol);
    if (it == by_name_.end()) throw StructureError(l.path, "prooflink to unknown proof '" + l.symbol + "'", "symbol");
    return proof_link(gen, l.symbol, std::nullopt, proof(it->second)->conclusion.formulas());
  }

  LKProof rule(std::size_t idx, IdGen& gen) {
    const XRule& r = doc_.rules[idx];
    std::vector<LKProof> prem;
    for (const auto& c : r.children) prem.push_back(c.link ? link(doc_.links[c.index], gen) : rule(c.index, gen));
    FSequent want = typer_.sequent(r.conclusion);
    if (auto k = rule_from_name(r.type))
      if (auto p = typed(*k, prem, want, gen)) return *p;
    return generic(gen, r.type, want, prem);
  }

  // Tries every choice of auxiliary occurrences (and main formula where
  // the rule needs one) until the rule reproduces the given conclusion.
  std::optional<LKProof> typed(RuleKind k, const std::vector<LKProof>& prem, const FSequent& want, IdGen& gen) {
    int arity = rule_arity(k);
    if (arity >= 0 && prem.size() != static_cast<std::size_t>(arity)) return std::nullopt;
    if (k == RuleKind::Axiom) {
      if (want.ant.size() == 1 && want.suc.size() == 1 && want.ant[0] == want.suc[0] && kernel::is_atom(want.ant[0]))
        return axiom(gen, want.ant[0]);
      return std::nullopt;
    }
    if (k == RuleKind::AutoProp) {
      try {
        auto res = autoprop(want, gen);
        if (auto* p = std::get_if<LKProof>(&res)) return *p;
      } catch (const NotPropositional&) {
      }
      return std::nullopt;
    }
    if (k == RuleKind::ProofLink) return std::nullopt;

    std::vector<Term> mains;
    if (auto s = main_side(k)) mains = s == Side::Ant ? want.ant : want.suc;
    auto plan = aux_plan(k);
    InferenceInput in{k, prem, std::vector<std::vector<OccId>>(prem.size()), {}, {}, {}, {}, {}, {}};
    std::optional<LKProof> found;
    auto attempt = [&] {
      auto try_main = [&](const std::vector<Term>& m) {
        in.main = m;
        try {
          IdGen probe(gen.peek());
          LKProof p = build_inference(probe, in);
          if (p->conclusion.formulas() == want) {
            found = build_inference(gen, in);
            return true;
          }
        } catch (const InferenceError&) {
        }
        return false;
      };
      if (!main_side(k)) return try_main({});
      for (const auto& m : mains)
        if (try_main({m})) return true;
      return false;
    };
    std::function<bool(std::size_t)> choose = [&](std::size_t j) {
      if (j == plan.size()) return attempt();
      auto& chosen = in.aux[plan[j].premise];
      for (const auto& o : prem[plan[j].premise]->conclusion.side(plan[j].side)) {
        if (std::find(chosen.begin(), chosen.end(), o.id) != chosen.end()) continue;
        chosen.push_back(o.id);
        if (choose(j + 1)) return true;
        chosen.pop_back();
      }
      return false;
    };
    choose(0);
    return found;
  }
};

} // namespace

ProofDatabase parse_simple_xml(std::string_view text, const std::string& file) {
  pt::ptree tree;
  try {
    std::istringstream in{std::string(text)};
    pt::read_xml(in, tree, pt::xml_parser::no_comments);
  } catch (const pt::xml_parser_error& e) {
    throw StructureError("/", "malformed XML at line " + std::to_string(e.line()) + ": " + e.message());
  }
  Document doc;
  ConclusionLocator loc(text, file);
  Walker(doc, loc).top(tree);

  Typer typer;
  for (const auto& r : doc.rules) typer.add(r.conclusion);
  typer.solve();

  Builder b(doc, typer);
  ProofDatabase db;
  for (std::size_t i = 0; i < doc.proofs.size(); ++i)
    db.add(DbEntry{doc.proofs[i].symbol, b.proof(i), std::nullopt, doc.proofs[i].calculus});
  return db;
}

} // namespace proofbench::parsers
