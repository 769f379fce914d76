#include "proofbench/exporter/export.hpp"

#include <cctype>
#include <map>
#include <set>

#include "proofbench/kernel/formula.hpp"
#include "proofbench/kernel/param.hpp"
#include "proofbench/kernel/render.hpp"

namespace proofbench::exporter {

using calculus::FSequent;
using calculus::OccId;
using calculus::ProofNode;
using calculus::RuleKind;
using calculus::Side;
using kernel::Term;
using kernel::Type;

const char* media_type(ExportFormat f) {
  switch (f) {
    case ExportFormat::LatexProof:
    case ExportFormat::LatexClauses: return "text/x-latex";
    case ExportFormat::TptpCnf: return "text/plain";
    case ExportFormat::Json: return "application/json";
  }
  return "application/octet-stream";
}

const char* file_extension(ExportFormat f) {
  switch (f) {
    case ExportFormat::LatexProof:
    case ExportFormat::LatexClauses: return ".tex";
    case ExportFormat::TptpCnf: return ".p";
    case ExportFormat::Json: return ".json";
  }
  return "";
}

namespace {

std::string latex_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '#': case '$': case '%': case '&': case '_': case '{': case '}': out += '\\'; out += c; break;
      case '\\': out += "\\backslash "; break;
      case '~': out += "\\sim "; break;
      case '^': out += "\\wedge "; break;
      default: out += c;
    }
  }
  return out;
}

void tree_lines(const ProofNode& n, int depth, std::string& out) {
  std::string pad(static_cast<std::size_t>(2 * depth), ' ');
  std::string seq = calculus::latex(n.conclusion);
  if (n.rule == RuleKind::Axiom) {
    out += pad + seq;
    return;
  }
  out += pad + "\\infer[\\mathrm{" + latex_escape(n.name()) + "}]{" + seq + "}{";
  if (n.premises.empty()) {
    out += "}";
    return;
  }
  out += "\n";
  for (std::size_t i = 0; i < n.premises.size(); ++i) {
    if (i) out += "\n" + pad + "  &\n";
    tree_lines(*n.premises[i], depth + 1, out);
  }
  out += "\n" + pad + "}";
}

// TPTP symbols: functors lowercase, variables uppercase, collisions
// suffixed in order of first use.
class TptpNames {
public:
  std::string functor(const Term& c) { return pick(c, false); }
  std::string variable(const Term& v) { return pick(v, true); }

private:
  std::string pick(const Term& t, bool var) {
    std::string key = (var ? "v:" : "f:") + t.name() + ":" + t.type().str();
    if (auto it = names_.find(key); it != names_.end()) return it->second;
    std::string base;
    for (char c : t.name()) {
      unsigned char u = static_cast<unsigned char>(c);
      base += std::isalnum(u) ? static_cast<char>(var ? std::toupper(u) : std::tolower(u)) : '_';
    }
    if (base.empty() || !std::isalpha(static_cast<unsigned char>(base[0]))) base = (var ? "X" : "f") + base;
    std::string name = base;
    for (int k = 2; taken_.count(name); ++k) name = base + "_" + std::to_string(k);
    taken_.insert(name);
    names_[key] = name;
    return name;
  }
  std::map<std::string, std::string> names_;
  std::set<std::string> taken_;
};

std::string tptp_term(const Term& t, TptpNames& names) {
  if (t.type() == Type::param()) {
    auto shape = kernel::param_shape(t);
    if (shape.base) throw ExportError("tptp: parameter expression " + kernel::plain(t) + " is not ground");
    return std::to_string(shape.offset);
  }
  auto sp = kernel::spine(t);
  if (sp.head.is_abs()) throw ExportError("tptp: lambda term " + kernel::plain(t));
  if (sp.head.is_var()) {
    if (!sp.args.empty()) throw ExportError("tptp: applied variable in " + kernel::plain(t));
    return names.variable(sp.head);
  }
  std::string out = names.functor(sp.head);
  if (!sp.args.empty()) {
    out += "(";
    for (std::size_t i = 0; i < sp.args.size(); ++i) {
      if (i) out += ", ";
      out += tptp_term(sp.args[i], names);
    }
    out += ")";
  }
  return out;
}

std::string tptp_literal(const Term& atom, bool positive, TptpNames& names) {
  if (!kernel::is_atom(atom)) throw ExportError("tptp: clause literal " + kernel::plain(atom) + " is not atomic");
  return (positive ? "" : "~") + tptp_term(atom, names);
}

std::string tptp(const ceres::ClauseSet& cs) {
  TptpNames names;
  std::string out;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    std::vector<std::string> lits;
    for (const auto& a : cs[i].ant) lits.push_back(tptp_literal(a, false, names));
    for (const auto& s : cs[i].suc) lits.push_back(tptp_literal(s, true, names));
    std::string body = lits.empty() ? "$false" : lits[0];
    for (std::size_t k = 1; k < lits.size(); ++k) body += " | " + lits[k];
    if (i) out += "\n";
    out += "cnf(c" + std::to_string(i) + ", axiom, " + body + ").";
  }
  return out;
}

json occurrences_to_json(const std::vector<calculus::FormulaOccurrence>& side) {
  json out = json::array();
  for (const auto& o : side)
    out.push_back({{"id", o.id},
                   {"parents", o.parents},
                   {"plain", kernel::plain(o.formula)},
                   {"latex", kernel::latex(o.formula)},
                   {"formula", term_to_json(o.formula)}});
  return out;
}

json node_to_json(const ProofNode& n) {
  json j{{"rule", calculus::rule_name(n.rule)},
         {"name", n.name()},
         {"conclusion",
          {{"latex", calculus::latex(n.conclusion)},
           {"plain", calculus::plain(n.conclusion)},
           {"ant", occurrences_to_json(n.conclusion.ant)},
           {"suc", occurrences_to_json(n.conclusion.suc)}}},
         {"aux", n.aux},
         {"main", n.main},
         {"term", n.term ? term_to_json(*n.term) : json(nullptr)},
         {"premises", json::array()}};
  if (n.link) j["link"] = {{"schema", n.link->schema}, {"arg", n.link->arg ? term_to_json(*n.link->arg) : json(nullptr)}};
  if (!n.label.empty()) j["label"] = n.label;
  if (!n.param.empty()) j["param"] = n.param;
  for (const auto& q : n.premises) j["premises"].push_back(node_to_json(*q));
  return j;
}

[[noreturn]] void bad(const std::string& what) { throw ImportError("json import: " + what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::vector<OccId> ids_from(const json& j) {
  if (!j.is_array()) bad("expected an id list");
  std::vector<OccId> out;
  for (const auto& x : j) {
    if (!x.is_number_unsigned()) bad("occurrence ids must be unsigned integers");
    out.push_back(x.get<OccId>());
  }
  return out;
}

std::vector<calculus::FormulaOccurrence> occurrences_from(const json& j) {
  if (!j.is_array()) bad("sequent side must be an array");
  std::vector<calculus::FormulaOccurrence> out;
  for (const auto& o : j) {
    if (!field(o, "id").is_number_unsigned()) bad("occurrence ids must be unsigned integers");
    out.push_back({o.at("id").get<OccId>(), term_from_json(field(o, "formula")), ids_from(field(o, "parents"))});
  }
  return out;
}

LKProof node_from_json(const json& j) {
  auto node = std::make_shared<ProofNode>();
  const json& rule = field(j, "rule");
  if (!rule.is_string()) bad("rule must be a string");
  if (rule.get<std::string>() == calculus::rule_name(RuleKind::Generic)) {
    node->rule = RuleKind::Generic;
  } else if (auto r = calculus::rule_from_name(rule.get<std::string>())) {
    node->rule = *r;
  } else {
    bad("unknown rule " + rule.get<std::string>());
  }
  const json& c = field(j, "conclusion");
  node->conclusion.ant = occurrences_from(field(c, "ant"));
  node->conclusion.suc = occurrences_from(field(c, "suc"));
  const json& aux = field(j, "aux");
  if (!aux.is_array()) bad("aux must be an array");
  for (const auto& a : aux) node->aux.push_back(ids_from(a));
  node->main = ids_from(field(j, "main"));
  if (const json& t = field(j, "term"); !t.is_null()) node->term = term_from_json(t);
  if (j.contains("link")) {
    const json& l = j.at("link");
    if (!field(l, "schema").is_string()) bad("link schema must be a string");
    calculus::LinkData d{l.at("schema").get<std::string>(), {}};
    if (const json& a = field(l, "arg"); !a.is_null()) d.arg = term_from_json(a);
    node->link = std::move(d);
  }
  if (j.contains("label")) node->label = j.at("label").get<std::string>();
  if (j.contains("param")) node->param = j.at("param").get<std::string>();
  const json& prem = field(j, "premises");
  if (!prem.is_array()) bad("premises must be an array");
  for (const auto& q : prem) node->premises.push_back(node_from_json(q));
  if (node->aux.size() != node->premises.size() && node->rule != RuleKind::Generic)
    bad(std::string(node->name()) + ": aux lists do not match the premises");
  return node;
}

json spans_json(const std::vector<view::Span>& spans) {
  json out = json::array();
  for (const auto& s : spans) out.push_back({s.start, s.end});
  return out;
}

} // namespace

std::string latex_proof_tree(const LKProof& p) {
  std::string out;
  tree_lines(*p, 0, out);
  return out;
}

std::string export_proof(const LKProof& p, ExportFormat fmt) {
  switch (fmt) {
    case ExportFormat::LatexProof:
      return "\\documentclass{article}\n"
             "\\usepackage{amssymb}\n"
             "\\usepackage{proof}\n"
             "\\begin{document}\n"
             "\\[\n" +
             latex_proof_tree(p) +
             "\n\\]\n"
             "\\end{document}\n";
    case ExportFormat::Json: return proof_to_json(p).dump(2) + "\n";
    default: throw ExportError("export: proofs are exported as LaTeX or JSON");
  }
}

std::string export_clause_set(const ceres::ClauseSet& cs, ExportFormat fmt) {
  switch (fmt) {
    case ExportFormat::TptpCnf: return tptp(cs);
    case ExportFormat::LatexClauses: {
      std::string out;
      for (std::size_t i = 0; i < cs.size(); ++i) {
        for (const auto* side : {&cs[i].ant, &cs[i].suc})
          for (const auto& f : *side)
            if (!kernel::is_atom(f)) throw ExportError("export: clause literal " + kernel::plain(f) + " is not atomic");
        if (i) out += ";\n";
        out += calculus::latex(cs[i]);
      }
      return out;
    }
    default: throw ExportError("export: clause sets are exported as LaTeX or TPTP");
  }
}

json term_to_json(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Var: return {{"var", t.name()}, {"type", t.type().str()}};
    case Term::Kind::Const: return {{"const", t.name()}, {"type", t.type().str()}};
    case Term::Kind::App: return {{"app", {term_to_json(t.fn()), term_to_json(t.arg())}}};
    case Term::Kind::Abs: return {{"abs", {term_to_json(t.bound()), term_to_json(t.body())}}};
  }
  return nullptr;
}

Term term_from_json(const json& j) {
  if (!j.is_object()) bad("term must be an object");
  try {
    auto pair = [&](const char* key) -> std::pair<Term, Term> {
      const json& a = j.at(key);
      if (!a.is_array() || a.size() != 2) bad(std::string(key) + " needs two terms");
      return {term_from_json(a[0]), term_from_json(a[1])};
    };
    if (j.contains("var")) return Term::var(j.at("var").get<std::string>(), kernel::parse_type(field(j, "type").get<std::string>()));
    if (j.contains("const"))
      return Term::constant(j.at("const").get<std::string>(), kernel::parse_type(field(j, "type").get<std::string>()));
    if (j.contains("app")) {
      auto [f, a] = pair("app");
      return Term::app(f, a);
    }
    if (j.contains("abs")) {
      auto [v, b] = pair("abs");
      if (!v.is_var()) bad("abs binds a non-variable");
      return Term::abs(v, b);
    }
  } catch (const kernel::TypeError& e) {
    bad(e.what());
  } catch (const json::exception& e) {
    bad(e.what());
  }
  bad("unknown term form " + j.dump());
}

json sequent_to_json(const FSequent& s) {
  json ant = json::array(), suc = json::array();
  for (const auto& f : s.ant) ant.push_back({{"plain", kernel::plain(f)}, {"latex", kernel::latex(f)}});
  for (const auto& f : s.suc) suc.push_back({{"plain", kernel::plain(f)}, {"latex", kernel::latex(f)}});
  return {{"plain", calculus::plain(s)}, {"latex", calculus::latex(s)}, {"ant", ant}, {"suc", suc}};
}

json proof_to_json(const LKProof& p) { return {{"formatVersion", kFormatVersion}, {"kind", "proof"}, {"root", node_to_json(*p)}}; }

LKProof proof_from_json(const json& j) {
  const json& v = field(j, "formatVersion");
  if (!v.is_number_integer() || v.get<int>() != kFormatVersion) bad("unsupported formatVersion " + v.dump());
  if (field(j, "kind") != "proof") bad("document kind is not proof");
  try {
    return node_from_json(field(j, "root"));
  } catch (const json::exception& e) {
    bad(e.what());
  }
}

LKProof import_proof(std::string_view text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) bad("malformed JSON");
  return proof_from_json(j);
}

json view_to_json(const view::ViewDocument& doc) {
  json nodes = json::array();
  for (const auto& n : doc.nodes) {
    json occs = json::array();
    for (const auto& o : n.occurrences)
      occs.push_back({{"id", o.id},
                      {"side", o.side == Side::Ant ? "ant" : "suc"},
                      {"latex", o.latex},
                      {"plain", o.plain},
                      {"span", {o.span.start, o.span.end}},
                      {"marked", o.marked}});
    nodes.push_back({{"id", n.id},
                     {"label", n.label},
                     {"latex", n.latex},
                     {"plain", n.plain},
                     {"highlights", spans_json(n.highlights)},
                     {"labelHighlights", spans_json(n.label_highlights)},
                     {"marks", n.marks},
                     {"occurrences", occs},
                     {"children", n.children},
                     {"dashed", n.dashed},
                     {"stub", n.stub},
                     {"antElided", n.ant_elided},
                     {"sucElided", n.suc_elided}});
  }
  return {{"formatVersion", kFormatVersion}, {"kind", view::doc_kind_name(doc.kind)}, {"title", doc.title}, {"nodes", nodes}};
}

json hits_to_json(const std::vector<view::SearchHit>& hits) {
  json out = json::array();
  for (const auto& h : hits)
    out.push_back({{"node", h.node}, {"field", h.field == view::Field::Label ? "label" : "latex"}, {"spans", spans_json(h.spans)}});
  return out;
}

} // namespace proofbench::exporter
