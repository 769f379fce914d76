#include <doctest.h>

#include <fstream>
#include <sstream>

#include "corpus.hpp"
#include "proofbench/ceres/ceres.hpp"
#include "proofbench/exporter/export.hpp"
#include "proofbench/kernel/formula.hpp"
#include "proofbench/parsers/formula.hpp"
#include "proofbench/parsers/io.hpp"
#include "proofbench/transform/transform.hpp"
#include "tptp_cnf.hpp"

using namespace proofbench;
using namespace proofbench::calculus;
using namespace proofbench::exporter;

namespace {

ProofDatabase load(const std::string& name) { return parsers::load_database(std::string(PB_TEST_DATA) + "/" + name); }

FSequent seq(const std::string& text) { return parsers::parse_formula_sequent(text); }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
  return n;
}

bool same_occurrences(const std::vector<FormulaOccurrence>& a, const std::vector<FormulaOccurrence>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].id != b[i].id || a[i].parents != b[i].parents || !a[i].formula.identical(b[i].formula)) return false;
  return true;
}

bool identical(const LKProof& a, const LKProof& b) {
  if (a->rule != b->rule || a->aux != b->aux || a->main != b->main || a->label != b->label || a->param != b->param) return false;
  if (!same_occurrences(a->conclusion.ant, b->conclusion.ant) || !same_occurrences(a->conclusion.suc, b->conclusion.suc))
    return false;
  if (a->term.has_value() != b->term.has_value() || (a->term && !a->term->identical(*b->term))) return false;
  if (a->link.has_value() != b->link.has_value()) return false;
  if (a->link && (a->link->schema != b->link->schema || a->link->arg.has_value() != b->link->arg.has_value() ||
                  (a->link->arg && !a->link->arg->identical(*b->link->arg))))
    return false;
  if (a->premises.size() != b->premises.size()) return false;
  for (std::size_t i = 0; i < a->premises.size(); ++i)
    if (!identical(a->premises[i], b->premises[i])) return false;
  return true;
}

std::size_t resolvent_steps(const ceres::ResolutionProof& p) {
  std::size_t n = 0;
  for (const auto& s : p.steps) n += s.kind == ceres::StepKind::Resolvent;
  return n;
}

} // namespace

TEST_CASE("LaTeX proof export") {
  LKProof e1 = load("e1.lks").find("E1")->proof;
  std::string tex = export_proof(e1, ExportFormat::LatexProof);
  CHECK(tex == slurp(std::string(PB_TEST_DATA) + "/golden/e1.tex"));
  CHECK(count(tex, "P \\vdash P") == 3);
  CHECK(count(tex, "\\mathrm{cut}") == 1);

  IdGen gen;
  LKProof ax = axiom(gen, kernel::atom("P", {}));
  CHECK(latex_proof_tree(ax) == "P \\vdash P");

  for (const auto& [tag, p] : testing::first_order_corpus(PB_TEST_DATA)) {
    INFO(tag);
    CHECK(count(latex_proof_tree(p), "\\vdash") == node_count(p));
  }
  CHECK_THROWS_AS(export_proof(e1, ExportFormat::TptpCnf), ExportError);
}

TEST_CASE("JSON round trip is the identity") {
  for (const auto& [tag, p] : testing::first_order_corpus(PB_TEST_DATA)) {
    INFO(tag);
    std::string text = export_proof(p, ExportFormat::Json);
    LKProof back = import_proof(text);
    CHECK(identical(p, back));
    CHECK(export_proof(back, ExportFormat::Json) == text);
  }
  auto fig = load("fig3.lks").find("psi")->schema;
  REQUIRE(fig);
  CHECK(identical(fig->step, proof_from_json(proof_to_json(fig->step))));

  json j = proof_to_json(load("e1.lks").find("E1")->proof);
  CHECK(j["formatVersion"] == 1);
  CHECK(j["root"]["rule"] == "cut");
  CHECK(j["root"]["conclusion"]["latex"] == "P \\vdash P");
  CHECK(j["root"]["premises"][0]["conclusion"]["suc"][0]["id"].is_number());
}

TEST_CASE("JSON import rejects malformed documents") {
  json good = proof_to_json(load("e1.lks").find("E1")->proof);
  CHECK_THROWS_AS(import_proof("{"), ImportError);
  json v = good;
  v["formatVersion"] = 2;
  CHECK_THROWS_AS(proof_from_json(v), ImportError);
  json r = good;
  r["root"]["rule"] = "frobnicate";
  CHECK_THROWS_AS(proof_from_json(r), ImportError);
  json m = good;
  m["root"].erase("aux");
  CHECK_THROWS_AS(proof_from_json(m), ImportError);
  json t = good;
  t["root"]["conclusion"]["ant"][0]["formula"] = {{"const", "P"}, {"type", "(o"}};
  CHECK_THROWS_AS(proof_from_json(t), ImportError);
}

TEST_CASE("clause set export") {
  ceres::ClauseSet e1{seq("|- P"), seq("P |-")};
  CHECK(export_clause_set(e1, ExportFormat::TptpCnf) == "cnf(c0, axiom, p).\ncnf(c1, axiom, ~p).");
  CHECK(export_clause_set({}, ExportFormat::TptpCnf).empty());
  CHECK(export_clause_set({seq("|- P(x)")}, ExportFormat::TptpCnf) == "cnf(c0, axiom, p(X)).");
  CHECK(export_clause_set({seq("Q(x), P(f(a)) |- R")}, ExportFormat::TptpCnf) == "cnf(c0, axiom, ~q(X) | ~p(f(a)) | r).");
  CHECK(export_clause_set({FSequent{}}, ExportFormat::TptpCnf) == "cnf(c0, axiom, $false).");
  CHECK(export_clause_set({seq("|- P"), seq("|- p")}, ExportFormat::TptpCnf) == "cnf(c0, axiom, p).\ncnf(c1, axiom, p_2).");
  CHECK_THROWS_AS(export_clause_set({seq("|- P /\\ Q")}, ExportFormat::TptpCnf), ExportError);
  CHECK(export_clause_set(e1, ExportFormat::LatexClauses) == "\\vdash P;\nP \\vdash");
  CHECK_THROWS_AS(export_clause_set(e1, ExportFormat::Json), ExportError);
  CHECK(std::string(media_type(ExportFormat::TptpCnf)) == "text/plain");
  CHECK(std::string(file_extension(ExportFormat::LatexProof)) == ".tex");
}

TEST_CASE("TPTP export of E1 reparses and is refuted in one step") {
  auto cs = ceres::char_clause_set(ceres::extract_struct(load("e1.lks").find("E1")->proof));
  auto back = testing::read_tptp_cnf(export_clause_set(cs, ExportFormat::TptpCnf));
  REQUIRE(back.size() == 2);
  auto r = ceres::refute(back);
  REQUIRE(r.status == ceres::RefuteStatus::Refuted);
  CHECK(resolvent_steps(*r.proof) == 1);
}

TEST_CASE("TPTP export preserves unsatisfiability") {
  for (const auto& [tag, p] : testing::first_order_corpus(PB_TEST_DATA)) {
    if (is_cut_free(p)) continue;
    INFO(tag);
    auto cs = ceres::char_clause_set(ceres::extract_struct(transform::skolemize(p)));
    auto back = testing::read_tptp_cnf(export_clause_set(cs, ExportFormat::TptpCnf));
    CHECK(back.size() == cs.size());
    CHECK(ceres::refute(back).status == ceres::RefuteStatus::Refuted);
  }
  auto sat = testing::read_tptp_cnf(export_clause_set({seq("|- P(x)"), seq("Q(a) |-")}, ExportFormat::TptpCnf));
  CHECK(ceres::refute(sat).status == ceres::RefuteStatus::Saturated);
}

TEST_CASE("view documents as JSON") {
  auto doc = view::apply_view("E1", load("e1.lks").find("E1")->proof);
  doc = view::highlight(doc, view::search(doc, "cut"));
  json j = view_to_json(doc);
  CHECK(j["kind"] == "proof");
  CHECK(j["title"] == "E1");
  CHECK(j["nodes"].size() == 3);
  CHECK(j["nodes"][0]["labelHighlights"] == json::array({json::array({0, 3})}));
  CHECK(j["nodes"][1]["occurrences"][0]["span"] == json::array({0, 1}));
  json h = hits_to_json(view::search(doc, "P"));
  CHECK(h.size() == 3);
  CHECK(h[0]["field"] == "latex");
}
