#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "proofbench/calculus/proof.hpp"
#include "proofbench/ceres/resolution.hpp"
#include "proofbench/view/view.hpp"

namespace proofbench::exporter {

using calculus::LKProof;
using nlohmann::json;

inline constexpr int kFormatVersion = 1;

struct ExportError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ImportError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ExportFormat { LatexProof, LatexClauses, TptpCnf, Json };

const char* media_type(ExportFormat f);
const char* file_extension(ExportFormat f);

// LatexProof / Json.
std::string export_proof(const LKProof& p, ExportFormat fmt);
// LatexClauses / TptpCnf. Throws ExportError on non-atomic literals and on
// terms TPTP cannot express.
std::string export_clause_set(const ceres::ClauseSet& cs, ExportFormat fmt);

// Nested \infer lines (proof.sty); an axiom is its sequent alone.
std::string latex_proof_tree(const LKProof& p);

json term_to_json(const kernel::Term& t);
kernel::Term term_from_json(const json& j);

json sequent_to_json(const calculus::FSequent& s);

// {"formatVersion": 1, "kind": "proof", "root": node}; ids and parent links
// are kept, so import gives back the same proof.
json proof_to_json(const LKProof& p);
// Throws ImportError on documents that do not follow the format.
LKProof proof_from_json(const json& j);
LKProof import_proof(std::string_view text);

json view_to_json(const view::ViewDocument& doc);
json hits_to_json(const std::vector<view::SearchHit>& hits);

} // namespace proofbench::exporter
