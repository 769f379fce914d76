#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "proofbench/calculus/proof.hpp"
#include "proofbench/ceres/ceres.hpp"
#include "proofbench/kernel/definitions.hpp"

namespace proofbench::view {

using calculus::LKProof;
using calculus::OccId;

struct ViewError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class DocKind { Tree, Proof, List };
const char* doc_kind_name(DocKind k);

// Half-open byte range.
struct Span {
  std::size_t start = 0, end = 0;
  friend bool operator==(const Span&, const Span&) = default;
};

struct OccurrenceView {
  OccId id = 0;
  calculus::Side side = calculus::Side::Ant;
  std::string latex, plain;
  Span span; // within the node's latex
  bool marked = false;
};

struct RenderNode {
  int id = 0;          // preorder position in the source object
  std::string label;   // inference name; "*" on merged structural lines
  std::string latex;
  std::string plain;
  std::vector<Span> highlights;       // in latex
  std::vector<Span> label_highlights; // in label
  std::vector<OccId> marks;
  std::vector<OccurrenceView> occurrences; // proof nodes only
  std::vector<int> children;               // ids
  bool dashed = false;
  bool stub = false;
  bool ant_elided = false, suc_elided = false;
};

struct ViewDocument {
  DocKind kind = DocKind::List;
  std::string title;
  std::vector<RenderNode> nodes; // preorder; nodes[0] is the root of trees and proofs

  const RenderNode* find(int id) const;
};

struct ViewOptions {
  bool hide_structural = false;
  bool hide_context = false;
  bool mark_cut_ancestors = false;
  std::set<int> hidden_subtrees;
  std::optional<int> focus_subproof;
};

// Context replacement token per elided sequent side.
inline constexpr const char* kEllipsisLatex = "\\cdots";
inline constexpr const char* kEllipsisPlain = "⋯";

std::set<OccId> mark_cut_ancestors(const LKProof& p);

// Throws ViewError on ids that are not in the source.
ViewDocument apply_view(const std::string& title, const LKProof& p, const ViewOptions& opts = {});
// Trees ignore the proof-only options.
ViewDocument apply_view(const std::string& title, const ceres::CeresStruct& s, const ViewOptions& opts = {});

ViewDocument list_view(const std::string& title, const std::vector<calculus::FSequent>& items);
ViewDocument list_view(const std::string& title, const kernel::DefinitionList& defs);

// Number of nodes in the source with shared substructures duplicated.
std::size_t tree_size(const LKProof& p);
std::size_t tree_size(const ceres::CeresStruct& s);

enum class Field { Latex, Label };

struct SearchHit {
  int node = 0;
  Field field = Field::Latex;
  std::vector<Span> spans;
};

// Exact, case-sensitive, overlapping matches in document order. Throws
// ViewError on an empty query.
std::vector<SearchHit> search(const ViewDocument& doc, std::string_view query);
ViewDocument highlight(ViewDocument doc, const std::vector<SearchHit>& hits);

// Throws ViewError on unknown ids.
std::string node_latex(const ViewDocument& doc, int id);
std::string formula_latex(const ViewDocument& doc, OccId occurrence);

// Visible inferences: proof nodes that are neither stubs nor merged lines.
std::size_t visible_inferences(const ViewDocument& doc);

// One element per line, lines separated by semicolons.
std::string list_text(const ViewDocument& doc, bool latex = false);

} // namespace proofbench::view
