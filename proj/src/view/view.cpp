#include "proofbench/view/view.hpp"

#include <algorithm>
#include <functional>

#include "proofbench/calculus/ancestry.hpp"
#include "proofbench/kernel/render.hpp"

namespace proofbench::view {

using calculus::ProofNode;
using calculus::Side;

const char* doc_kind_name(DocKind k) {
  switch (k) {
    case DocKind::Tree: return "tree";
    case DocKind::Proof: return "proof";
    case DocKind::List: return "list";
  }
  return "?";
}

const RenderNode* ViewDocument::find(int id) const {
  for (const auto& n : nodes)
    if (n.id == id) return &n;
  return nullptr;
}

std::set<OccId> mark_cut_ancestors(const LKProof& p) { return calculus::cut_ancestors(p); }

namespace {

struct FlatNode {
  const ProofNode* node;
  std::vector<int> children;
  const ProofNode* consumer = nullptr; // node below, in the source
  std::size_t index = 0;               // premise position at the consumer
};

std::vector<FlatNode> flatten(const LKProof& p) {
  std::vector<FlatNode> out;
  std::function<int(const ProofNode&, const ProofNode*, std::size_t)> go = [&](const ProofNode& n, const ProofNode* below,
                                                                              std::size_t i) {
    int id = static_cast<int>(out.size());
    out.push_back({&n, {}, below, i});
    for (std::size_t k = 0; k < n.premises.size(); ++k) {
      int c = go(*n.premises[k], &n, k);
      out[id].children.push_back(c);
    }
    return id;
  };
  go(*p, nullptr, 0);
  return out;
}

void check_ids(const ViewOptions& opts, std::size_t size) {
  auto bad = [&](int id) { return id < 0 || static_cast<std::size_t>(id) >= size; };
  for (int id : opts.hidden_subtrees)
    if (bad(id)) throw ViewError("view: no node with id " + std::to_string(id));
  if (opts.focus_subproof && bad(*opts.focus_subproof))
    throw ViewError("view: no node with id " + std::to_string(*opts.focus_subproof));
}

class ProofRenderer {
public:
  ProofRenderer(const LKProof& p, const ViewOptions& opts) : flat_(flatten(p)), opts_(opts) {
    check_ids(opts, flat_.size());
    if (opts.mark_cut_ancestors) marked_ = mark_cut_ancestors(p);
  }

  std::vector<RenderNode> run() {
    build(opts_.focus_subproof.value_or(0));
    return std::move(out_);
  }

private:
  int build(int id) {
    const FlatNode& f = flat_[id];
    std::size_t slot = out_.size();
    out_.emplace_back();
    RenderNode r;
    r.id = id;
    render_sequent(f, r);
    if (opts_.hidden_subtrees.count(id)) {
      r.label = f.node->name();
      r.stub = true;
      out_[slot] = std::move(r);
      return id;
    }
    int top = id;
    if (opts_.hide_structural && calculus::is_structural(f.node->rule)) {
      while (calculus::is_structural(flat_[top].node->rule) && !opts_.hidden_subtrees.count(top) &&
             !flat_[top].children.empty())
        top = flat_[top].children[0];
      r.label = "*";
      r.dashed = true;
      r.children.push_back(top);
      out_[slot] = std::move(r);
      build(top);
      return id;
    }
    r.label = f.node->name();
    r.children = f.children;
    out_[slot] = std::move(r);
    for (int c : f.children) build(c);
    return id;
  }

  void render_sequent(const FlatNode& f, RenderNode& r) const {
    const auto& c = f.node->conclusion;
    std::set<OccId> active(f.node->main.begin(), f.node->main.end());
    if (f.consumer) active.insert(f.consumer->aux[f.index].begin(), f.consumer->aux[f.index].end());
    auto shown = [&](OccId id) { return !opts_.hide_context || active.count(id); };

    auto side = [&](Side s) {
      bool first = true;
      for (const auto& o : c.side(s)) {
        if (!shown(o.id)) {
          (s == Side::Ant ? r.ant_elided : r.suc_elided) = true;
          continue;
        }
        if (!first) {
          r.latex += ", ";
          r.plain += ", ";
        }
        first = false;
        OccurrenceView v{o.id, s, kernel::latex(o.formula), kernel::plain(o.formula), {}, marked_.count(o.id) > 0};
        v.span.start = r.latex.size();
        r.latex += v.latex;
        v.span.end = r.latex.size();
        r.plain += v.plain;
        if (v.marked) r.marks.push_back(o.id);
        r.occurrences.push_back(std::move(v));
      }
      bool elided = s == Side::Ant ? r.ant_elided : r.suc_elided;
      if (elided) {
        if (!first) {
          r.latex += ", ";
          r.plain += ", ";
        }
        r.latex += kEllipsisLatex;
        r.plain += kEllipsisPlain;
      }
      return !first || elided;
    };

    bool left = side(Side::Ant);
    if (left) {
      r.latex += " ";
      r.plain += " ";
    }
    r.latex += "\\vdash";
    r.plain += "|-";
    std::size_t mark_latex = r.latex.size(), mark_plain = r.plain.size();
    r.latex += " ";
    r.plain += " ";
    if (!side(Side::Suc)) {
      r.latex.resize(mark_latex);
      r.plain.resize(mark_plain);
    }
  }

  std::vector<FlatNode> flat_;
  const ViewOptions& opts_;
  std::set<OccId> marked_;
  std::vector<RenderNode> out_;
};

struct FlatStruct {
  const ceres::StructNode* node;
  std::vector<int> children;
};

std::vector<FlatStruct> flatten(const ceres::CeresStruct& s) {
  std::vector<FlatStruct> out;
  std::function<int(const ceres::StructNode&)> go = [&](const ceres::StructNode& n) {
    int id = static_cast<int>(out.size());
    out.push_back({&n, {}});
    if (n.kind != ceres::StructKind::Leaf) {
      int l = go(*n.left);
      int r = go(*n.right);
      out[id].children = {l, r};
    }
    return id;
  };
  go(*s);
  return out;
}

void find_all(const std::string& text, std::string_view q, std::vector<Span>& out) {
  for (auto pos = text.find(q); pos != std::string::npos; pos = text.find(q, pos + 1)) out.push_back({pos, pos + q.size()});
}

} // namespace

ViewDocument apply_view(const std::string& title, const LKProof& p, const ViewOptions& opts) {
  return {DocKind::Proof, title, ProofRenderer(p, opts).run()};
}

ViewDocument apply_view(const std::string& title, const ceres::CeresStruct& s, const ViewOptions& opts) {
  auto flat = flatten(s);
  check_ids(opts, flat.size());
  ViewDocument doc{DocKind::Tree, title, {}};
  std::function<void(int)> build = [&](int id) {
    const auto& f = flat[id];
    RenderNode r;
    r.id = id;
    switch (f.node->kind) {
      case ceres::StructKind::Leaf:
        r.latex = calculus::latex(f.node->clause);
        r.plain = calculus::plain(f.node->clause);
        break;
      case ceres::StructKind::Plus:
        r.latex = "\\oplus";
        r.plain = "+";
        break;
      case ceres::StructKind::Times:
        r.latex = "\\otimes";
        r.plain = "x";
        break;
    }
    bool hidden = opts.hidden_subtrees.count(id) > 0;
    r.stub = hidden;
    if (!hidden) r.children = f.children;
    doc.nodes.push_back(std::move(r));
    if (!hidden)
      for (int c : f.children) build(c);
  };
  build(opts.focus_subproof.value_or(0));
  return doc;
}

ViewDocument list_view(const std::string& title, const std::vector<calculus::FSequent>& items) {
  ViewDocument doc{DocKind::List, title, {}};
  for (std::size_t i = 0; i < items.size(); ++i) {
    RenderNode r;
    r.id = static_cast<int>(i);
    r.latex = calculus::latex(items[i]);
    r.plain = calculus::plain(items[i]);
    doc.nodes.push_back(std::move(r));
  }
  return doc;
}

ViewDocument list_view(const std::string& title, const kernel::DefinitionList& defs) {
  ViewDocument doc{DocKind::List, title, {}};
  int i = 0;
  for (const auto& d : defs.items()) {
    RenderNode r;
    r.id = i++;
    r.latex = kernel::latex(d.abbreviation) + " := " + kernel::latex(d.expansion);
    r.plain = kernel::plain(d.abbreviation) + " := " + kernel::plain(d.expansion);
    doc.nodes.push_back(std::move(r));
  }
  return doc;
}

std::size_t tree_size(const LKProof& p) { return flatten(p).size(); }
std::size_t tree_size(const ceres::CeresStruct& s) { return flatten(s).size(); }

std::vector<SearchHit> search(const ViewDocument& doc, std::string_view query) {
  if (query.empty()) throw ViewError("search: empty query");
  std::vector<SearchHit> out;
  for (const auto& n : doc.nodes) {
    SearchHit label{n.id, Field::Label, {}};
    find_all(n.label, query, label.spans);
    if (!label.spans.empty()) out.push_back(std::move(label));
    SearchHit text{n.id, Field::Latex, {}};
    find_all(n.latex, query, text.spans);
    if (!text.spans.empty()) out.push_back(std::move(text));
  }
  return out;
}

ViewDocument highlight(ViewDocument doc, const std::vector<SearchHit>& hits) {
  for (const auto& h : hits)
    for (auto& n : doc.nodes)
      if (n.id == h.node) {
        auto& dest = h.field == Field::Label ? n.label_highlights : n.highlights;
        dest.insert(dest.end(), h.spans.begin(), h.spans.end());
      }
  return doc;
}

std::string node_latex(const ViewDocument& doc, int id) {
  if (const auto* n = doc.find(id)) return n->latex;
  throw ViewError("view: no node with id " + std::to_string(id));
}

std::string formula_latex(const ViewDocument& doc, OccId occurrence) {
  for (const auto& n : doc.nodes)
    for (const auto& o : n.occurrences)
      if (o.id == occurrence) return o.latex;
  throw ViewError("view: no occurrence with id " + std::to_string(occurrence));
}

std::size_t visible_inferences(const ViewDocument& doc) {
  return static_cast<std::size_t>(
      std::count_if(doc.nodes.begin(), doc.nodes.end(), [](const RenderNode& n) { return !n.stub && !n.dashed; }));
}

std::string list_text(const ViewDocument& doc, bool latex) {
  std::string out;
  for (std::size_t i = 0; i < doc.nodes.size(); ++i) {
    if (i) out += ";\n";
    out += latex ? doc.nodes[i].latex : doc.nodes[i].plain;
  }
  return out;
}

} // namespace proofbench::view
