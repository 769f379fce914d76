#include "proofbench/ops/ops.hpp"

#include <charconv>

#include "proofbench/kernel/render.hpp"

namespace proofbench::ops {

namespace {

struct OpInfo {
  Op op;
  const char* name;
};

constexpr OpInfo kOps[] = {
    {Op::Gentzen, "gentzen"},     {Op::Ceres, "ceres"},     {Op::Skolemize, "skolemize"},
    {Op::Regularize, "regularize"}, {Op::Herbrand, "herbrand"}, {Op::Struct, "struct"},
    {Op::ClauseSet, "clauseset"}, {Op::Projections, "projections"}, {Op::CutFormulas, "cutformulas"},
};

template <class... F>
struct Overload : F... {
  using F::operator()...;
};
template <class... F>
Overload(F...) -> Overload<F...>;

void proof_lines(const calculus::ProofNode& n, int depth, std::string& out) {
  out += std::string(static_cast<std::size_t>(2 * depth), ' ') + n.name() + ": " + calculus::plain(n.conclusion) + "\n";
  for (const auto& q : n.premises) proof_lines(*q, depth + 1, out);
}

} // namespace

const char* op_name(Op op) {
  for (const auto& i : kOps)
    if (i.op == op) return i.name;
  return "?";
}

std::optional<Op> op_from_name(std::string_view name) {
  for (const auto& i : kOps)
    if (name == i.name) return i.op;
  return std::nullopt;
}

const std::vector<std::string>& op_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& i : kOps) v.emplace_back(i.name);
    return v;
  }();
  return names;
}

bool yields_proof(Op op) { return op == Op::Gentzen || op == Op::Ceres || op == Op::Skolemize || op == Op::Regularize; }

LKProof resolve_proof(const ProofDatabase& db, const std::string& name, std::optional<std::uint64_t> n) {
  const auto* e = db.find(name);
  if (!e) throw NotFound("no proof named " + name);
  if (e->is_schema()) {
    if (!n) throw BadRequest(name + " is a schema; give a parameter value n");
    return calculus::instantiate_schema(db, name, *n);
  }
  if (n) throw BadRequest(name + " is not a schema; n does not apply");
  return calculus::has_links(e->proof) ? calculus::expand_links(db, e->proof) : e->proof;
}

Value apply(Op op, const LKProof& p, const ceres::Limits& limits, const transform::CancelToken* cancel) {
  switch (op) {
    case Op::Gentzen: return transform::gentzen_cut_elim(p, cancel);
    case Op::Ceres: return ceres::ceres_cut_elim(p, limits, cancel);
    case Op::Skolemize: return transform::skolemize(p);
    case Op::Regularize: return transform::regularize(p);
    case Op::Herbrand: return transform::herbrand_sequent(p);
    case Op::Struct: return ceres::extract_struct(p);
    case Op::ClauseSet: return ceres::char_clause_set(ceres::extract_struct(p));
    case Op::Projections: return ceres::compute_projections(p);
    case Op::CutFormulas: return transform::extract_cut_formulas(p);
  }
  throw BadRequest("unknown operation");
}

std::string proof_text(const LKProof& p) {
  std::string out;
  proof_lines(*p, 0, out);
  return out;
}

std::string text(const Value& v) {
  return std::visit(Overload{
                        [](const LKProof& p) { return proof_text(p); },
                        [](const transform::HerbrandSequent& h) { return calculus::plain(h.sequent) + "\n"; },
                        [](const ceres::CeresStruct& s) { return ceres::plain(s) + "\n"; },
                        [](const ceres::ClauseSet& cs) {
                          auto t = view::list_text(view::list_view("", cs));
                          return t.empty() ? t : t + "\n";
                        },
                        [](const std::vector<ceres::Projection>& ps) {
                          std::string out;
                          for (std::size_t i = 0; i < ps.size(); ++i) {
                            out += "projection " + std::to_string(i) + " for " + calculus::plain(ps[i].clause) + "\n";
                            std::string body = proof_text(ps[i].proof);
                            for (std::size_t a = 0, b; a < body.size(); a = b + 1) {
                              b = body.find('\n', a);
                              out += "  " + body.substr(a, b - a + 1);
                            }
                          }
                          return out;
                        },
                        [](const std::vector<kernel::Term>& fs) {
                          std::string out;
                          for (const auto& f : fs) out += kernel::plain(f) + "\n";
                          return out;
                        },
                    },
                    v);
}

view::ViewDocument to_view(const std::string& title, const Value& v, const view::ViewOptions& opts) {
  return std::visit(Overload{
                        [&](const LKProof& p) { return view::apply_view(title, p, opts); },
                        [&](const transform::HerbrandSequent& h) { return view::list_view(title, {h.sequent}); },
                        [&](const ceres::CeresStruct& s) { return view::apply_view(title, s, opts); },
                        [&](const ceres::ClauseSet& cs) { return view::list_view(title, cs); },
                        [&](const std::vector<ceres::Projection>& ps) {
                          std::vector<calculus::FSequent> ends;
                          for (const auto& pr : ps) ends.push_back(pr.proof->conclusion.formulas());
                          return view::list_view(title, ends);
                        },
                        [&](const std::vector<kernel::Term>& fs) {
                          std::vector<calculus::FSequent> items;
                          for (const auto& f : fs) items.push_back({{}, {f}});
                          return view::list_view(title, items);
                        },
                    },
                    v);
}

ceres::Limits parse_limits(std::string_view text) {
  auto comma = text.find(',');
  if (comma == std::string_view::npos) throw BadRequest("limits must be \"maxClauses,maxSeconds\"");
  ceres::Limits l;
  auto a = text.substr(0, comma), b = text.substr(comma + 1);
  auto [pa, ea] = std::from_chars(a.data(), a.data() + a.size(), l.max_clauses);
  if (ea != std::errc() || pa != a.data() + a.size() || l.max_clauses == 0)
    throw BadRequest("limits: bad clause count \"" + std::string(a) + "\"");
  std::string secs(b);
  std::size_t used = 0;
  try {
    l.max_seconds = std::stod(secs, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (secs.empty() || used != secs.size() || !(l.max_seconds > 0))
    throw BadRequest("limits: bad time limit \"" + secs + "\"");
  return l;
}

} // namespace proofbench::ops
