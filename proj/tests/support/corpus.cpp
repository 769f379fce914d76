#include "corpus.hpp"

#include <algorithm>
#include <filesystem>
#include <map>
#include <set>

#include "proofbench/kernel/formula.hpp"
#include "proofbench/kernel/param.hpp"
#include "proofbench/parsers/io.hpp"
#include "random_proofs.hpp"

namespace proofbench::testing {

using namespace calculus;
using namespace kernel;
namespace fs = std::filesystem;

std::vector<std::pair<std::string, std::string>> corpus_files(const std::string& dir) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    auto ext = e.path().extension();
    if (ext == ".lks" || ext == ".xml") out.emplace_back(e.path().filename().string(), e.path().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<CorpusProof> first_order_corpus(const std::string& dir) {
  std::vector<CorpusProof> out;
  for (const auto& [name, path] : corpus_files(dir)) {
    auto db = parsers::load_database(path);
    for (const auto& d : db.entries) {
      std::string tag = name + ":" + d.name;
      if (d.is_schema()) {
        for (std::uint64_t n = 0; n <= 3; ++n) out.push_back({tag + "@" + std::to_string(n), instantiate_schema(db, d.name, n)});
        continue;
      }
      bool generic = false;
      preorder(d.proof, [&](const LKProof& q) { generic = generic || q->rule == RuleKind::Generic; });
      if (!generic) out.push_back({tag, expand_links(db, d.proof)});
    }
  }
  auto rnd = random_proofs();
  for (std::size_t i = 0; i < rnd.size(); ++i) out.push_back({"random#" + std::to_string(i), rnd[i]});
  return out;
}

namespace {

bool match(const Term& pattern, const Term& t, const std::set<std::string>& holes, std::map<std::string, Term>& bind) {
  if (pattern.is_var() && holes.count(pattern.name())) {
    auto it = bind.find(pattern.name());
    if (it != bind.end()) return it->second == t;
    bind.emplace(pattern.name(), t);
    return true;
  }
  if (pattern.is_app() && t.is_app())
    return match(pattern.fn(), t.fn(), holes, bind) && match(pattern.arg(), t.arg(), holes, bind);
  return pattern == t;
}

bool instance(const Term& m, const Term& f, std::set<std::string> holes, std::map<std::string, Term>& bind) {
  auto v = view(f);
  if (v.kind == FormulaKind::All || v.kind == FormulaKind::Ex) {
    holes.insert(v.var->name());
    return instance(m, v.left, holes, bind);
  }
  if (v.kind == FormulaKind::Atom) return match(f, m, holes, bind);
  auto w = view(m);
  if (w.kind != v.kind) return false;
  if (!instance(w.left, v.left, holes, bind)) return false;
  return !v.right || instance(*w.right, *v.right, holes, bind);
}

} // namespace

bool instance_of(const Term& m, const Term& f) {
  std::map<std::string, Term> bind;
  return instance(m, unfold_schema_connective(f, {}), {}, bind);
}

} // namespace proofbench::testing
