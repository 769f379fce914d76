#include "proofbench/calculus/check.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "proofbench/calculus/schema.hpp"
#include "proofbench/kernel/render.hpp"

namespace proofbench::calculus {

const char* violation_kind_name(ViolationKind k) {
  switch (k) {
    case ViolationKind::Arity: return "arity";
    case ViolationKind::DuplicateId: return "duplicate-id";
    case ViolationKind::MissingAux: return "missing-aux";
    case ViolationKind::Conclusion: return "conclusion";
    case ViolationKind::Shape: return "shape";
    case ViolationKind::Eigenvariable: return "eigenvariable";
    case ViolationKind::Equivalence: return "equivalence";
    case ViolationKind::Link: return "link";
    case ViolationKind::Unchecked: return "unchecked";
  }
  return "?";
}

std::size_t CheckReport::count(ViolationKind k) const {
  return static_cast<std::size_t>(
      std::count_if(violations.begin(), violations.end(), [&](const Violation& v) { return v.kind == k; }));
}

std::string CheckReport::str() const {
  std::ostringstream out;
  for (const auto& v : violations)
    out << "node " << v.node << " (" << v.path << ", " << v.rule << "): " << violation_kind_name(v.kind) << ": "
        << v.message << "\n";
  return out.str();
}

namespace {

ViolationKind from_error(InferenceError::Kind k) {
  switch (k) {
    case InferenceError::Kind::Arity: return ViolationKind::Arity;
    case InferenceError::Kind::MissingAux: return ViolationKind::MissingAux;
    case InferenceError::Kind::Shape: return ViolationKind::Shape;
    case InferenceError::Kind::Eigenvariable: return ViolationKind::Eigenvariable;
    case InferenceError::Kind::Equivalence: return ViolationKind::Equivalence;
    case InferenceError::Kind::Link: return ViolationKind::Link;
  }
  return ViolationKind::Shape;
}

struct Key {
  Side side;
  Term formula;
  std::vector<OccId> parents;
};

bool same_key(const Key& a, const Key& b) { return a.side == b.side && a.parents == b.parents && a.formula == b.formula; }

std::vector<Key> keys(const Sequent& s) {
  std::vector<Key> r;
  for (const auto& o : s.ant) r.push_back({Side::Ant, o.formula, o.parents});
  for (const auto& o : s.suc) r.push_back({Side::Suc, o.formula, o.parents});
  for (auto& k : r) std::sort(k.parents.begin(), k.parents.end());
  return r;
}

class Checker {
public:
  Checker(const ProofDatabase* db) : db_(db) {}
  CheckReport report;

  void run(const LKProof& p, const std::string& path) {
    std::size_t idx = index_++;
    const ProofNode& n = *p;
    auto add = [&](ViolationKind k, const std::string& msg) { report.violations.push_back({k, idx, path, n.name(), msg}); };

    for (OccId id : n.conclusion.ids())
      if (!ids_.insert(id).second) add(ViolationKind::DuplicateId, "occurrence id " + std::to_string(id) + " is reused");
    for (OccId m : n.main)
      if (!n.conclusion.find(m)) add(ViolationKind::MissingAux, "main occurrence " + std::to_string(m) + " not in conclusion");

    if (n.rule == RuleKind::Generic) {
      add(ViolationKind::Unchecked, std::string("rule type '") + n.label + "' is not checked");
    } else if (n.rule == RuleKind::AutoProp) {
      add(ViolationKind::Unchecked, "unexpanded autoprop leaf");
    } else {
      try {
        auto expected = expected_conclusion(n);
        std::vector<Key> want;
        for (auto& e : expected) {
          std::sort(e.parents.begin(), e.parents.end());
          want.push_back({e.side, e.formula, e.parents});
        }
        std::vector<Key> have = keys(n.conclusion);
        std::vector<bool> used(have.size(), false);
        bool ok = want.size() == have.size();
        for (const auto& w : want) {
          bool found = false;
          for (std::size_t i = 0; i < have.size() && ok; ++i)
            if (!used[i] && same_key(w, have[i])) {
              used[i] = found = true;
              break;
            }
          if (!found) ok = false;
        }
        if (!ok) add(ViolationKind::Conclusion, "conclusion " + plain(n.conclusion) + " is not what the rule produces");
      } catch (const InferenceError& e) {
        add(from_error(e.kind), e.what());
      } catch (const std::exception& e) {
        add(ViolationKind::Shape, e.what());
      }
    }
    if (n.rule == RuleKind::ProofLink && db_) check_link(n, add);

    for (std::size_t i = 0; i < n.premises.size(); ++i) run(n.premises[i], path + "." + std::to_string(i));
  }

private:
  template <class Add>
  void check_link(const ProofNode& n, Add& add) {
    if (!n.link) return;
    const DbEntry* e = db_->find(n.link->schema);
    if (!e) {
      add(ViolationKind::Link, "link target '" + n.link->schema + "' not found");
      return;
    }
    FSequent expected;
    if (e->schema) {
      if (!n.link->arg) {
        add(ViolationKind::Link, "link to schema '" + e->name + "' without parameter");
        return;
      }
      expected = schema_end_at(*e->schema, *n.link->arg);
    } else {
      expected = e->proof->conclusion.formulas();
    }
    if (!(expected == n.conclusion.formulas()))
      add(ViolationKind::Link, "link conclusion " + plain(n.conclusion) + " does not match " + plain(expected));
  }

  const ProofDatabase* db_;
  std::set<OccId> ids_;
  std::size_t index_ = 0;
};

} // namespace

CheckReport check_proof(const LKProof& p, const ProofDatabase* db) {
  Checker c(db);
  c.run(p, "0");
  return c.report;
}

} // namespace proofbench::calculus
