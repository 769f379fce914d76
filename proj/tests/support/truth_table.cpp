#include "truth_table.hpp"

#include <stdexcept>
#include <vector>

#include "proofbench/kernel/formula.hpp"
#include "proofbench/kernel/param.hpp"
#include "proofbench/kernel/render.hpp"

namespace proofbench::testing {

using namespace kernel;

bool eval_formula(const Term& f, const Assignment& a) {
  FormulaView v = view(f);
  switch (v.kind) {
    case FormulaKind::Atom: {
      auto it = a.find(plain(f));
      return it != a.end() && it->second;
    }
    case FormulaKind::Neg: return !eval_formula(v.left, a);
    case FormulaKind::And: return eval_formula(v.left, a) && eval_formula(*v.right, a);
    case FormulaKind::Or: return eval_formula(v.left, a) || eval_formula(*v.right, a);
    case FormulaKind::Imp: return !eval_formula(v.left, a) || eval_formula(*v.right, a);
    case FormulaKind::BigAnd:
    case FormulaKind::BigOr: return eval_formula(unfold_schema_connective(f, {}), a);
    default: throw std::invalid_argument("truth table: quantified formula");
  }
}

bool eval_sequent(const calculus::FSequent& s, const Assignment& a) {
  for (const auto& f : s.ant)
    if (!eval_formula(f, a)) return true;
  for (const auto& f : s.suc)
    if (eval_formula(f, a)) return true;
  return false;
}

bool valid(const calculus::FSequent& s) {
  std::vector<std::string> names;
  auto collect = [&](const Term& f) {
    for (const auto& at : atoms_of(unfold_schema_connective(f, {}))) {
      std::string n = plain(at);
      bool seen = false;
      for (const auto& m : names) seen = seen || m == n;
      if (!seen) names.push_back(n);
    }
  };
  for (const auto& f : s.ant) collect(f);
  for (const auto& f : s.suc) collect(f);
  if (names.size() > 20) throw std::invalid_argument("truth table: too many atoms");
  for (std::uint32_t bits = 0; bits < (1u << names.size()); ++bits) {
    Assignment a;
    for (std::size_t i = 0; i < names.size(); ++i) a[names[i]] = (bits >> i) & 1u;
    if (!eval_sequent(s, a)) return false;
  }
  return true;
}

} // namespace proofbench::testing
