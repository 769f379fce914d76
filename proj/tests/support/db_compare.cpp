#include "db_compare.hpp"

namespace proofbench::testing {

using namespace calculus;

std::string database_diff(const ProofDatabase& a, const ProofDatabase& b) {
  if (a.entries.size() != b.entries.size()) return "entry count differs";
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    const auto& x = a.entries[i];
    const auto& y = b.entries[i];
    if (x.name != y.name) return "name " + x.name + " vs " + y.name;
    if (x.is_schema() != y.is_schema()) return x.name + ": kind differs";
    if (x.calculus != y.calculus) return x.name + ": calculus differs";
    if (x.is_schema()) {
      const auto& s = *x.schema;
      const auto& t = *y.schema;
      if (!(s.param == t.param) || !(s.end == t.end)) return x.name + ": end-sequent differs";
      if (!same_shape(s.base, t.base)) return x.name + ": base differs";
      if (!same_shape(s.step, t.step)) return x.name + ": step differs";
    } else if (!same_shape(x.proof, y.proof)) {
      return x.name + ": proof differs";
    }
  }
  if (a.definitions.items().size() != b.definitions.items().size()) return "definition count differs";
  return {};
}

} // namespace proofbench::testing
