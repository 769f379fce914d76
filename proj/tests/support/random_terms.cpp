#include "random_terms.hpp"

namespace proofbench::testing {

using namespace kernel;

namespace {
const Type kI = Type::individual();
}

Term TermGen::var() {
  static const char* names[] = {"x", "y", "z"};
  return Term::var(names[pick(3)], kI);
}

Term TermGen::individual(int depth) {
  int r = pick(depth > 0 ? 4 : 2);
  switch (r) {
    case 0: return var();
    case 1: return Term::constant(pick(2) ? "a" : "b", kI);
    case 2: return Term::app(Term::constant("f", Type::arrow(kI, kI)), individual(depth - 1));
    default:
      return apply_args(Term::constant("g", arrows({kI, kI}, kI)), {individual(depth - 1), individual(depth - 1)});
  }
}

Term TermGen::formula(int depth) {
  int r = pick(depth > 0 ? 9 : 3);
  switch (r) {
    case 0: return atom("P", {individual(1)});
    case 1: return atom("Q", {individual(1), individual(1)});
    case 2: return atom("R", {});
    case 3: return neg(formula(depth - 1));
    case 4: return conj(formula(depth - 1), formula(depth - 1));
    case 5: return disj(formula(depth - 1), formula(depth - 1));
    case 6: return imp(formula(depth - 1), formula(depth - 1));
    case 7: return forall(var(), formula(depth - 1));
    default: return exists(var(), formula(depth - 1));
  }
}

Term TermGen::prop(int depth, int atoms) {
  static const char* names[] = {"A", "B", "C", "D", "E"};
  int r = pick(depth > 0 ? 5 : 1);
  switch (r) {
    case 0: return atom(names[pick(atoms)], {});
    case 1: return neg(prop(depth - 1, atoms));
    case 2: return conj(prop(depth - 1, atoms), prop(depth - 1, atoms));
    case 3: return disj(prop(depth - 1, atoms), prop(depth - 1, atoms));
    default: return imp(prop(depth - 1, atoms), prop(depth - 1, atoms));
  }
}

} // namespace proofbench::testing
