#pragma once

#include <random>
#include <vector>

#include "proofbench/kernel/formula.hpp"

namespace proofbench::testing {

// Small first-order signature: vars x y z, consts a b, f:i>i, g:i>i>i,
// predicates P:i>o, Q:i>i>o, R:o.
class TermGen {
public:
  explicit TermGen(unsigned seed) : rng_(seed) {}

  kernel::Term var();
  kernel::Term individual(int depth);
  kernel::Term formula(int depth);
  // Propositional formula over atoms A, B, C.
  kernel::Term prop(int depth, int atoms = 3);

  std::mt19937& rng() { return rng_; }
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

private:
  std::mt19937 rng_;
};

} // namespace proofbench::testing
