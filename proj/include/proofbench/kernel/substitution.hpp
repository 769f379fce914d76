#pragma once

#include <string>
#include <utility>
#include <vector>

#include "proofbench/kernel/term.hpp"

namespace proofbench::kernel {

// Finite map from variables to terms. Param variables are ordinary Vars of
// type w, so one map covers both.
class Substitution {
public:
  Substitution() = default;
  Substitution(std::initializer_list<std::pair<Term, Term>> items);

  // Throws TypeError on type mismatch, std::invalid_argument if var is not a
  // Var or is already bound.
  void bind(const Term& var, const Term& value);
  // Rebinds if present.
  void set(const Term& var, const Term& value);

  const Term* lookup(const Term& var) const;
  bool contains(const Term& var) const { return lookup(var) != nullptr; }
  bool empty() const { return items_.empty(); }
  std::size_t size() const { return items_.size(); }
  const std::vector<std::pair<Term, Term>>& items() const { return items_; }

  Substitution without(const Term& var) const;

  // (this ; other): apply this first, then other.
  Substitution compose(const Substitution& other) const;

  friend bool operator==(const Substitution& a, const Substitution& b);

private:
  std::vector<std::pair<Term, Term>> items_;
};

// Capture-avoiding simultaneous substitution. Colliding binders are renamed
// by appending primes.
Term substitute(const Term& t, const Substitution& s);

// Beta-normal form (only needed after definition expansion).
Term beta_normalize(const Term& t);

} // namespace proofbench::kernel
