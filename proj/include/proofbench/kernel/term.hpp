#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "proofbench/kernel/type.hpp"

namespace proofbench::kernel {

// Simply-typed lambda term. Immutable, cheap to copy (shared node).
// Equality is alpha-equivalence; bound variables keep their user names for
// display.
class Term {
public:
  enum class Kind { Var, Const, App, Abs };

  static Term var(std::string name, Type type);
  static Term constant(std::string name, Type type);
  // Throws TypeError unless fn : A > B and arg : A.
  static Term app(const Term& fn, const Term& arg);
  // `bound` must be a Var.
  static Term abs(const Term& bound, const Term& body);

  Kind kind() const;
  bool is_var() const { return kind() == Kind::Var; }
  bool is_const() const { return kind() == Kind::Const; }
  bool is_app() const { return kind() == Kind::App; }
  bool is_abs() const { return kind() == Kind::Abs; }

  // Var/Const only.
  const std::string& name() const;
  const Type& type() const;
  // App only.
  const Term& fn() const;
  const Term& arg() const;
  // Abs only.
  const Term& bound() const;
  const Term& body() const;

  // Alpha-invariant hash, consistent with operator==.
  std::size_t hash() const;

  // Syntactic identity, bound names included.
  bool identical(const Term& other) const;

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

  const void* node_id() const { return node_.get(); }

private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

// head applied to args, left to right.
Term apply_args(const Term& head, const std::vector<Term>& args);

struct Spine {
  Term head;
  std::vector<Term> args;
};
Spine spine(const Term& t);

// Free variables in order of first occurrence (left to right).
std::vector<Term> free_vars(const Term& t);
bool occurs_free(const Term& var, const Term& t);
// Names of every Var or Const anywhere in t, bound or free.
void collect_names(const Term& t, std::vector<std::string>& out);
// Constants in order of first occurrence.
std::vector<Term> constants(const Term& t);

// Number of Var/Const leaves; used as symbol count.
std::size_t symbol_count(const Term& t);

// base, base', base'', ... first one rejected by `used`.
std::string fresh_name(const std::string& base, const std::function<bool(const std::string&)>& used);

} // namespace proofbench::kernel

template <>
struct std::hash<proofbench::kernel::Term> {
  std::size_t operator()(const proofbench::kernel::Term& t) const { return t.hash(); }
};
