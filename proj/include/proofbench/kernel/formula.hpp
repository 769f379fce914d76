#pragma once

#include <optional>
#include <string>
#include <vector>

#include "proofbench/kernel/term.hpp"

namespace proofbench::kernel {

// Formulas are terms of type o. Logical symbols are constants whose names
// start with '$'; quantifiers and BigAnd/BigOr bind through an Abs.
namespace sym {
inline constexpr const char* Neg = "$neg";
inline constexpr const char* And = "$and";
inline constexpr const char* Or = "$or";
inline constexpr const char* Imp = "$imp";
inline constexpr const char* All = "$all";
inline constexpr const char* Ex = "$ex";
inline constexpr const char* BigAnd = "$bigand";
inline constexpr const char* BigOr = "$bigor";
inline constexpr const char* Succ = "$succ";
} // namespace sym

bool is_logical_symbol(const std::string& name);

Term neg(const Term& f);
Term conj(const Term& a, const Term& b);
Term disj(const Term& a, const Term& b);
Term imp(const Term& a, const Term& b);
Term forall(const Term& var, const Term& body);
Term exists(const Term& var, const Term& body);
// index must be a Var of type w; bounds are param terms.
Term big_and(const Term& index, const Term& lower, const Term& upper, const Term& body);
Term big_or(const Term& index, const Term& lower, const Term& upper, const Term& body);

// pred(args) with pred : arg types > o.
Term atom(const std::string& pred, const std::vector<Term>& args);

enum class FormulaKind { Atom, Neg, And, Or, Imp, All, Ex, BigAnd, BigOr };

const char* formula_kind_name(FormulaKind k);

// Decomposed top layer of a formula.
struct FormulaView {
  FormulaKind kind;
  Term left;                // Neg: operand; binary: left; binders: body
  std::optional<Term> right; // binary only
  std::optional<Term> var;   // quantifier variable / BigAnd index
  std::optional<Term> lower, upper;
};

// Throws TypeError if f is not of type o.
FormulaView view(const Term& f);

bool is_atom(const Term& f);
bool is_binary(FormulaKind k);
bool is_quantifier(FormulaKind k);
bool is_schematic(FormulaKind k);

// No ForAll/Exists/BigAnd/BigOr anywhere.
bool quantifier_free(const Term& f);
// No BigAnd/BigOr anywhere.
bool schema_free(const Term& f);

// Number of connectives/quantifiers on the longest path to an atom.
int logical_depth(const Term& f);

// Atoms of f, in first-occurrence order, duplicates removed.
std::vector<Term> atoms_of(const Term& f);

// Instance of a binder's body: body[var := t].
Term instantiate_body(const FormulaView& v, const Term& t);

} // namespace proofbench::kernel
