#include "proofbench/kernel/formula.hpp"

#include <algorithm>

#include "proofbench/kernel/substitution.hpp"

namespace proofbench::kernel {

namespace {

const Type& o() {
  static const Type t = Type::proposition();
  return t;
}
const Type& w() {
  static const Type t = Type::param();
  return t;
}

Term unary_op(const char* name) { return Term::constant(name, Type::arrow(o(), o())); }
Term binary_op(const char* name) { return Term::constant(name, Type::arrow(o(), Type::arrow(o(), o()))); }

Term binder(const char* name, const Term& var, const Term& body) {
  if (!var.is_var()) throw TypeError(std::string("binder over non-variable in ") + name);
  if (!(body.type() == o())) throw TypeError("quantified body is not a formula");
  Term lam = Term::abs(var, body);
  Term q = Term::constant(name, Type::arrow(lam.type(), o()));
  return Term::app(q, lam);
}

Term schematic(const char* name, const Term& index, const Term& lower, const Term& upper, const Term& body) {
  if (!index.is_var() || !(index.type() == w())) throw TypeError("schematic index must be a parameter variable");
  if (!(lower.type() == w()) || !(upper.type() == w())) throw TypeError("schematic bounds must be parameters");
  if (!(body.type() == o())) throw TypeError("schematic body is not a formula");
  Term lam = Term::abs(index, body);
  Type ty = Type::arrow(lam.type(), Type::arrow(w(), Type::arrow(w(), o())));
  return Term::app(Term::app(Term::app(Term::constant(name, ty), lam), lower), upper);
}

void require_formula(const Term& f) {
  if (!(f.type() == o())) throw TypeError("expected a formula, got a term of type " + f.type().str());
}

} // namespace

bool is_logical_symbol(const std::string& name) { return !name.empty() && name[0] == '$'; }

Term neg(const Term& f) { return Term::app(unary_op(sym::Neg), f); }
Term conj(const Term& a, const Term& b) { return Term::app(Term::app(binary_op(sym::And), a), b); }
Term disj(const Term& a, const Term& b) { return Term::app(Term::app(binary_op(sym::Or), a), b); }
Term imp(const Term& a, const Term& b) { return Term::app(Term::app(binary_op(sym::Imp), a), b); }
Term forall(const Term& var, const Term& body) { return binder(sym::All, var, body); }
Term exists(const Term& var, const Term& body) { return binder(sym::Ex, var, body); }
Term big_and(const Term& index, const Term& lower, const Term& upper, const Term& body) {
  return schematic(sym::BigAnd, index, lower, upper, body);
}
Term big_or(const Term& index, const Term& lower, const Term& upper, const Term& body) {
  return schematic(sym::BigOr, index, lower, upper, body);
}

Term atom(const std::string& pred, const std::vector<Term>& args) {
  std::vector<Type> tys;
  for (const auto& a : args) tys.push_back(a.type());
  return apply_args(Term::constant(pred, arrows(tys, o())), args);
}

const char* formula_kind_name(FormulaKind k) {
  switch (k) {
    case FormulaKind::Atom: return "atom";
    case FormulaKind::Neg: return "neg";
    case FormulaKind::And: return "and";
    case FormulaKind::Or: return "or";
    case FormulaKind::Imp: return "imp";
    case FormulaKind::All: return "all";
    case FormulaKind::Ex: return "ex";
    case FormulaKind::BigAnd: return "bigand";
    case FormulaKind::BigOr: return "bigor";
  }
  return "?";
}

FormulaView view(const Term& f) {
  require_formula(f);
  Spine sp = spine(f);
  if (sp.head.is_const() && is_logical_symbol(sp.head.name())) {
    const std::string& n = sp.head.name();
    const auto& a = sp.args;
    if (n == sym::Neg && a.size() == 1) return {FormulaKind::Neg, a[0], {}, {}, {}, {}};
    if (a.size() == 2) {
      if (n == sym::And) return {FormulaKind::And, a[0], a[1], {}, {}, {}};
      if (n == sym::Or) return {FormulaKind::Or, a[0], a[1], {}, {}, {}};
      if (n == sym::Imp) return {FormulaKind::Imp, a[0], a[1], {}, {}, {}};
    }
    if (a.size() == 1 && a[0].is_abs()) {
      if (n == sym::All) return {FormulaKind::All, a[0].body(), {}, a[0].bound(), {}, {}};
      if (n == sym::Ex) return {FormulaKind::Ex, a[0].body(), {}, a[0].bound(), {}, {}};
    }
    if (a.size() == 3 && a[0].is_abs()) {
      if (n == sym::BigAnd) return {FormulaKind::BigAnd, a[0].body(), {}, a[0].bound(), a[1], a[2]};
      if (n == sym::BigOr) return {FormulaKind::BigOr, a[0].body(), {}, a[0].bound(), a[1], a[2]};
    }
    throw TypeError("malformed use of " + n);
  }
  return {FormulaKind::Atom, f, {}, {}, {}, {}};
}

bool is_atom(const Term& f) { return view(f).kind == FormulaKind::Atom; }

bool is_binary(FormulaKind k) { return k == FormulaKind::And || k == FormulaKind::Or || k == FormulaKind::Imp; }
bool is_quantifier(FormulaKind k) { return k == FormulaKind::All || k == FormulaKind::Ex; }
bool is_schematic(FormulaKind k) { return k == FormulaKind::BigAnd || k == FormulaKind::BigOr; }

namespace {
bool no_kind(const Term& f, bool (*bad)(FormulaKind)) {
  FormulaView v = view(f);
  if (bad(v.kind)) return false;
  if (v.kind == FormulaKind::Atom) return true;
  if (!no_kind(v.left, bad)) return false;
  return !v.right || no_kind(*v.right, bad);
}
bool quant_or_schema(FormulaKind k) { return is_quantifier(k) || is_schematic(k); }
} // namespace

bool quantifier_free(const Term& f) { return no_kind(f, quant_or_schema); }
bool schema_free(const Term& f) { return no_kind(f, is_schematic); }

int logical_depth(const Term& f) {
  FormulaView v = view(f);
  if (v.kind == FormulaKind::Atom) return 0;
  int d = logical_depth(v.left);
  if (v.right) d = std::max(d, logical_depth(*v.right));
  return d + 1;
}

namespace {
void atoms_rec(const Term& f, std::vector<Term>& out) {
  FormulaView v = view(f);
  if (v.kind == FormulaKind::Atom) {
    if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
    return;
  }
  atoms_rec(v.left, out);
  if (v.right) atoms_rec(*v.right, out);
}
} // namespace

std::vector<Term> atoms_of(const Term& f) {
  std::vector<Term> out;
  atoms_rec(f, out);
  return out;
}

Term instantiate_body(const FormulaView& v, const Term& t) {
  if (!v.var) throw std::logic_error("instantiate_body on a non-binder");
  return substitute(v.left, Substitution{{*v.var, t}});
}

} // namespace proofbench::kernel
