#include "proofbench/kernel/param.hpp"

#include "proofbench/kernel/formula.hpp"
#include "proofbench/kernel/substitution.hpp"

namespace proofbench::kernel {

namespace {
const Type& w() {
  static const Type t = Type::param();
  return t;
}
Term succ_const() { return Term::constant(sym::Succ, Type::arrow(w(), w())); }
} // namespace

Term param_zero() { return Term::constant("0", w()); }
Term param_succ(const Term& e) { return Term::app(succ_const(), e); }

Term param_numeral(std::uint64_t n) {
  Term t = param_zero();
  for (std::uint64_t i = 0; i < n; ++i) t = param_succ(t);
  return t;
}

Term param_var(const std::string& name) { return Term::var(name, w()); }

Term param_add(const Term& a, const Term& b) {
  ParamShape sa = param_shape(a), sb = param_shape(b);
  if (sb.base && sa.base) throw TypeError("parameter sum needs a ground operand");
  const Term& base = sb.base ? b : a;
  std::uint64_t n = sb.base ? sa.offset : sb.offset;
  Term t = base;
  for (std::uint64_t i = 0; i < n; ++i) t = param_succ(t);
  return t;
}

bool is_param_expr(const Term& e) {
  if (!(e.type() == w())) return false;
  try {
    param_shape(e);
    return true;
  } catch (const TypeError&) {
    return false;
  }
}

ParamShape param_shape(const Term& e) {
  ParamShape s;
  const Term* cur = &e;
  while (cur->is_app()) {
    if (!cur->fn().is_const() || cur->fn().name() != sym::Succ) throw TypeError("not a parameter expression");
    ++s.offset;
    cur = &cur->arg();
  }
  if (!(cur->type() == w())) throw TypeError("not a parameter expression");
  if (cur->is_const() && cur->name() == "0") return s;
  if (cur->is_var() || cur->is_const()) {
    s.base = *cur;
    return s;
  }
  throw TypeError("not a parameter expression");
}

std::uint64_t eval_param(const Term& e, const ParamEnv& env) {
  ParamShape s = param_shape(e);
  if (!s.base) return s.offset;
  auto it = env.find(s.base->name());
  if (!s.base->is_var() || it == env.end()) throw UnboundParam(s.base->name());
  return it->second + s.offset;
}

namespace {

ParamEnv shadow(const ParamEnv& env, const Term& bound) {
  if (!(bound.type() == w()) || !env.count(bound.name())) return env;
  ParamEnv e = env;
  e.erase(bound.name());
  return e;
}

} // namespace

Term evaluate_params(const Term& t, const ParamEnv& env) {
  if (t.type() == w() && is_param_expr(t)) {
    ParamShape s = param_shape(t);
    if (!s.base) return t;
    if (s.base->is_var() && env.count(s.base->name())) return param_numeral(env.at(s.base->name()) + s.offset);
    return t;
  }
  switch (t.kind()) {
    case Term::Kind::Var:
    case Term::Kind::Const:
      return t;
    case Term::Kind::App:
      return Term::app(evaluate_params(t.fn(), env), evaluate_params(t.arg(), env));
    case Term::Kind::Abs:
      return Term::abs(t.bound(), evaluate_params(t.body(), shadow(env, t.bound())));
  }
  return t;
}

Term unfold_schema_connective(const Term& f, const ParamEnv& env) {
  FormulaView v = view(f);
  switch (v.kind) {
    case FormulaKind::Atom:
      return evaluate_params(f, env);
    case FormulaKind::Neg:
      return neg(unfold_schema_connective(v.left, env));
    case FormulaKind::And:
      return conj(unfold_schema_connective(v.left, env), unfold_schema_connective(*v.right, env));
    case FormulaKind::Or:
      return disj(unfold_schema_connective(v.left, env), unfold_schema_connective(*v.right, env));
    case FormulaKind::Imp:
      return imp(unfold_schema_connective(v.left, env), unfold_schema_connective(*v.right, env));
    case FormulaKind::All:
      return forall(*v.var, unfold_schema_connective(v.left, shadow(env, *v.var)));
    case FormulaKind::Ex:
      return exists(*v.var, unfold_schema_connective(v.left, shadow(env, *v.var)));
    case FormulaKind::BigAnd:
    case FormulaKind::BigOr: {
      std::uint64_t lo = eval_param(*v.lower, env);
      std::uint64_t hi = eval_param(*v.upper, env);
      if (lo > hi) throw EmptyRange(lo, hi);
      ParamEnv inner = shadow(env, *v.var);
      auto instance = [&](std::uint64_t n) {
        return unfold_schema_connective(instantiate_body(v, param_numeral(n)), inner);
      };
      Term acc = instance(lo);
      for (std::uint64_t n = lo + 1; n <= hi; ++n)
        acc = v.kind == FormulaKind::BigAnd ? conj(acc, instance(n)) : disj(acc, instance(n));
      return acc;
    }
  }
  return f;
}

std::optional<Term> big_and_step(const Term& f) {
  FormulaView v = view(f);
  if (v.kind != FormulaKind::BigAnd) return std::nullopt;
  if (*v.lower == *v.upper) return instantiate_body(v, *v.lower);
  ParamShape lo = param_shape(*v.lower), hi = param_shape(*v.upper);
  if (hi.offset == 0) return std::nullopt;
  bool same_base = (!lo.base && !hi.base) || (lo.base && hi.base && *lo.base == *hi.base);
  if (same_base && lo.offset > hi.offset) return std::nullopt;
  Term pred = v.upper->arg();
  return conj(big_and(*v.var, *v.lower, pred, v.left), instantiate_body(v, *v.upper));
}

Term big_and_normal(const Term& f) {
  FormulaView v = view(f);
  switch (v.kind) {
    case FormulaKind::Atom:
      return f;
    case FormulaKind::Neg:
      return neg(big_and_normal(v.left));
    case FormulaKind::And:
      return conj(big_and_normal(v.left), big_and_normal(*v.right));
    case FormulaKind::Or:
      return disj(big_and_normal(v.left), big_and_normal(*v.right));
    case FormulaKind::Imp:
      return imp(big_and_normal(v.left), big_and_normal(*v.right));
    case FormulaKind::All:
      return forall(*v.var, big_and_normal(v.left));
    case FormulaKind::Ex:
      return exists(*v.var, big_and_normal(v.left));
    case FormulaKind::BigOr:
      return big_or(*v.var, *v.lower, *v.upper, big_and_normal(v.left));
    case FormulaKind::BigAnd: {
      if (auto s = big_and_step(f)) return big_and_normal(*s);
      return big_and(*v.var, *v.lower, *v.upper, big_and_normal(v.left));
    }
  }
  return f;
}

} // namespace proofbench::kernel
