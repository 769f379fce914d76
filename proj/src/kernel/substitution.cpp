#include "proofbench/kernel/substitution.hpp"

#include <set>
#include <stdexcept>

namespace proofbench::kernel {

namespace {
bool same_var(const Term& a, const Term& b) { return a.name() == b.name() && a.type() == b.type(); }
} // namespace

Substitution::Substitution(std::initializer_list<std::pair<Term, Term>> items) {
  for (const auto& [v, t] : items) bind(v, t);
}

void Substitution::bind(const Term& var, const Term& value) {
  if (!var.is_var()) throw std::invalid_argument("substitution domain must be variables");
  if (!(var.type() == value.type()))
    throw TypeError("cannot substitute " + value.type().str() + " for variable " + var.name() + " : " +
                    var.type().str());
  if (lookup(var)) throw std::invalid_argument("variable " + var.name() + " bound twice");
  items_.emplace_back(var, value);
}

void Substitution::set(const Term& var, const Term& value) {
  for (auto& [v, t] : items_)
    if (same_var(v, var)) {
      if (!(var.type() == value.type())) throw TypeError("type mismatch rebinding " + var.name());
      t = value;
      return;
    }
  bind(var, value);
}

const Term* Substitution::lookup(const Term& var) const {
  for (const auto& [v, t] : items_)
    if (same_var(v, var)) return &t;
  return nullptr;
}

Substitution Substitution::without(const Term& var) const {
  Substitution r;
  for (const auto& [v, t] : items_)
    if (!same_var(v, var)) r.items_.emplace_back(v, t);
  return r;
}

Substitution Substitution::compose(const Substitution& other) const {
  Substitution r;
  for (const auto& [v, t] : items_) r.items_.emplace_back(v, substitute(t, other));
  for (const auto& [v, t] : other.items_)
    if (!lookup(v)) r.items_.emplace_back(v, t);
  return r;
}

bool operator==(const Substitution& a, const Substitution& b) {
  if (a.size() != b.size()) return false;
  for (const auto& [v, t] : a.items_) {
    const Term* o = b.lookup(v);
    if (!o || !(*o == t)) return false;
  }
  return true;
}

namespace {

void names_of(const Term& t, std::set<std::string>& out) {
  std::vector<std::string> v;
  collect_names(t, v);
  out.insert(v.begin(), v.end());
}

Term subst_rec(const Term& t, const Substitution& s) {
  if (s.empty()) return t;
  switch (t.kind()) {
    case Term::Kind::Var: {
      const Term* r = s.lookup(t);
      return r ? *r : t;
    }
    case Term::Kind::Const:
      return t;
    case Term::Kind::App: {
      Term f = subst_rec(t.fn(), s);
      Term a = subst_rec(t.arg(), s);
      if (f.node_id() == t.fn().node_id() && a.node_id() == t.arg().node_id()) return t;
      return Term::app(f, a);
    }
    case Term::Kind::Abs: {
      const Term& x = t.bound();
      Substitution inner = s.without(x);
      // Only bindings for variables free in the body matter.
      Substitution live;
      for (const auto& [v, r] : inner.items())
        if (occurs_free(v, t.body())) live.bind(v, r);
      if (live.empty()) return t;
      bool capture = false;
      for (const auto& [v, r] : live.items())
        if (occurs_free(x, r)) capture = true;
      if (!capture) return Term::abs(x, subst_rec(t.body(), live));
      std::set<std::string> used;
      names_of(t.body(), used);
      for (const auto& [v, r] : live.items()) names_of(r, used);
      Term y = Term::var(fresh_name(x.name(), [&](const std::string& n) { return used.count(n) > 0; }), x.type());
      live.bind(x, y);
      return Term::abs(y, subst_rec(t.body(), live));
    }
  }
  return t;
}

} // namespace

Term substitute(const Term& t, const Substitution& s) { return subst_rec(t, s); }

Term beta_normalize(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Var:
    case Term::Kind::Const:
      return t;
    case Term::Kind::Abs:
      return Term::abs(t.bound(), beta_normalize(t.body()));
    case Term::Kind::App: {
      Term f = beta_normalize(t.fn());
      Term a = beta_normalize(t.arg());
      if (f.is_abs()) return beta_normalize(substitute(f.body(), Substitution{{f.bound(), a}}));
      return Term::app(f, a);
    }
  }
  return t;
}

} // namespace proofbench::kernel
