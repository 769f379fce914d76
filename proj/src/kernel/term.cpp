#include "proofbench/kernel/term.hpp"

#include <algorithm>
#include <unordered_set>

namespace proofbench::kernel {

struct Term::Node {
  Kind kind;
  std::string name;
  Type type;
  std::vector<Term> kids; // App: fn,arg  Abs: bound,body
  std::size_t hash = 0;   // alpha-invariant hash, closed part only
};

namespace {

constexpr std::size_t kMix = 0x9e3779b97f4a7c15ULL;

std::size_t combine(std::size_t h, std::size_t v) { return h ^ (v + kMix + (h << 6) + (h >> 2)); }

// Hash with bound variables replaced by their de Bruijn depth.
std::size_t nameless_hash(const Term& t, std::vector<const Term*>& binders) {
  if (binders.empty() && t.hash() != 0) return t.hash();
  switch (t.kind()) {
    case Term::Kind::Var: {
      for (std::size_t i = binders.size(); i-- > 0;) {
        const Term& b = *binders[i];
        if (b.name() == t.name() && b.type() == t.type()) return combine(17, binders.size() - i);
      }
      return combine(combine(23, std::hash<std::string>{}(t.name())), std::hash<std::string>{}(t.type().str()));
    }
    case Term::Kind::Const:
      return combine(combine(29, std::hash<std::string>{}(t.name())), std::hash<std::string>{}(t.type().str()));
    case Term::Kind::App:
      return combine(combine(31, nameless_hash(t.fn(), binders)), nameless_hash(t.arg(), binders));
    case Term::Kind::Abs: {
      binders.push_back(&t.bound());
      std::size_t h = combine(37, nameless_hash(t.body(), binders));
      binders.pop_back();
      return h;
    }
  }
  return 0;
}

using BinderStack = std::vector<std::pair<const Term*, const Term*>>;

bool same_var(const Term& a, const Term& b) { return a.name() == b.name() && a.type() == b.type(); }

bool alpha_equal(const Term& a, const Term& b, BinderStack& env) {
  if (env.empty() && a.node_id() == b.node_id()) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::Var: {
      for (std::size_t i = env.size(); i-- > 0;) {
        bool la = same_var(*env[i].first, a);
        bool lb = same_var(*env[i].second, b);
        if (la || lb) return la && lb;
      }
      return same_var(a, b);
    }
    case Term::Kind::Const:
      return a.name() == b.name() && a.type() == b.type();
    case Term::Kind::App:
      return alpha_equal(a.fn(), b.fn(), env) && alpha_equal(a.arg(), b.arg(), env);
    case Term::Kind::Abs: {
      if (!(a.bound().type() == b.bound().type())) return false;
      env.emplace_back(&a.bound(), &b.bound());
      bool r = alpha_equal(a.body(), b.body(), env);
      env.pop_back();
      return r;
    }
  }
  return false;
}

} // namespace

Term Term::var(std::string name, Type type) {
  auto n = std::make_shared<Node>(Node{Kind::Var, std::move(name), std::move(type), {}, 0});
  std::vector<const Term*> none;
  Term t(n);
  n->hash = nameless_hash(t, none);
  return t;
}

Term Term::constant(std::string name, Type type) {
  auto n = std::make_shared<Node>(Node{Kind::Const, std::move(name), std::move(type), {}, 0});
  std::vector<const Term*> none;
  Term t(n);
  n->hash = nameless_hash(t, none);
  return t;
}

Term Term::app(const Term& fn, const Term& arg) {
  const Type& ft = fn.type();
  if (!ft.is_arrow()) throw TypeError("cannot apply term of type " + ft.str());
  if (!(ft.from() == arg.type()))
    throw TypeError("argument type " + arg.type().str() + " does not match " + ft.from().str());
  auto n = std::make_shared<Node>(Node{Kind::App, {}, ft.to(), {fn, arg}, 0});
  Term t(n);
  std::vector<const Term*> none;
  n->hash = nameless_hash(t, none);
  return t;
}

Term Term::abs(const Term& bound, const Term& body) {
  if (!bound.is_var()) throw TypeError("abstraction over a non-variable");
  auto n = std::make_shared<Node>(Node{Kind::Abs, {}, Type::arrow(bound.type(), body.type()), {bound, body}, 0});
  Term t(n);
  std::vector<const Term*> none;
  n->hash = nameless_hash(t, none);
  return t;
}

Term::Kind Term::kind() const { return node_->kind; }

const std::string& Term::name() const {
  if (!is_var() && !is_const()) throw std::logic_error("name() of compound term");
  return node_->name;
}

const Type& Term::type() const { return node_->type; }

const Term& Term::fn() const {
  if (!is_app()) throw std::logic_error("fn() of non-application");
  return node_->kids[0];
}
const Term& Term::arg() const {
  if (!is_app()) throw std::logic_error("arg() of non-application");
  return node_->kids[1];
}
const Term& Term::bound() const {
  if (!is_abs()) throw std::logic_error("bound() of non-abstraction");
  return node_->kids[0];
}
const Term& Term::body() const {
  if (!is_abs()) throw std::logic_error("body() of non-abstraction");
  return node_->kids[1];
}

std::size_t Term::hash() const { return node_->hash; }

bool Term::identical(const Term& other) const {
  if (node_ == other.node_) return true;
  if (kind() != other.kind()) return false;
  switch (kind()) {
    case Kind::Var:
    case Kind::Const:
      return name() == other.name() && type() == other.type();
    case Kind::App:
      return fn().identical(other.fn()) && arg().identical(other.arg());
    case Kind::Abs:
      return bound().identical(other.bound()) && body().identical(other.body());
  }
  return false;
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash()) return false;
  BinderStack env;
  return alpha_equal(a, b, env);
}

Term apply_args(const Term& head, const std::vector<Term>& args) {
  Term t = head;
  for (const auto& a : args) t = Term::app(t, a);
  return t;
}

Spine spine(const Term& t) {
  std::vector<Term> args;
  const Term* cur = &t;
  while (cur->is_app()) {
    args.push_back(cur->arg());
    cur = &cur->fn();
  }
  std::reverse(args.begin(), args.end());
  return Spine{*cur, std::move(args)};
}

namespace {

void free_vars_rec(const Term& t, std::vector<const Term*>& bound, std::vector<Term>& out) {
  switch (t.kind()) {
    case Term::Kind::Var: {
      for (auto* b : bound)
        if (same_var(*b, t)) return;
      for (const auto& o : out)
        if (same_var(o, t)) return;
      out.push_back(t);
      return;
    }
    case Term::Kind::Const:
      return;
    case Term::Kind::App:
      free_vars_rec(t.fn(), bound, out);
      free_vars_rec(t.arg(), bound, out);
      return;
    case Term::Kind::Abs:
      bound.push_back(&t.bound());
      free_vars_rec(t.body(), bound, out);
      bound.pop_back();
      return;
  }
}

} // namespace

std::vector<Term> free_vars(const Term& t) {
  std::vector<const Term*> bound;
  std::vector<Term> out;
  free_vars_rec(t, bound, out);
  return out;
}

bool occurs_free(const Term& var, const Term& t) {
  for (const auto& v : free_vars(t))
    if (same_var(v, var)) return true;
  return false;
}

void collect_names(const Term& t, std::vector<std::string>& out) {
  switch (t.kind()) {
    case Term::Kind::Var:
    case Term::Kind::Const:
      out.push_back(t.name());
      return;
    case Term::Kind::App:
      collect_names(t.fn(), out);
      collect_names(t.arg(), out);
      return;
    case Term::Kind::Abs:
      collect_names(t.bound(), out);
      collect_names(t.body(), out);
      return;
  }
}

namespace {
void constants_rec(const Term& t, std::vector<Term>& out) {
  switch (t.kind()) {
    case Term::Kind::Var:
      return;
    case Term::Kind::Const:
      if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
      return;
    case Term::Kind::App:
      constants_rec(t.fn(), out);
      constants_rec(t.arg(), out);
      return;
    case Term::Kind::Abs:
      constants_rec(t.body(), out);
      return;
  }
}
} // namespace

std::vector<Term> constants(const Term& t) {
  std::vector<Term> out;
  constants_rec(t, out);
  return out;
}

std::size_t symbol_count(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Var:
    case Term::Kind::Const:
      return 1;
    case Term::Kind::App:
      return symbol_count(t.fn()) + symbol_count(t.arg());
    case Term::Kind::Abs:
      return symbol_count(t.body());
  }
  return 0;
}

std::string fresh_name(const std::string& base, const std::function<bool(const std::string&)>& used) {
  std::string n = base + "'";
  while (used(n)) n += "'";
  return n;
}

} // namespace proofbench::kernel
