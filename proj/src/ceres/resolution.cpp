#include "proofbench/ceres/resolution.hpp"

#include <chrono>
#include <map>
#include <queue>
#include <set>

#include "proofbench/kernel/formula.hpp"
#include "proofbench/kernel/render.hpp"

namespace proofbench::ceres {

using calculus::Side;

namespace {

using Bindings = std::map<std::string, Term>;

Term walk(Term t, const Bindings& b) {
  while (t.is_var()) {
    auto it = b.find(t.name());
    if (it == b.end()) break;
    t = it->second;
  }
  return t;
}

bool occurs(const std::string& v, const Term& t, const Bindings& b) {
  Term u = walk(t, b);
  if (u.is_var()) return u.name() == v;
  if (u.is_app()) return occurs(v, u.fn(), b) || occurs(v, u.arg(), b);
  return false;
}

bool unify_into(const Term& x, const Term& y, Bindings& b) {
  Term a = walk(x, b), c = walk(y, b);
  if (a.is_var() && c.is_var() && a.name() == c.name()) return a.type() == c.type();
  if (a.is_var()) {
    if (occurs(a.name(), c, b)) return false;
    b.emplace(a.name(), c);
    return true;
  }
  if (c.is_var()) return unify_into(c, a, b);
  if (a.is_app() && c.is_app()) return unify_into(a.fn(), c.fn(), b) && unify_into(a.arg(), c.arg(), b);
  return a == c;
}

Term resolve(const Term& t, const Bindings& b) {
  Term u = walk(t, b);
  if (u.is_app()) return Term::app(resolve(u.fn(), b), resolve(u.arg(), b));
  return u;
}

Clause apply(const Clause& c, const Substitution& s) {
  Clause out;
  for (const auto& a : c.ant) out.ant.push_back(kernel::substitute(a, s));
  for (const auto& a : c.suc) out.suc.push_back(kernel::substitute(a, s));
  return out;
}

std::vector<Term> clause_vars(const Clause& c) {
  std::vector<Term> out;
  for (const auto* side : {&c.ant, &c.suc})
    for (const auto& a : *side)
      for (const auto& v : kernel::free_vars(a))
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  return out;
}

Substitution rename_vars(const Clause& c, const std::string& prefix) {
  Substitution s;
  std::size_t k = 0;
  for (const auto& v : clause_vars(c)) s.bind(v, Term::var(prefix + std::to_string(k++), v.type()));
  return s;
}

std::pair<Clause, Substitution> normalize(const Clause& c) {
  Substitution s = rename_vars(c, "V");
  return {apply(c, s), s};
}

bool tautology(const Clause& c) {
  for (const auto& a : c.ant)
    if (std::find(c.suc.begin(), c.suc.end(), a) != c.suc.end()) return true;
  return false;
}

std::string key(const Clause& c) {
  std::string k;
  for (const auto& a : c.ant) k += kernel::plain(a) + ";";
  k += "|";
  for (const auto& a : c.suc) k += kernel::plain(a) + ";";
  return k;
}

std::size_t weight(const Clause& c) {
  std::size_t w = 0;
  for (const auto* side : {&c.ant, &c.suc})
    for (const auto& a : *side) w += kernel::symbol_count(a);
  return w;
}

template <class V>
V without(const V& v, std::size_t i) {
  V out = v;
  out.erase(out.begin() + static_cast<long>(i));
  return out;
}

// Resolvent of left (suc literal i) and right (ant literal j); right is
// expected renamed apart already.
Clause resolvent(const Clause& l, const Clause& r, std::size_t i, std::size_t j, const Substitution& mgu) {
  Clause out;
  for (const auto& a : l.ant) out.ant.push_back(kernel::substitute(a, mgu));
  for (const auto& a : without(r.ant, j)) out.ant.push_back(kernel::substitute(a, mgu));
  for (const auto& a : without(l.suc, i)) out.suc.push_back(kernel::substitute(a, mgu));
  for (const auto& a : r.suc) out.suc.push_back(kernel::substitute(a, mgu));
  return out;
}

Clause factor(const Clause& c, Side side, std::size_t j, const Substitution& mgu) {
  Clause out = apply(c, mgu);
  auto& v = side == Side::Ant ? out.ant : out.suc;
  v.erase(v.begin() + static_cast<long>(j));
  return out;
}

class Saturator {
public:
  Saturator(const Limits& limits, const transform::CancelToken* cancel)
      : limits_(limits), cancel_(cancel), start_(std::chrono::steady_clock::now()) {}

  RefuteResult run(const ClauseSet& cs) {
    for (std::size_t k = 0; k < cs.size(); ++k) {
      auto [c, ren] = normalize(cs[k]);
      ResolutionStep s{StepKind::Input, c};
      s.input = k;
      s.rename = ren;
      add(std::move(s));
    }
    while (!passive_.empty()) {
      if (cancel_) cancel_->check();
      if (steps_.size() > limits_.max_clauses || elapsed() > limits_.max_seconds) return limit();
      auto [w, idx] = passive_.top();
      passive_.pop();
      const Clause given = steps_[idx].clause;
      if (given.empty()) return refuted(idx);
      active_.push_back(idx);
      factors(idx);
      for (std::size_t a : std::vector<std::size_t>(active_)) {
        resolve_pair(idx, a);
        if (a != idx) resolve_pair(a, idx);
      }
    }
    RefuteResult r{RefuteStatus::Saturated, std::nullopt, {}, steps_.size()};
    for (std::size_t a : active_) r.saturated.push_back(steps_[a].clause);
    return r;
  }

private:
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

  void add(ResolutionStep s) {
    if (tautology(s.clause)) return;
    if (!seen_.insert(key(s.clause)).second) return;
    std::size_t w = weight(s.clause);
    steps_.push_back(std::move(s));
    passive_.push({w, steps_.size() - 1});
  }

  void factors(std::size_t idx) {
    for (Side side : {Side::Ant, Side::Suc}) {
      const auto lits = side == Side::Ant ? steps_[idx].clause.ant : steps_[idx].clause.suc;
      for (std::size_t i = 0; i < lits.size(); ++i)
        for (std::size_t j = i + 1; j < lits.size(); ++j) {
          auto mgu = unify(lits[i], lits[j]);
          if (!mgu) continue;
          auto [c, ren] = normalize(factor(steps_[idx].clause, side, j, *mgu));
          ResolutionStep s{StepKind::Factor, c};
          s.left = idx;
          s.lit_left = i;
          s.lit_right = j;
          s.side = side;
          s.unifier = *mgu;
          s.rename = ren;
          add(std::move(s));
        }
    }
  }

  void resolve_pair(std::size_t li, std::size_t ri) {
    const Clause l = steps_[li].clause;
    Substitution apart = rename_vars(steps_[ri].clause, "W");
    const Clause r = apply(steps_[ri].clause, apart);
    for (std::size_t i = 0; i < l.suc.size(); ++i)
      for (std::size_t j = 0; j < r.ant.size(); ++j) {
        auto mgu = unify(l.suc[i], r.ant[j]);
        if (!mgu) continue;
        auto [c, ren] = normalize(resolvent(l, r, i, j, *mgu));
        ResolutionStep s{StepKind::Resolvent, c};
        s.left = li;
        s.right = ri;
        s.lit_left = i;
        s.lit_right = j;
        s.apart = apart;
        s.unifier = *mgu;
        s.rename = ren;
        s.atom = kernel::substitute(l.suc[i], *mgu);
        add(std::move(s));
      }
  }

  RefuteResult limit() { return {RefuteStatus::LimitReached, std::nullopt, {}, steps_.size()}; }

  // Keeps the steps the empty clause depends on, renumbered in order.
  RefuteResult refuted(std::size_t root) {
    std::set<std::size_t> need;
    std::vector<std::size_t> todo{root};
    while (!todo.empty()) {
      std::size_t i = todo.back();
      todo.pop_back();
      if (!need.insert(i).second) continue;
      const auto& s = steps_[i];
      if (s.kind != StepKind::Input) todo.push_back(s.left);
      if (s.kind == StepKind::Resolvent) todo.push_back(s.right);
    }
    std::map<std::size_t, std::size_t> index;
    ResolutionProof p;
    for (std::size_t i : need) {
      index[i] = p.steps.size();
      ResolutionStep s = steps_[i];
      if (s.kind != StepKind::Input) s.left = index.at(s.left);
      if (s.kind == StepKind::Resolvent) s.right = index.at(s.right);
      p.steps.push_back(std::move(s));
    }
    p.root = index.at(root);
    return {RefuteStatus::Refuted, std::move(p), {}, steps_.size()};
  }

  Limits limits_;
  const transform::CancelToken* cancel_;
  std::chrono::steady_clock::time_point start_;
  std::vector<ResolutionStep> steps_;
  std::vector<std::size_t> active_;
  std::set<std::string> seen_;
  using Item = std::pair<std::size_t, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> passive_;
};

} // namespace

bool is_clause(const FSequent& s) {
  for (const auto* side : {&s.ant, &s.suc})
    for (const auto& f : *side)
      if (!kernel::is_atom(f)) return false;
  return true;
}

std::optional<Substitution> unify(const Term& a, const Term& b) {
  Bindings bind;
  if (!unify_into(a, b, bind)) return std::nullopt;
  Substitution s;
  for (const auto& [name, t] : bind) {
    s.bind(Term::var(name, t.type()), resolve(t, bind));
  }
  return s;
}

const char* refute_status_name(RefuteStatus s) {
  switch (s) {
    case RefuteStatus::Refuted: return "refuted";
    case RefuteStatus::Saturated: return "saturated";
    case RefuteStatus::LimitReached: return "limit-reached";
  }
  return "?";
}

RefuteResult refute(const ClauseSet& cs, const Limits& limits, const transform::CancelToken* cancel) {
  for (const auto& c : cs)
    if (!is_clause(c)) throw transform::PreconditionError("not-clausal", "refute: not a clause: " + calculus::plain(c));
  return Saturator(limits, cancel).run(cs);
}

bool verify_resolution_proof(const ClauseSet& cs, const ResolutionProof& p, std::string* why) {
  auto fail = [&](std::size_t i, const std::string& m) {
    if (why) *why = "step " + std::to_string(i) + ": " + m;
    return false;
  };
  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    const auto& s = p.steps[i];
    Clause expect;
    switch (s.kind) {
      case StepKind::Input:
        if (s.input >= cs.size()) return fail(i, "input index out of range");
        expect = cs[s.input];
        break;
      case StepKind::Factor: {
        if (s.left >= i) return fail(i, "premise does not precede step");
        const auto& c = p.steps[s.left].clause;
        const auto& lits = s.side == Side::Ant ? c.ant : c.suc;
        if (s.lit_left >= lits.size() || s.lit_right >= lits.size() || s.lit_left == s.lit_right)
          return fail(i, "literal index out of range");
        if (kernel::substitute(lits[s.lit_left], s.unifier) != kernel::substitute(lits[s.lit_right], s.unifier))
          return fail(i, "unifier does not unify the factored literals");
        expect = factor(c, s.side, s.lit_right, s.unifier);
        break;
      }
      case StepKind::Resolvent: {
        if (s.left >= i || s.right >= i) return fail(i, "premise does not precede step");
        const auto& l = p.steps[s.left].clause;
        Clause r = apply(p.steps[s.right].clause, s.apart);
        if (s.lit_left >= l.suc.size() || s.lit_right >= r.ant.size()) return fail(i, "literal index out of range");
        for (const auto& v : clause_vars(r))
          for (const auto& w : clause_vars(l))
            if (v == w) return fail(i, "premises not renamed apart");
        if (kernel::substitute(l.suc[s.lit_left], s.unifier) != kernel::substitute(r.ant[s.lit_right], s.unifier))
          return fail(i, "unifier does not unify the resolved literals");
        expect = resolvent(l, r, s.lit_left, s.lit_right, s.unifier);
        break;
      }
    }
    if (apply(expect, s.rename) != s.clause) return fail(i, "clause does not follow from its premises");
  }
  if (p.root >= p.steps.size()) return fail(p.root, "root out of range");
  if (!p.steps[p.root].clause.empty()) return fail(p.root, "root is not the empty clause");
  return true;
}

} // namespace proofbench::ceres
