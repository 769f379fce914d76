#include <doctest.h>

#include <random>
#include <set>

#include "corpus.hpp"
#include "proofbench/calculus/check.hpp"
#include "proofbench/ceres/ceres.hpp"
#include "proofbench/kernel/formula.hpp"
#include "proofbench/kernel/render.hpp"
#include "proofbench/parsers/formula.hpp"
#include "proofbench/parsers/hlks.hpp"
#include "proofbench/parsers/io.hpp"
#include "truth_table.hpp"

using namespace proofbench;
using namespace proofbench::kernel;
using namespace proofbench::calculus;
using namespace proofbench::ceres;

namespace {

ProofDatabase load(const std::string& name) { return parsers::load_database(std::string(PB_TEST_DATA) + "/" + name); }

FSequent seq(const std::string& text) { return parsers::parse_formula_sequent(text); }

std::set<std::string> as_set(const ClauseSet& cs) {
  std::set<std::string> out;
  for (const auto& c : cs) {
    auto a = c.ant, s = c.suc;
    auto by_text = [](const Term& x, const Term& y) { return plain(x) < plain(y); };
    std::sort(a.begin(), a.end(), by_text);
    std::sort(s.begin(), s.end(), by_text);
    out.insert(calculus::plain(FSequent{a, s}));
  }
  return out;
}

// Five nodes: a cut on P above an AndR.
LKProof cut_under_and() {
  IdGen gen;
  Term p = atom("P", {}), q = atom("Q", {});
  LKProof l = axiom(gen, p), r = axiom(gen, p);
  LKProof c = cut(gen, l, r, l->conclusion.suc[0].id, r->conclusion.ant[0].id);
  LKProof aq = axiom(gen, q);
  return and_r(gen, c, aq, c->conclusion.suc[0].id, aq->conclusion.suc[0].id);
}

bool sub_multiset(std::vector<Term> small, std::vector<Term> big) {
  for (const auto& f : small) {
    auto it = std::find(big.begin(), big.end(), f);
    if (it == big.end()) return false;
    big.erase(it);
  }
  return true;
}

std::size_t binary_inferences(const LKProof& p) {
  std::size_t n = 0;
  preorder(p, [&](const LKProof& q) { n += q->premises.size() == 2; });
  return n;
}

CeresStruct random_struct(std::mt19937& rng, int depth) {
  static const char* atoms[] = {"A", "B", "C"};
  std::uniform_int_distribution<int> d(0, 2);
  if (depth == 0 || d(rng) == 0) {
    Clause c;
    for (int i = 0; i < d(rng); ++i) c.ant.push_back(atom(atoms[d(rng)], {}));
    for (int i = 0; i < d(rng); ++i) c.suc.push_back(atom(atoms[d(rng)], {}));
    return struct_leaf(c);
  }
  auto l = random_struct(rng, depth - 1), r = random_struct(rng, depth - 1);
  return d(rng) ? struct_plus(l, r) : struct_times(l, r);
}

} // namespace

TEST_CASE("struct of E1") {
  auto s = extract_struct(load("e1.lks").find("E1")->proof);
  REQUIRE(s->kind == StructKind::Plus);
  CHECK(s->left->kind == StructKind::Leaf);
  CHECK(s->left->clause == seq("|- P"));
  CHECK(s->right->clause == seq("P |-"));
  CHECK(plain(s) == "([|- P] + [P |-])");
  auto cs = char_clause_set(s);
  REQUIRE(cs.size() == 2);
  CHECK(cs[0] == seq("|- P"));
  CHECK(cs[1] == seq("P |-"));
}

TEST_CASE("struct of a cut-free proof is the empty leaf") {
  IdGen gen;
  auto s = extract_struct(axiom(gen, atom("P", {})));
  CHECK(s->kind == StructKind::Leaf);
  CHECK(s->clause.empty());
  auto cs = char_clause_set(s);
  REQUIRE(cs.size() == 1);
  CHECK(cs[0].empty());
}

TEST_CASE("struct mirrors branching above an AndR") {
  LKProof p = cut_under_and();
  REQUIRE(check_proof(p).ok());
  REQUIRE(node_count(p) == 5);
  auto s = extract_struct(p);
  REQUIRE(s->kind == StructKind::Times);
  CHECK(s->left->kind == StructKind::Plus);
  CHECK(s->right->kind == StructKind::Leaf);
  CHECK(s->right->clause.empty());
  CHECK(as_set(char_clause_set(s)) == std::set<std::string>{"|- P", "P |-"});
  auto pr = compute_projections(p);
  REQUIRE(pr.size() == 2);
  for (const auto& x : pr) {
    CHECK(check_proof(x.proof).ok());
    CHECK(is_cut_free(x.proof));
  }
}

TEST_CASE("clause set equations") {
  auto p = struct_leaf(seq("|- P")), np = struct_leaf(seq("P |-")), q = struct_leaf(seq("|- Q"));
  CHECK(char_clause_set(struct_plus(p, np)) == ClauseSet{seq("|- P"), seq("P |-")});
  CHECK(char_clause_set(struct_times(p, q)) == ClauseSet{seq("|- P, Q")});
  CHECK(char_clause_set(struct_plus(p, p)).size() == 1);
  CHECK(latex(struct_times(p, q)) == "(\\vdash P \\otimes \\vdash Q)");
}

TEST_CASE("clause sets distribute over Plus") {
  std::mt19937 rng(7);
  for (int i = 0; i < 300; ++i) {
    auto a = random_struct(rng, 2), b = random_struct(rng, 2), c = random_struct(rng, 2);
    auto lhs = as_set(char_clause_set(struct_times(a, struct_plus(b, c))));
    auto r1 = as_set(char_clause_set(struct_times(a, b)));
    auto r2 = as_set(char_clause_set(struct_times(a, c)));
    r1.insert(r2.begin(), r2.end());
    CHECK(lhs == r1);
  }
}

TEST_CASE("unification") {
  const Type i = Type::individual();
  Term x = Term::var("x", i), y = Term::var("y", i), a = Term::constant("a", i), b = Term::constant("b", i);
  Term f = Term::constant("f", Type::arrow(i, i));
  auto s = unify(atom("P", {x}), atom("P", {Term::app(f, y)}));
  REQUIRE(s);
  CHECK(*s->lookup(x) == Term::app(f, y));
  CHECK_FALSE(unify(x, Term::app(f, x)));
  CHECK_FALSE(unify(a, b));
  auto t = unify(atom("Q", {x, a}), atom("Q", {y, x}));
  REQUIRE(t);
  CHECK(substitute(atom("Q", {x, a}), *t) == substitute(atom("Q", {y, x}), *t));
  CHECK(substitute(x, *t) == a);
  CHECK(substitute(y, *t) == a);
}

TEST_CASE("refuter examples") {
  ClauseSet pp{seq("|- P"), seq("P |-")};
  auto r = refute(pp);
  REQUIRE(r.status == RefuteStatus::Refuted);
  REQUIRE(r.proof->steps.size() == 3);
  const auto& root = r.proof->steps[r.proof->root];
  CHECK(root.kind == StepKind::Resolvent);
  CHECK(root.clause.empty());
  CHECK(plain(*root.atom) == "P");
  std::string why;
  CHECK_MESSAGE(verify_resolution_proof(pp, *r.proof, &why), why);

  auto sat = refute({seq("|- P")});
  CHECK(sat.status == RefuteStatus::Saturated);
  CHECK(sat.saturated.size() == 1);

  ClauseSet fx{seq("|- P(x)"), seq("P(f(y)) |-")};
  auto u = refute(fx);
  REQUIRE(u.status == RefuteStatus::Refuted);
  CHECK(verify_resolution_proof(fx, *u.proof));
  const auto& step = u.proof->steps[u.proof->root];
  REQUIRE(step.kind == StepKind::Resolvent);
  const auto& left = u.proof->steps[step.left].clause;
  Term lv = free_vars(left.suc[0]).at(0);
  // Independently: the unifier must send the left variable to f applied
  // to the (renamed) right variable and make both literals equal.
  Term right_lit = substitute(u.proof->steps[step.right].clause.ant[0], step.apart);
  CHECK(substitute(left.suc[0], step.unifier) == substitute(right_lit, step.unifier));
  Term image = substitute(lv, step.unifier);
  REQUIRE(image.is_app());
  CHECK(image.fn().name() == "f");
  CHECK(image.arg().is_var());
}

TEST_CASE("refuter factoring and limits") {
  ClauseSet fact{seq("|- P(x), P(y)"), seq("P(a) |-")};
  auto r = refute(fact);
  REQUIRE(r.status == RefuteStatus::Refuted);
  CHECK(verify_resolution_proof(fact, *r.proof));

  ClauseSet grow{seq("P(x) |- P(f(x))"), seq("|- P(a)")};
  auto g = refute(grow, Limits{50, 10.0});
  CHECK(g.status == RefuteStatus::LimitReached);

  transform::CancelToken tok;
  tok.cancel();
  CHECK_THROWS_AS(refute(grow, {}, &tok), transform::Cancelled);
  CHECK_THROWS_AS(refute({seq("|- P -> P")}), transform::PreconditionError);
}

TEST_CASE("projections of E1") {
  auto pr = compute_projections(load("e1.lks").find("E1")->proof);
  REQUIRE(pr.size() == 2);
  CHECK(pr[0].clause == seq("|- P"));
  CHECK(pr[1].clause == seq("P |-"));
  for (const auto& x : pr) {
    CHECK(x.proof->rule == RuleKind::Axiom);
    CHECK(x.proof->conclusion.formulas() == seq("P |- P"));
  }
}

TEST_CASE("projection of a cut-free proof is the proof") {
  LKProof q = load("e2.lks").find("E2")->proof;
  auto pr = compute_projections(q);
  REQUIRE(pr.size() == 1);
  CHECK(pr[0].clause.empty());
  CHECK(same_shape(pr[0].proof, q));
}

TEST_CASE("projections require skolemized input") {
  auto lemma = load("quantcut.lks").find("lemma")->proof;
  CHECK_NOTHROW(compute_projections(lemma));
  LKProof e4 = load("e4.lks").find("E4")->proof;
  try {
    compute_projections(e4);
    FAIL("expected a precondition error");
  } catch (const transform::PreconditionError& e) {
    CHECK(std::string(e.what()).find("exL") != std::string::npos);
  }
}

TEST_CASE("ceres on E1 and the psi schema") {
  LKProof e1 = load("e1.lks").find("E1")->proof;
  LKProof r = ceres_cut_elim(e1);
  CHECK(check_proof(r).ok());
  CHECK(has_only_atomic_cuts(r));
  CHECK(r->conclusion.formulas() == seq("P |- P"));

  auto fig = load("fig3.lks");
  LKProof p2 = instantiate_schema(fig, "psi", 2);
  LKProof c2 = ceres_cut_elim(p2);
  CHECK(check_proof(c2).str() == "");
  CHECK(has_only_atomic_cuts(c2));
  CHECK(c2->conclusion.formulas() == p2->conclusion.formulas());

  LKProof q = load("e2.lks").find("E2")->proof;
  CHECK(ceres_cut_elim(q) == q);
}

TEST_CASE("ceres contracts over the corpus") {
  for (const auto& [tag, p] : testing::first_order_corpus(PB_TEST_DATA)) {
    INFO(tag);
    auto s = extract_struct(p);
    CHECK(struct_binary_nodes(s) == binary_inferences(p));

    LKProof q = transform::skolemize(p);
    auto cs = char_clause_set(extract_struct(q));
    if (!is_cut_free(p)) {
      auto r = refute(cs, Limits{10000, 10.0});
      REQUIRE(r.status == RefuteStatus::Refuted);
      CHECK(verify_resolution_proof(cs, *r.proof));
    }

    auto pr = compute_projections(q);
    CHECK(pr.size() == cs.size());
    for (std::size_t i = 0; i < pr.size(); ++i) {
      CHECK(pr[i].clause == cs[i]);
      CHECK(is_cut_free(pr[i].proof));
      CHECK(check_proof(pr[i].proof).ok());
      FSequent end = pr[i].proof->conclusion.formulas();
      CHECK(sub_multiset(pr[i].clause.ant, end.ant));
      CHECK(sub_multiset(pr[i].clause.suc, end.suc));
      FSequent rest = end;
      for (const auto& f : pr[i].clause.ant) rest.ant.erase(std::find(rest.ant.begin(), rest.ant.end(), f));
      for (const auto& f : pr[i].clause.suc) rest.suc.erase(std::find(rest.suc.begin(), rest.suc.end(), f));
      CHECK(rest.sub_multiset_of(q->conclusion.formulas()));
    }

    LKProof c = ceres_cut_elim(p);
    CHECK(check_proof(c).str() == "");
    CHECK(has_only_atomic_cuts(c));
    CHECK(c->conclusion.formulas() == q->conclusion.formulas());
  }
}

TEST_CASE("gentzen and ceres agree at the Herbrand level") {
  for (const auto& [tag, p] : testing::first_order_corpus(PB_TEST_DATA)) {
    if (is_cut_free(p)) continue;
    INFO(tag);
    LKProof g = transform::skolemize(transform::gentzen_cut_elim(p));
    LKProof c = ceres_cut_elim(p);
    FSequent end = c->conclusion.formulas();
    CHECK(g->conclusion.formulas() == end);
    for (const auto& x : {g, c}) {
      auto h = transform::herbrand_sequent(x);
      FSequent own = x->conclusion.formulas();
      CHECK(testing::valid(h.sequent));
      for (const auto& m : h.members) {
        CHECK(quantifier_free(m.formula));
        const auto& src = m.side == Side::Ant ? own.ant : own.suc;
        CHECK(testing::instance_of(m.formula, src[m.source]));
      }
    }
  }
}
