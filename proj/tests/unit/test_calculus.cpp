#include "doctest.h"

#include <algorithm>

#include "proofbench/calculus/autoprop.hpp"
#include "proofbench/calculus/check.hpp"
#include "proofbench/calculus/schema.hpp"
#include "proofbench/kernel/formula.hpp"
#include "proofbench/kernel/param.hpp"
#include "random_terms.hpp"
#include "truth_table.hpp"

using namespace proofbench::calculus;
using namespace proofbench::kernel;
using proofbench::testing::TermGen;

namespace {

const Type I = Type::individual();

Term P() { return atom("P", {}); }
Term Q() { return atom("Q", {}); }
Term A(const Term& e) { return atom("A", {e}); }
Term Px(const Term& t) { return atom("P", {t}); }

OccId suc0(const LKProof& p) { return p->conclusion.suc.at(0).id; }
OccId ant0(const LKProof& p) { return p->conclusion.ant.at(0).id; }

LKProof e1(IdGen& g) {
  LKProof l = axiom(g, P());
  LKProof r = axiom(g, P());
  return cut(g, l, r, suc0(l), ant0(r));
}

} // namespace

TEST_CASE("axiom and E1") {
  IdGen g;
  LKProof ax = axiom(g, A(param_zero()));
  CHECK(ax->conclusion.formulas() == FSequent{{A(param_zero())}, {A(param_zero())}});
  CHECK(check_proof(ax).ok());
  CHECK(ax->conclusion.ant[0].parents.empty());

  LKProof p = e1(g);
  CHECK(p->conclusion.formulas() == FSequent{{P()}, {P()}});
  CHECK(check_proof(p).ok());
  CHECK(p->rule == RuleKind::Cut);

  CHECK_THROWS_AS(axiom(g, conj(P(), Q())), InferenceError);
}

TEST_CASE("build_inference errors") {
  IdGen g;
  LKProof l = axiom(g, P());
  LKProof r = axiom(g, Q());
  try {
    cut(g, l, r, suc0(l), ant0(r));
    FAIL("expected an error");
  } catch (const InferenceError& e) {
    CHECK(e.kind == InferenceError::Kind::Shape);
  }
  try {
    neg_l(g, l, 9999);
    FAIL("expected an error");
  } catch (const InferenceError& e) {
    CHECK(e.kind == InferenceError::Kind::MissingAux);
  }
  InferenceInput in{RuleKind::Cut, {l}, {{suc0(l)}}, {}, {}, {}, {}, {}, {}};
  try {
    build_inference(g, in);
    FAIL("expected an error");
  } catch (const InferenceError& e) {
    CHECK(e.kind == InferenceError::Kind::Arity);
  }
  Term alpha = Term::var("alpha", I);
  LKProof ax = axiom(g, Px(alpha));
  Term allx = forall(Term::var("x", I), Px(Term::var("x", I)));
  try {
    all_r(g, ax, suc0(ax), allx);
    FAIL("expected an error");
  } catch (const InferenceError& e) {
    CHECK(e.kind == InferenceError::Kind::Eigenvariable);
  }
}

TEST_CASE("quantifier rules derive witnesses") {
  IdGen g;
  Term x = Term::var("x", I), a = Term::constant("a", I);
  Term allx = forall(x, Px(x)), exx = exists(x, Px(x));
  LKProof ax = axiom(g, Px(a));
  LKProof l = all_l(g, ax, ant0(ax), allx);
  REQUIRE(l->term);
  CHECK(*l->term == a);
  LKProof r = ex_r(g, l, suc0(l), exx);
  CHECK(r->conclusion.formulas() == FSequent{{allx}, {exx}});
  CHECK(check_proof(r).ok());

  Term alpha = Term::var("alpha", I);
  LKProof ax2 = axiom(g, Px(alpha));
  LKProof s1 = ex_r(g, ax2, suc0(ax2), exx);
  LKProof s2 = ex_l(g, s1, ant0(s1), exx);
  CHECK(check_proof(s2).ok());
  CHECK(*s2->term == alpha);
}

TEST_CASE("check_proof reports an eigenvariable violation") {
  IdGen g;
  Term alpha = Term::var("alpha", I);
  Term x = Term::var("x", I);
  LKProof ax = axiom(g, Px(alpha));
  auto bad = std::make_shared<ProofNode>();
  bad->rule = RuleKind::ForAllR;
  bad->premises = {ax};
  bad->aux = {{suc0(ax)}};
  bad->conclusion.ant.push_back({g.next(), Px(alpha), {ant0(ax)}});
  OccId m = g.next();
  bad->conclusion.suc.push_back({m, forall(x, Px(x)), {suc0(ax)}});
  bad->main = {m};
  bad->term = alpha;
  CheckReport rep = check_proof(bad);
  CHECK(rep.violations.size() == 1);
  CHECK(rep.count(ViolationKind::Eigenvariable) == 1);
}

TEST_CASE("check_proof catches tampering") {
  IdGen g;
  LKProof p = e1(g);
  auto wrong_parent = std::make_shared<ProofNode>(*p);
  wrong_parent->conclusion.ant[0].parents = {suc0(p->premises[0])};
  CHECK(check_proof(wrong_parent).count(ViolationKind::Conclusion) == 1);

  auto dup = std::make_shared<ProofNode>(*p);
  dup->conclusion.ant[0].id = p->premises[0]->conclusion.ant[0].id;
  CHECK(check_proof(dup).count(ViolationKind::DuplicateId) == 1);

  LKProof gen = generic(g, "mystery", FSequent{{P()}, {P()}}, {p});
  CheckReport rep = check_proof(gen);
  CHECK(rep.count(ViolationKind::Unchecked) == 1);
  CHECK(rep.violations.size() == 1);
}

TEST_CASE("AndEq rules") {
  IdGen g;
  Term i = param_var("i"), k = param_var("k");
  auto body = [](const Term& e) { return disj(neg(A(e)), A(param_succ(e))); };
  Term base_big = big_and(i, param_zero(), param_zero(), body(i));
  auto found = autoprop(FSequent{{A(param_zero()), body(param_zero())}, {A(param_numeral(1))}}, g);
  REQUIRE(std::holds_alternative<LKProof>(found));
  LKProof p = std::get<LKProof>(found);
  OccId aux = 0;
  for (const auto& o : p->conclusion.ant)
    if (o.formula == body(param_zero())) aux = o.id;
  LKProof q = and_eq_l3(g, p, aux, base_big);
  CHECK(check_proof(q).ok());
  CHECK(q->conclusion.formulas() == FSequent{{base_big, A(param_zero())}, {A(param_numeral(1))}});
  CHECK_THROWS_AS(and_eq_l1(g, p, aux, base_big), InferenceError);

  Term split = conj(big_and(i, param_zero(), k, body(i)), body(param_succ(k)));
  LKProof ax = axiom(g, Q());
  LKProof w = weak_l(g, ax, split);
  LKProof s = and_eq_l1(g, w, ant0(w), big_and(i, param_zero(), param_succ(k), body(i)));
  CHECK(check_proof(s).ok());
  CHECK_THROWS_AS(and_eq_l1(g, w, ant0(w), big_and(i, param_zero(), k, body(i))), InferenceError);
}

TEST_CASE("autoprop examples") {
  auto r1 = autoprop(FSequent{{A(param_zero()), disj(neg(A(param_zero())), A(param_numeral(1)))}, {A(param_numeral(1))}});
  REQUIRE(std::holds_alternative<LKProof>(r1));
  CHECK(check_proof(std::get<LKProof>(r1)).ok());
  CHECK(is_cut_free(std::get<LKProof>(r1)));

  auto r2 = autoprop(FSequent{{}, {disj(P(), neg(P()))}});
  REQUIRE(std::holds_alternative<LKProof>(r2));
  CHECK(check_proof(std::get<LKProof>(r2)).ok());

  auto r3 = autoprop(FSequent{{P()}, {Q()}});
  REQUIRE(std::holds_alternative<Countermodel>(r3));
  const auto& cm = std::get<Countermodel>(r3).values;
  CHECK(cm.at("P") == true);
  CHECK(cm.at("Q") == false);

  Term x = Term::var("x", I);
  CHECK_THROWS_AS(autoprop(FSequent{{forall(x, Px(x))}, {}}), NotPropositional);
  Term i = param_var("i");
  CHECK_THROWS_AS(autoprop(FSequent{{big_and(i, param_zero(), param_var("k"), A(i))}, {}}), NotPropositional);
  CHECK_THROWS_AS(autoprop(FSequent{{}, {big_and(i, param_zero(), param_zero(), A(i))}}), NotPropositional);

  auto r4 = autoprop(FSequent{{big_and(i, param_zero(), param_numeral(2), A(i))}, {A(param_numeral(1))}});
  REQUIRE(std::holds_alternative<LKProof>(r4));
  CHECK(check_proof(std::get<LKProof>(r4)).ok());
}

TEST_CASE("autoprop agrees with truth tables on random sequents") {
  TermGen gen(42);
  int proved = 0;
  for (int n = 0; n < 3000; ++n) {
    FSequent s;
    int na = gen.pick(3), ns = gen.pick(3);
    for (int j = 0; j < na; ++j) s.ant.push_back(gen.prop(gen.pick(4)));
    for (int j = 0; j < ns; ++j) s.suc.push_back(gen.prop(gen.pick(4)));
    bool v = proofbench::testing::valid(s);
    auto r = autoprop(s);
    CHECK(std::holds_alternative<LKProof>(r) == v);
    if (auto* p = std::get_if<LKProof>(&r)) {
      ++proved;
      CHECK((*p)->conclusion.formulas() == s);
      CHECK(check_proof(*p).ok());
    } else {
      const auto& cm = std::get<Countermodel>(r).values;
      CHECK_FALSE(proofbench::testing::eval_sequent(s, cm));
    }
  }
  CHECK(proved > 100);
}

TEST_CASE("multiset discipline") {
  TermGen gen(9);
  for (int n = 0; n < 200; ++n) {
    FSequent s;
    for (int j = 0; j < 4; ++j) (j % 2 ? s.ant : s.suc).push_back(gen.formula(2));
    FSequent t = s;
    std::shuffle(t.ant.begin(), t.ant.end(), gen.rng());
    std::shuffle(t.suc.begin(), t.suc.end(), gen.rng());
    CHECK(s == t);
  }
  CHECK_FALSE((FSequent{{P(), P()}, {}} == FSequent{{P()}, {}}));
}

TEST_CASE("renumber, refresh and replay keep proofs valid") {
  IdGen g(100);
  auto r = autoprop(FSequent{{conj(P(), Q())}, {conj(Q(), P())}}, g);
  LKProof p = std::get<LKProof>(r);
  LKProof n = renumber(p);
  CHECK(check_proof(n).ok());
  CHECK(same_shape(p, n));
  IdGen g2(5000);
  LKProof f = refresh(p, g2);
  CHECK(check_proof(f).ok());
  CHECK(same_shape(f, p));
  CHECK(max_id(f) >= 5000);
  LKProof rp = replay(g2, *p, p->premises, p->aux);
  CHECK(check_proof(rp).ok());
  CHECK(rp->conclusion.formulas() == p->conclusion.formulas());
}

TEST_CASE("schema instantiation with a hand-built schema") {
  // p proves Q(k) |- Q(k) for every k: base is an axiom, step links to k.
  IdGen g;
  Term k = param_var("k");
  auto Qk = [](const Term& e) { return atom("Q", {e}); };
  ProofSchema s{"p", k, FSequent{{Qk(k)}, {Qk(k)}}, axiom(g, Qk(param_zero())), axiom(g, Qk(param_succ(k)))};
  ProofDatabase db;
  db.add(DbEntry{"p", nullptr, s, {}});
  for (std::uint64_t n = 0; n < 4; ++n) {
    LKProof p = instantiate_schema(db, "p", n);
    CHECK(p->conclusion.formulas() == schema_end_at(s, n));
    CHECK(check_proof(p, &db).ok());
  }
  CHECK_THROWS_AS(instantiate_schema(db, "nope", 1), LinkError);

  ProofSchema bad = s;
  bad.name = "q";
  bad.step = proof_link(g, "p", param_succ(k), FSequent{{Qk(k)}, {Qk(k)}});
  db.add(DbEntry{"q", nullptr, bad, {}});
  CHECK_THROWS_AS(instantiate_schema(db, "q", 2), LinkError);
}
