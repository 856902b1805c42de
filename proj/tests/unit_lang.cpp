#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "defring/errors.hpp"
#include "defring/eval.hpp"
#include "defring/realify.hpp"
#include "defring/sexpr.hpp"

using namespace defring;
using namespace defring::lang;

TEST_CASE("terms are interned and literals collapse") {
  CHECK(t_int(0) == t_zero());
  CHECK(t_int(1) == t_one());
  CHECK(t_rat(4, 2) == t_int(2));
  CHECK(t_rat(2, 4) == t_rat(1, 2));
  CHECK(t_add(t_var("a"), t_one()) == t_add(t_var("a"), t_one()));
  CHECK(t_add(t_var("a"), t_one()) != t_add(t_one(), t_var("a")));
}

TEST_CASE("variable atoms print with underscore-joined indices") {
  CHECK(Var{"x", {1, 2}}.text() == "x_1_2");
  CHECK(Var{"a", {}}.text() == "a");
}

TEST_CASE("sexpr round trip is the identity on canonical output") {
  Formula f = f_forall(Var{"x", {1, 1}},
                       f_implies(f_eq(t_var("x", {1, 1}), t_zero()),
                                 f_exists(Var{"y", {}},
                                          f_eq(t_mul(t_var("y"), t_rat(-3, 2)),
                                               t_bar(t_var("x", {1, 1}))))));
  std::string s = sexpr::to_sexpr(f);
  CHECK(sexpr::to_sexpr(sexpr::parse_formula(s)) == s);
}

TEST_CASE("sexpr parse errors carry positions") {
  CHECK_THROWS_AS(sexpr::parse_formula("(= 1"), parse_error);
  CHECK_THROWS_AS(sexpr::parse_formula("(wrong 1 2)"), parse_error);
  try {
    sexpr::parse_formula("(=\n  1");
    CHECK(false);
  } catch (const parse_error& e) {
    CHECK(e.line == 2);
  }
}

TEST_CASE("substitution avoids capture") {
  // (exists y. x = y)[x := y] must rename the binder.
  Var x{"x", {}}, y{"y", {}};
  Formula f = f_exists(y, f_eq(t_var(x), t_var(y)));
  Formula g = substitute(f, {{x, t_var(y)}});
  CHECK(g->kind == FKind::Exists);
  CHECK(g->var != y);
  CHECK(g->a->t1 == t_var(y));
  CHECK(g->a->t2 == t_var(g->var));
}

TEST_CASE("desugar lowers to the strict core and preserves truth") {
  Var x{"x", {}};
  Formula f = f_forall(x, f_iff(f_eq(t_var(x), t_int(-2)),
                                f_eq(t_add(t_var(x), t_int(2)), t_zero())));
  Formula core = desugar(f);
  CHECK(is_core(core));
  CHECK(!is_core(f));
  interp::Structure s = interp::make_structure("fq:5");
  interp::Evaluator ev(s);
  CHECK(ev.eval(f));
  CHECK(ev.eval(core));
}

TEST_CASE("rational literals desugar into quantified witnesses") {
  Formula f = f_eq(t_rat(1, 2), t_rat(1, 2));
  Formula core = desugar(f);
  CHECK(is_core(core));
  interp::Structure s = interp::make_structure("fq:3");
  interp::Evaluator ev(s);
  CHECK(ev.eval(core));
}

TEST_CASE("fresh names never collide with catalog variables") {
  FreshSupply fs;
  Var v1 = fs.fresh(), v2 = fs.fresh();
  CHECK(v1.name[0] == '$');
  CHECK(v1 != v2);
}

TEST_CASE("big and/or fold at construction") {
  CHECK(f_big_and({}) == f_true());
  CHECK(f_big_or({}) == f_false());
  Formula e = f_eq(t_zero(), t_zero());
  CHECK(f_big_and({e})->kind == FKind::Eq);
}

TEST_CASE("realify splits variables into component pairs") {
  Var z{"z", {}};
  auto [re, im] = realified_pair(z);
  CHECK(re != im);

  // bar(z) = z  iff  z has no imaginary part.
  Formula f = f_eq(t_bar(t_var(z)), t_var(z));
  Var u{"uu", {}};
  Formula rf = realify(f, u, Lang::RingWithInvolution);

  interp::Structure ext = interp::make_structure("inv:3");
  interp::Structure base = interp::make_structure("fq:3");
  uint16_t eps = ext.from_components({0, 1});
  uint16_t u0 = static_cast<uint16_t>(ext.component(ext.mul(eps, eps), 0));
  for (int e = 0; e < ext.size; ++e) {
    interp::Evaluator eve(ext);
    eve.bind(z, static_cast<uint16_t>(e));
    interp::Evaluator evb(base);
    evb.bind(u, u0);
    evb.bind(re, static_cast<uint16_t>(ext.component(e, 0)));
    evb.bind(im, static_cast<uint16_t>(ext.component(e, 1)));
    CHECK(eve.eval(f) == evb.eval(rf));
  }
}

TEST_CASE("realify rejects bar outside the involution language") {
  Formula f = f_eq(t_bar(t_var("z")), t_var("z"));
  CHECK_THROWS_AS(realify(f, Var{"uu", {}}, Lang::Ring), config_error);
}
