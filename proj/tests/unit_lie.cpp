#include "doctest.h"

#include "defring/classify.hpp"
#include "defring/errors.hpp"
#include "defring/registry.hpp"

using namespace defring;
using namespace defring::lang;
using defring::interp::Evaluator;
using defring::interp::Structure;
using defring::lie::Family;
using defring::lie::TripleSpec;
using defring::poly::MonicPoly;
using defring::poly::TermMatrix;

TEST_CASE("defining form matrices at small sizes") {
  lie::RatMat so2 = lie::j_rational(lie::fam_so(2));
  CHECK(so2.at(0, 0) == 0);
  CHECK(so2.at(0, 1) == mpq_class(1, 2));
  CHECK(so2.at(1, 0) == mpq_class(1, 2));
  CHECK(so2.at(1, 1) == 0);

  lie::RatMat sp2 = lie::j_rational(lie::fam_sp(2));
  CHECK(sp2.at(0, 1) == -1);
  CHECK(sp2.at(1, 0) == 1);
  CHECK(sp2.at(0, 0) == 0);

  lie::RatMat so3 = lie::j_rational(lie::fam_so(3));
  CHECK(so3.at(0, 2) == mpq_class(1, 2));
  CHECK(so3.at(1, 1) == -1);
  CHECK(so3.at(2, 0) == mpq_class(1, 2));

  lie::RatMat u2 = lie::j_rational(lie::fam_u(2));
  CHECK(u2.at(0, 1) == 2);
  CHECK(u2.at(1, 0) == -2);
}

TEST_CASE("tau is an involution on the catalog families") {
  Structure f5 = interp::make_structure("fq:5");
  for (Family fam : {lie::fam_gl(2), lie::fam_so(2), lie::fam_so(3), lie::fam_sp(2)}) {
    TermMatrix x = TermMatrix::vars(fam.n, "x");
    TermMatrix twice = lie::tau_apply(fam, lie::tau_apply(fam, x));
    Evaluator ev(f5);
    for (const Var& v : poly::tm_var_list(fam.n, "x"))
      ev.bind(v, static_cast<uint16_t>((v.index[0] * 2 + v.index[1]) % 5));
    for (size_t i = 0; i < x.e.size(); ++i)
      CHECK(ev.eval_term(twice.e[i]) == ev.eval_term(x.e[i]));
  }
}

TEST_CASE("small membership counts") {
  Structure f3 = interp::make_structure("fq:3");
  CHECK(interp::count_points(f3, registry::resolve_set("lie:so:2").set).count == 3);
  CHECK(interp::count_points(f3, registry::resolve_set("lie:sp:2").set).count == 27);
  CHECK(interp::count_points(f3, registry::resolve_set("L:2").set).count == 9);
  Structure e = interp::make_structure("inv:3");
  CHECK(interp::count_points(e, registry::resolve_set("lie:u:1").set).count == 3);
}

TEST_CASE("triple specs validate and round trip through names") {
  TripleSpec t(TripleSpec::Case::OddOrth, 1, 1, 0);
  CHECK(t.name() == "odd-orth:r=1,a=1,b=0");
  CHECK(lie::parse_triple(t.name()).name() == t.name());
  CHECK(t.g().n == 3);
  CHECK(t.h1().n == 3);
  CHECK(t.h2().n == 1);  // so(2b+1) with b = 0
  CHECK(t.chi() == 1);

  TripleSpec u(TripleSpec::Case::Unitary, 2, 1, 1);
  CHECK(u.name() == "unitary:n=2,a=1,b=1");
  CHECK(u.chi() == -1);
  CHECK(TripleSpec(TripleSpec::Case::Sympl, 1, 1, 0).chi() == -1);

  // a + b must equal r.
  CHECK_THROWS_AS(TripleSpec(TripleSpec::Case::OddOrth, 1, 1, 1), config_error);
  // Symplectic b = 1 is excluded.
  CHECK_THROWS_AS(TripleSpec(TripleSpec::Case::Sympl, 2, 1, 1), config_error);
}

TEST_CASE("even_k truth table") {
  Formula t = f_true(), f = f_false();
  Structure f3 = interp::make_structure("fq:3");
  Evaluator ev(f3);
  CHECK(ev.eval(transfer::even_k({})));
  CHECK(ev.eval(transfer::even_k({t})));
  CHECK(!ev.eval(transfer::even_k({f})));
  CHECK(ev.eval(transfer::even_k({f, f})));
  CHECK(!ev.eval(transfer::even_k({t, f, t})));
  CHECK(ev.eval(transfer::even_k({f, t, f})));
}

TEST_CASE("pz0 drops the constant term only in the odd orthogonal case") {
  MonicPoly p(2, {t_zero(), t_int(2)});
  MonicPoly dropped = transfer::pz0(TripleSpec::Case::OddOrth, p);
  CHECK(dropped.degree == 1);
  CHECK(dropped.coeffs[0] == t_int(2));
  MonicPoly kept = transfer::pz0(TripleSpec::Case::Sympl, p);
  CHECK(kept.degree == 2);
}

TEST_CASE("registry resolves the catalog and rejects junk") {
  for (const std::string& name : registry::catalog_names())
    CHECK_NOTHROW(registry::resolve_set(name));
  CHECK_THROWS_AS(registry::resolve_set("nope:3"), config_error);
  CHECK_THROWS_AS(registry::resolve_set("lie:xx:2"), config_error);
  // The empty orthogonal set has an empty signature and a true body.
  registry::NamedSet so0 = registry::resolve_set("lie:so:0");
  CHECK(so0.set.sig.empty());
  Structure f3 = interp::make_structure("fq:3");
  Evaluator ev(f3);
  CHECK(ev.eval(so0.set.body));
}

TEST_CASE("classify: the zero point of the symplectic triple is sigma = 0") {
  Structure f3 = interp::make_structure("fq:3");
  TripleSpec t(TripleSpec::Case::Sympl, 1, 1, 0);
  classify::TriplePoint p;
  p.x = oracle::Mtx<uint16_t>(2, 2, 0);
  p.y = oracle::Mtx<uint16_t>(2, 2, 0);
  p.z = oracle::Mtx<uint16_t>(0, 0, 0);
  // X = 0 is not regular semisimple, so it falls in the zero set.
  CHECK(classify::classify_point(f3, t, p, transfer::default_glreg(t),
                                 interp::Strategy::Guided) == 0);
  // Mismatched shapes are configuration errors.
  p.y = oracle::Mtx<uint16_t>(1, 1, 0);
  CHECK_THROWS_AS(classify::classify_point(f3, t, p, transfer::default_glreg(t),
                                           interp::Strategy::Guided),
                  config_error);
}

TEST_CASE("guided norm evaluation validates its hints on a small instance") {
  Structure f3 = interp::make_structure("fq:3");
  interp::BuildCtx ctx;
  TermMatrix x = TermMatrix::vars(2, "x"), w = TermMatrix::vars(2, "w");
  MonicPoly f = MonicPoly::with_vars(1, "a");
  Formula g = transfer::norm_formula(lie::fam_gl(2), x, f, w, ctx);
  interp::EvalOptions opts;
  opts.strategy = interp::Strategy::Guided;
  opts.hints = &ctx.hints;
  opts.validate_hints = true;
  Evaluator ev(f3, opts);
  for (const Var& v : poly::tm_var_list(2, "x"))
    ev.bind(v, static_cast<uint16_t>((v.index[0] + v.index[1]) % 3));
  for (const Var& v : poly::tm_var_list(2, "w"))
    ev.bind(v, static_cast<uint16_t>(v.index[0] % 3));
  ev.bind(Var{"a", {0}}, 1);
  CHECK_NOTHROW(ev.eval(g));
}
