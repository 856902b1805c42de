#include "doctest.h"

#include "defring/errors.hpp"
#include "defring/eval.hpp"
#include "defring/oracle.hpp"
#include "defring/poly_meta.hpp"

using namespace defring;
using namespace defring::lang;
using defring::interp::Evaluator;
using defring::interp::Structure;
using defring::oracle::FqField;
using defring::poly::MonicPoly;
using defring::poly::TermMatrix;

namespace {

uint16_t eval_ground(const Structure& s, Term t) {
  Evaluator ev(s);
  return ev.eval_term(t);
}

}  // namespace

TEST_CASE("structure arithmetic") {
  Structure f5 = interp::make_structure("fq:5");
  CHECK(f5.add(3, 4) == 2);
  CHECK(f5.mul(3, 4) == 2);
  CHECK(f5.neg(2) == 3);
  CHECK(f5.inv(2) == 3);
  CHECK(f5.from_int(-7) == 3);
  CHECK(f5.from_rat(1, 2) == 3);
  CHECK_THROWS_AS(f5.inv(0), domain_error);
  CHECK_THROWS_AS(f5.bar(1), domain_error);

  Structure e = interp::make_structure("inv:3");
  CHECK(e.size == 9);
  CHECK(e.has_involution);
  uint16_t eps = e.from_components({0, 1});
  // The Frobenius fixes the base field and negates the adjoined square root.
  CHECK(e.bar(e.from_int(2)) == e.from_int(2));
  CHECK(e.bar(eps) == e.neg(eps));
  // eps^2 is a nonsquare of F_3, hence 2.
  CHECK(e.mul(eps, eps) == e.from_int(2));
}

TEST_CASE("even characteristic is rejected except through the unchecked entry") {
  CHECK_THROWS_AS(interp::make_structure("fq:2"), config_error);
  Structure f2 = interp::make_structure_unchecked("fq:2");
  CHECK(f2.size == 2);
  CHECK(f2.add(1, 1) == 0);
  CHECK_THROWS_AS(f2.from_rat(1, 2), domain_error);
}

TEST_CASE("resultant of two linear polynomials is the root difference") {
  // res(lambda - 2, lambda - 5) = 2 - 5.
  Structure f7 = interp::make_structure("fq:7");
  MonicPoly f(1, {t_int(-2)});
  Term r = poly::resultant_term(f, {t_int(-5), t_one()});
  CHECK(eval_ground(f7, r) == f7.from_int(-3));
}

TEST_CASE("resultant of lambda^2 - 1 and its derivative") {
  // res(lambda^2 - 1, 2 lambda) = -4.
  Structure f7 = interp::make_structure("fq:7");
  MonicPoly f(2, {t_int(-1), t_zero()});
  Term r = poly::resultant_term(f, poly::derivative(f));
  CHECK(eval_ground(f7, r) == f7.from_int(-4));
}

TEST_CASE("4x4 pfaffian expands to the textbook three-term formula") {
  Structure f7 = interp::make_structure("fq:7");
  TermMatrix m(4, 4);
  long long vals[4][4] = {};
  long long v = 1;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      vals[i][j] = v;
      vals[j][i] = -v;
      m.at(i, j) = t_int(v);
      m.at(j, i) = t_int(-v);
      v += 2;
    }
  long long expect =
      vals[0][1] * vals[2][3] - vals[0][2] * vals[1][3] + vals[0][3] * vals[1][2];
  CHECK(eval_ground(f7, poly::pfaffian_term(m)) == f7.from_int(expect));
}

TEST_CASE("generic 2x2 characteristic polynomial") {
  // char(X) = lambda^2 - (a+d) lambda + (ad - bc).
  Structure f7 = interp::make_structure("fq:7");
  TermMatrix x = TermMatrix::vars(2, "x");
  MonicPoly p = poly::char_poly(x);
  REQUIRE(p.degree == 2);
  Evaluator ev(f7);
  long long a = 2, b = 5, c = 3, d = 6;
  ev.bind(Var{"x", {1, 1}}, f7.from_int(a));
  ev.bind(Var{"x", {1, 2}}, f7.from_int(b));
  ev.bind(Var{"x", {2, 1}}, f7.from_int(c));
  ev.bind(Var{"x", {2, 2}}, f7.from_int(d));
  CHECK(ev.eval_term(p.coeffs[0]) == f7.from_int(a * d - b * c));
  CHECK(ev.eval_term(p.coeffs[1]) == f7.from_int(-(a + d)));
}

TEST_CASE("char poly term matches the concrete oracle") {
  Structure f5 = interp::make_structure("fq:5");
  FqField f{&f5};
  oracle::Mtx<uint16_t> m(3, 3, 0);
  uint16_t vals[9] = {1, 4, 0, 2, 3, 1, 0, 2, 4};
  m.e.assign(vals, vals + 9);
  TermMatrix tm(3, 3);
  for (int i = 0; i < 9; ++i) tm.e[i] = t_int(m.e[i]);
  MonicPoly p = poly::char_poly(tm);
  auto cp = oracle::char_poly_concrete(f, m);
  REQUIRE(cp.size() == 4);
  Evaluator ev(f5);
  for (size_t i = 0; i < 3; ++i) CHECK(ev.eval_term(p.coeffs[i]) == cp[i]);
  CHECK(eval_ground(f5, poly::det_term(tm)) == oracle::m_det(f, m));
}

TEST_CASE("irreducibility formula over F_3") {
  Structure f3 = interp::make_structure("fq:3");
  FreshSupply fs;
  // lambda^2 - 2 = lambda^2 + 1 is irreducible over F_3.
  MonicPoly irr(2, {t_int(-2), t_zero()});
  // lambda^2 - 1 = (lambda-1)(lambda+1) is not.
  MonicPoly red(2, {t_int(-1), t_zero()});
  Evaluator ev(f3);
  CHECK(ev.eval(poly::irred(irr, fs)));
  CHECK(!ev.eval(poly::irred(red, fs)));
  CHECK_THROWS_AS(poly::irred(MonicPoly(0, {}), fs), config_error);
}

TEST_CASE("even_poly checks odd coefficients and rejects odd degree") {
  Structure f3 = interp::make_structure("fq:3");
  Evaluator ev(f3);
  MonicPoly even(2, {t_int(2), t_zero()});
  MonicPoly uneven(2, {t_int(2), t_one()});
  CHECK(ev.eval(poly::even_poly(even)));
  CHECK(!ev.eval(poly::even_poly(uneven)));
  CHECK_THROWS_AS(poly::even_poly(MonicPoly(1, {t_one()})), config_error);
}

TEST_CASE("oracle polynomial algebra") {
  oracle::RatField q;
  // gcd((x-1)(x-2), (x-2)(x-3)) = x - 2, monic.
  oracle::PolyT<oracle::RatField> a{2, -3, 1}, b{6, -5, 1};
  auto g = oracle::p_gcd(q, a, b);
  REQUIRE(g.size() == 2);
  CHECK(g[0] == -2);
  CHECK(g[1] == 1);
  auto e = oracle::p_egcd(q, a, b);
  auto lhs = oracle::p_add(q, oracle::p_mul(q, e.u, a), oracle::p_mul(q, e.v, b));
  CHECK(lhs == e.g);
}

TEST_CASE("centralizer basis of a regular matrix is multiplication-closed") {
  Structure f5 = interp::make_structure("fq:5");
  FqField f{&f5};
  // Distinct eigenvalues 1, 2 -> regular; centralizer = polynomials in M.
  oracle::Mtx<uint16_t> m(2, 2, 0);
  m.at(0, 0) = 1;
  m.at(0, 1) = 1;
  m.at(1, 1) = 2;
  REQUIRE(oracle::is_regular_concrete(f, m));
  auto basis = oracle::centralizer_basis(f, m);
  REQUIRE(basis.size() == 2);
  // Every pairwise product lies in the span: rank of [basis | product] stays 2.
  for (const auto& x : basis)
    for (const auto& y : basis) {
      auto p = oracle::m_mul(f, x, y);
      oracle::Mtx<uint16_t> stack(3, 4, 0);
      for (int j = 0; j < 4; ++j) {
        stack.at(0, j) = basis[0].e[j];
        stack.at(1, j) = basis[1].e[j];
        stack.at(2, j) = p.e[j];
      }
      CHECK(oracle::m_rank(f, stack) == 2);
    }
}

TEST_CASE("irreducible factor enumeration over F_3") {
  Structure f3 = interp::make_structure("fq:3");
  FqField f{&f3};
  // x^2 - 1 = (x+1)(x+2) over F_3.
  auto fac = oracle::irreducible_factors(f, {2, 0, 1});
  REQUIRE(fac.size() == 2);
  for (const auto& p : fac) CHECK(p.size() == 2);
  // x^2 + 1 is irreducible over F_3.
  auto fac2 = oracle::irreducible_factors(f, {1, 0, 1});
  REQUIRE(fac2.size() == 1);
  CHECK(fac2[0].size() == 3);
}

TEST_CASE("the evaluation budget is enforced") {
  Structure f3 = interp::make_structure("fq:3");
  Var x{"x", {}}, y{"y", {}};
  Formula f = f_forall(x, f_forall(y, f_eq(t_var(x), t_var(x))));
  interp::EvalOptions opts;
  opts.budget = 2;
  Evaluator ev(f3, opts);
  CHECK_THROWS_AS(ev.eval(f), budget_error);
}

TEST_CASE("hint_covers_guard validates generators by brute force") {
  Structure f3 = interp::make_structure("fq:3");
  Var v{"v", {}};
  interp::QuantHint good;
  good.group = {v};
  good.guard = f_eq(t_mul(t_var(v), t_var(v)), t_one());
  good.gen = [](const interp::Structure&, Evaluator&,
                const std::function<bool(const std::vector<uint16_t>&)>& yield) {
    yield({1});
    yield({2});
  };
  interp::QuantHint bad = good;
  bad.gen = [](const interp::Structure&, Evaluator&,
               const std::function<bool(const std::vector<uint16_t>&)>& yield) {
    yield({1});
  };
  Evaluator ev(f3);
  CHECK(interp::hint_covers_guard(ev, good));
  CHECK(!interp::hint_covers_guard(ev, bad));
}
