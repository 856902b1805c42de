#pragma once
#include <functional>
#include <vector>

#include "defring/formula.hpp"

namespace defring::poly {

// A monic meta-polynomial of degree n in the placeholder lambda: the n
// low-order coefficients are terms of the language, the leading coefficient
// is implicitly 1. There is no term node for lambda itself.
struct MonicPoly {
  size_t degree = 0;
  std::vector<lang::Term> coeffs;  // a_0 ... a_{n-1}

  MonicPoly() = default;
  MonicPoly(size_t n, std::vector<lang::Term> cs);
  // Full coefficient vector a_0 ... a_{n-1}, 1 (low to high).
  std::vector<lang::Term> full() const;
  static MonicPoly with_vars(size_t n, const std::string& name_prefix);
};

struct TermMatrix {
  size_t rows = 0, cols = 0;
  std::vector<lang::Term> e;

  TermMatrix() = default;
  TermMatrix(size_t r, size_t c);
  lang::Term& at(size_t i, size_t j) { return e[i * cols + j]; }
  lang::Term at(size_t i, size_t j) const { return e[i * cols + j]; }
  bool square() const { return rows == cols; }

  static TermMatrix identity(size_t n);
  static TermMatrix zero(size_t n);
  // n x n matrix of variables name_{i,j}, 1-based indices.
  static TermMatrix vars(size_t n, const std::string& name);
};

TermMatrix tm_add(const TermMatrix& a, const TermMatrix& b);
TermMatrix tm_sub(const TermMatrix& a, const TermMatrix& b);
TermMatrix tm_mul(const TermMatrix& a, const TermMatrix& b);
TermMatrix tm_transpose(const TermMatrix& a);
TermMatrix tm_bar(const TermMatrix& a);
TermMatrix tm_scale(lang::Term s, const TermMatrix& a);
std::vector<lang::Var> tm_var_list(size_t n, const std::string& name);
lang::Term tm_trace(const TermMatrix& a);

// Entrywise equality as a conjunction.
lang::Formula tm_eq(const TermMatrix& a, const TermMatrix& b);

// f = f1 ... fk by equating coefficients of the expanded product.
lang::Formula product_eq(const MonicPoly& f, const std::vector<MonicPoly>& factors);

// Disjunction over ordered compositions of f.degree into num_factors parts
// (each >= 0) accepted by `ok`; each disjunct binds fresh coefficient blocks,
// conjoins product_eq with body(factors). Hint plumbing (divisor generators)
// is attached by the caller via the returned factor variable groups.
struct FactorBlock {
  std::vector<std::vector<lang::Var>> groups;  // coefficient vars per factor
  std::vector<MonicPoly> factors;
};
lang::Formula exists_factorization(
    const MonicPoly& f, size_t num_factors,
    const std::function<bool(const std::vector<size_t>&)>& ok,
    const std::function<lang::Formula(const FactorBlock&)>& body,
    lang::FreshSupply& fresh,
    const std::function<void(const FactorBlock&, const lang::Formula& guard)>& on_block = {});

lang::Formula irred(const MonicPoly& f, lang::FreshSupply& fresh);
lang::Formula even_poly(const MonicPoly& f);

lang::Term det_term(const TermMatrix& m);

// Resultant via the Sylvester determinant, f-rows first. `g` is a full
// low-to-high coefficient vector whose formal degree is g.size()-1; the
// zero-degree-f case returns 1.
lang::Term resultant_term(const MonicPoly& f, const std::vector<lang::Term>& g);

MonicPoly char_poly(const TermMatrix& m);

// Formal derivative, as a full low-to-high coefficient vector of formal
// degree n-1 (leading coefficient is the integer literal n).
std::vector<lang::Term> derivative(const MonicPoly& f);

// Evaluate a coefficient vector at a matrix of terms (Horner).
TermMatrix poly_at_matrix(const std::vector<lang::Term>& coeffs, const TermMatrix& x);

lang::Term pfaffian_term(const TermMatrix& m);

// The integral projector numerator Pi(X, f, ft): with u f + v ft = res(f, ft)
// obtained by Cramer's rule on the Sylvester system, Pi = (v ft)(X).
TermMatrix proj_numerator(const TermMatrix& x, const MonicPoly& f, const MonicPoly& ft);

}  // namespace defring::poly
