#include "defring/poly_meta.hpp"

#include <unordered_map>

#include "defring/errors.hpp"

namespace defring::poly {

using namespace defring::lang;

MonicPoly::MonicPoly(size_t n, std::vector<Term> cs) : degree(n), coeffs(std::move(cs)) {
  if (coeffs.size() != degree)
    throw config_error("monic poly of degree " + std::to_string(degree) + " needs exactly " +
                       std::to_string(degree) + " coefficients");
}

std::vector<Term> MonicPoly::full() const {
  std::vector<Term> f = coeffs;
  f.push_back(t_one());
  return f;
}

MonicPoly MonicPoly::with_vars(size_t n, const std::string& prefix) {
  std::vector<Term> cs;
  for (size_t i = 0; i < n; ++i) cs.push_back(t_var(prefix, {static_cast<int>(i)}));
  return MonicPoly(n, std::move(cs));
}

TermMatrix::TermMatrix(size_t r, size_t c) : rows(r), cols(c), e(r * c, t_zero()) {}

TermMatrix TermMatrix::identity(size_t n) {
  TermMatrix m(n, n);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = t_one();
  return m;
}

TermMatrix TermMatrix::zero(size_t n) { return TermMatrix(n, n); }

TermMatrix TermMatrix::vars(size_t n, const std::string& name) {
  TermMatrix m(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      m.at(i, j) = t_var(name, {static_cast<int>(i + 1), static_cast<int>(j + 1)});
  return m;
}

std::vector<Var> tm_var_list(size_t n, const std::string& name) {
  std::vector<Var> vs;
  vs.reserve(n * n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      vs.push_back(Var{name, {static_cast<int>(i + 1), static_cast<int>(j + 1)}});
  return vs;
}

static void check_same_shape(const TermMatrix& a, const TermMatrix& b, const char* op) {
  if (a.rows != b.rows || a.cols != b.cols)
    throw config_error(std::string("matrix shape mismatch in ") + op);
}

TermMatrix tm_add(const TermMatrix& a, const TermMatrix& b) {
  check_same_shape(a, b, "tm_add");
  TermMatrix r(a.rows, a.cols);
  for (size_t i = 0; i < a.e.size(); ++i) r.e[i] = s_add(a.e[i], b.e[i]);
  return r;
}

TermMatrix tm_sub(const TermMatrix& a, const TermMatrix& b) {
  check_same_shape(a, b, "tm_sub");
  TermMatrix r(a.rows, a.cols);
  for (size_t i = 0; i < a.e.size(); ++i) r.e[i] = s_sub(a.e[i], b.e[i]);
  return r;
}

TermMatrix tm_mul(const TermMatrix& a, const TermMatrix& b) {
  if (a.cols != b.rows) throw config_error("matrix shape mismatch in tm_mul");
  TermMatrix r(a.rows, b.cols);
  for (size_t i = 0; i < a.rows; ++i)
    for (size_t j = 0; j < b.cols; ++j) {
      Term s = t_zero();
      for (size_t k = 0; k < a.cols; ++k) s = s_add(s, s_mul(a.at(i, k), b.at(k, j)));
      r.at(i, j) = s;
    }
  return r;
}

TermMatrix tm_transpose(const TermMatrix& a) {
  TermMatrix r(a.cols, a.rows);
  for (size_t i = 0; i < a.rows; ++i)
    for (size_t j = 0; j < a.cols; ++j) r.at(j, i) = a.at(i, j);
  return r;
}

TermMatrix tm_bar(const TermMatrix& a) {
  TermMatrix r(a.rows, a.cols);
  for (size_t i = 0; i < a.e.size(); ++i)
    r.e[i] = is_literal(a.e[i]) ? a.e[i] : t_bar(a.e[i]);
  return r;
}

TermMatrix tm_scale(Term s, const TermMatrix& a) {
  TermMatrix r(a.rows, a.cols);
  for (size_t i = 0; i < a.e.size(); ++i) r.e[i] = s_mul(s, a.e[i]);
  return r;
}

Term tm_trace(const TermMatrix& a) {
  if (!a.square()) throw config_error("trace of non-square matrix");
  Term s = t_zero();
  for (size_t i = 0; i < a.rows; ++i) s = s_add(s, a.at(i, i));
  return s;
}

Formula tm_eq(const TermMatrix& a, const TermMatrix& b) {
  check_same_shape(a, b, "tm_eq");
  std::vector<Formula> eqs;
  eqs.reserve(a.e.size());
  for (size_t i = 0; i < a.e.size(); ++i) eqs.push_back(f_eq(a.e[i], b.e[i]));
  return f_big_and(eqs);
}

Formula product_eq(const MonicPoly& f, const std::vector<MonicPoly>& factors) {
  size_t total = 0;
  for (const MonicPoly& g : factors) total += g.degree;
  if (total != f.degree)
    throw config_error("product_eq: factor degrees sum to " + std::to_string(total) +
                       ", expected " + std::to_string(f.degree));
  std::vector<Term> prod{t_one()};
  for (const MonicPoly& g : factors) {
    std::vector<Term> gf = g.full();
    std::vector<Term> next(prod.size() + gf.size() - 1, t_zero());
    for (size_t i = 0; i < prod.size(); ++i)
      for (size_t j = 0; j < gf.size(); ++j)
        next[i + j] = s_add(next[i + j], s_mul(prod[i], gf[j]));
    prod = std::move(next);
  }
  std::vector<Formula> eqs;
  for (size_t k = 0; k < f.degree; ++k) eqs.push_back(f_eq(f.coeffs[k], prod[k]));
  return f_big_and(eqs);
}

namespace {
void compositions(size_t n, size_t parts, std::vector<size_t>& cur,
                  const std::function<void(const std::vector<size_t>&)>& emit) {
  if (parts == 0) {
    if (n == 0) emit(cur);
    return;
  }
  if (parts == 1) {
    cur.push_back(n);
    emit(cur);
    cur.pop_back();
    return;
  }
  for (size_t k = 0; k <= n; ++k) {
    cur.push_back(k);
    compositions(n - k, parts - 1, cur, emit);
    cur.pop_back();
  }
}
}  // namespace

Formula exists_factorization(
    const MonicPoly& f, size_t num_factors,
    const std::function<bool(const std::vector<size_t>&)>& ok,
    const std::function<Formula(const FactorBlock&)>& body, FreshSupply& fresh,
    const std::function<void(const FactorBlock&, const Formula& guard)>& on_block) {
  std::vector<Formula> disjuncts;
  std::vector<size_t> cur;
  compositions(f.degree, num_factors, cur, [&](const std::vector<size_t>& degs) {
    if (ok && !ok(degs)) return;
    FactorBlock blk;
    for (size_t d : degs) {
      std::vector<Var> group;
      std::vector<Term> cs;
      for (size_t i = 0; i < d; ++i) {
        Var v = fresh.fresh();
        group.push_back(v);
        cs.push_back(t_var(v));
      }
      blk.groups.push_back(std::move(group));
      blk.factors.emplace_back(d, std::move(cs));
    }
    Formula guard = product_eq(f, blk.factors);
    if (on_block) on_block(blk, guard);
    Formula inner = f_and(guard, body ? body(blk) : f_true());
    // Bind the coefficient blocks innermost-factor-last.
    for (size_t gi = blk.groups.size(); gi-- > 0;)
      for (size_t vi = blk.groups[gi].size(); vi-- > 0;)
        inner = f_exists(blk.groups[gi][vi], inner);
    disjuncts.push_back(inner);
  });
  return f_big_or(disjuncts);
}

Formula irred(const MonicPoly& f, FreshSupply& fresh) {
  if (f.degree < 1) throw config_error("irred requires degree >= 1");
  Formula split = exists_factorization(
      f, 2,
      [](const std::vector<size_t>& d) { return d[0] >= 1 && d[1] >= 1; },
      [](const FactorBlock&) { return f_true(); }, fresh);
  return f_not(split);
}

Formula even_poly(const MonicPoly& f) {
  if (f.degree % 2 != 0) throw config_error("even_poly requires even degree");
  std::vector<Formula> eqs;
  for (size_t i = 1; i < f.degree; i += 2) eqs.push_back(f_eq(f.coeffs[i], t_zero()));
  return f_big_and(eqs);
}

namespace {

// Determinant over an arbitrary coefficient ring given add/mul/zero/one.
// Expansion along the first remaining row, memoized on the column subset, so
// shared minors are built once and the result is a compact shared DAG.
template <class V>
struct DetDP {
  size_t n;
  std::function<V(size_t, size_t)> entry;
  V zero, one;
  std::function<V(const V&, const V&)> add, sub, mul;
  std::unordered_map<uint32_t, V> memo;

  V minor_det(uint32_t colmask, size_t row) {
    if (colmask == 0) return one;
    auto it = memo.find(colmask);
    if (it != memo.end()) return it->second;
    V acc = zero;
    size_t pos = 0;
    for (size_t j = 0; j < n; ++j) {
      if (!(colmask & (1u << j))) continue;
      V sub_det = minor_det(colmask & ~(1u << j), row + 1);
      V prod = mul(entry(row, j), sub_det);
      acc = (pos % 2 == 0) ? add(acc, prod) : sub(acc, prod);
      ++pos;
    }
    memo.emplace(colmask, acc);
    return acc;
  }

  V run() {
    if (n > 16) throw config_error("symbolic determinant capped at size 16");
    return minor_det(n == 0 ? 0u : ((n == 32 ? 0u : (1u << n)) - 1u), 0);
  }
};

}  // namespace

Term det_term(const TermMatrix& m) {
  if (!m.square()) throw config_error("determinant of non-square matrix");
  DetDP<Term> dp{m.rows,
                 [&](size_t i, size_t j) { return m.at(i, j); },
                 t_zero(),
                 t_one(),
                 [](Term a, Term b) { return s_add(a, b); },
                 [](Term a, Term b) { return s_sub(a, b); },
                 [](Term a, Term b) { return s_mul(a, b); },
                 {}};
  return dp.run();
}

namespace {

// Sylvester matrix of f (monic, formal degree s) and g (full coefficients,
// formal degree u = g.size()-1): u rows of f-shifts first, then s rows of
// g-shifts; column j holds the coefficient of lambda^{s+u-1-j}.
TermMatrix sylvester(const std::vector<Term>& ffull, const std::vector<Term>& g) {
  size_t s = ffull.size() - 1;
  size_t u = g.size() - 1;
  size_t n = s + u;
  TermMatrix m(n, n);
  for (size_t i = 0; i < u; ++i)
    for (size_t k = 0; k <= s; ++k) m.at(i, i + k) = ffull[s - k];
  for (size_t i = 0; i < s; ++i)
    for (size_t k = 0; k <= u; ++k) m.at(u + i, i + k) = g[u - k];
  return m;
}

}  // namespace

Term resultant_term(const MonicPoly& f, const std::vector<Term>& g) {
  if (f.degree == 0) return t_one();
  if (g.empty()) return t_zero();  // res(f, 0) with deg f >= 1
  return det_term(sylvester(f.full(), g));
}

namespace {
using TPoly = std::vector<Term>;  // low-to-high, no trailing-zero guarantee

TPoly tp_add(const TPoly& a, const TPoly& b) {
  TPoly r(std::max(a.size(), b.size()), t_zero());
  for (size_t i = 0; i < a.size(); ++i) r[i] = s_add(r[i], a[i]);
  for (size_t i = 0; i < b.size(); ++i) r[i] = s_add(r[i], b[i]);
  return r;
}
TPoly tp_sub(const TPoly& a, const TPoly& b) {
  TPoly r(std::max(a.size(), b.size()), t_zero());
  for (size_t i = 0; i < a.size(); ++i) r[i] = s_add(r[i], a[i]);
  for (size_t i = 0; i < b.size(); ++i) r[i] = s_sub(r[i], b[i]);
  return r;
}
TPoly tp_mul(const TPoly& a, const TPoly& b) {
  if (a.empty() || b.empty()) return {};
  TPoly r(a.size() + b.size() - 1, t_zero());
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = s_add(r[i + j], s_mul(a[i], b[j]));
  return r;
}
}  // namespace

MonicPoly char_poly(const TermMatrix& m) {
  if (!m.square()) throw config_error("char_poly of non-square matrix");
  size_t n = m.rows;
  if (n > 12) throw config_error("char_poly capped at size 12");
  // det(lambda I - M) by memoized cofactor expansion over the polynomial ring.
  DetDP<TPoly> dp{n,
                  [&](size_t i, size_t j) -> TPoly {
                    if (i == j) return {s_neg(m.at(i, j)), t_one()};
                    return {s_neg(m.at(i, j))};
                  },
                  TPoly{},
                  TPoly{t_one()},
                  tp_add,
                  tp_sub,
                  tp_mul,
                  {}};
  TPoly p = dp.run();
  p.resize(n + 1, t_zero());
  if (p[n] != t_one()) throw partition_error("char_poly lost monicity");
  p.pop_back();
  return MonicPoly(n, std::move(p));
}

std::vector<Term> derivative(const MonicPoly& f) {
  if (f.degree == 0) return {};
  std::vector<Term> g(f.degree, t_zero());
  for (size_t k = 1; k < f.degree; ++k)
    g[k - 1] = s_mul(t_int(static_cast<long long>(k)), f.coeffs[k]);
  g[f.degree - 1] = t_int(static_cast<long long>(f.degree));
  return g;
}

TermMatrix poly_at_matrix(const std::vector<Term>& coeffs, const TermMatrix& x) {
  if (!x.square()) throw config_error("poly_at_matrix needs a square matrix");
  size_t n = x.rows;
  TermMatrix acc = TermMatrix::zero(n);
  for (size_t i = coeffs.size(); i-- > 0;) {
    acc = tm_mul(acc, x);
    acc = tm_add(acc, tm_scale(coeffs[i], TermMatrix::identity(n)));
  }
  return acc;
}

namespace {
Term pf_rec(const TermMatrix& m, uint32_t mask, std::unordered_map<uint32_t, Term>& memo) {
  if (mask == 0) return t_one();
  auto it = memo.find(mask);
  if (it != memo.end()) return it->second;
  size_t i = 0;
  while (!(mask & (1u << i))) ++i;
  uint32_t rest = mask & ~(1u << i);
  Term acc = t_zero();
  size_t pos = 0;
  for (size_t j = i + 1; j < m.rows; ++j) {
    if (!(rest & (1u << j))) continue;
    Term prod = s_mul(m.at(i, j), pf_rec(m, rest & ~(1u << j), memo));
    acc = (pos % 2 == 0) ? s_add(acc, prod) : s_sub(acc, prod);
    ++pos;
  }
  memo.emplace(mask, acc);
  return acc;
}
}  // namespace

Term pfaffian_term(const TermMatrix& m) {
  if (!m.square() || m.rows % 2 != 0) throw config_error("pfaffian needs even square size");
  if (m.rows > 16) throw config_error("symbolic pfaffian capped at size 16");
  std::unordered_map<uint32_t, Term> memo;
  uint32_t full = m.rows == 0 ? 0u : ((1u << m.rows) - 1u);
  return pf_rec(m, full, memo);
}

TermMatrix proj_numerator(const TermMatrix& x, const MonicPoly& f, const MonicPoly& ft) {
  if (!x.square()) throw config_error("proj_numerator needs a square matrix");
  size_t s = f.degree, u = ft.degree;
  if (s + u != x.rows) throw config_error("proj_numerator: factor degrees must sum to size");
  if (s == 0) return TermMatrix::zero(x.rows);
  if (u == 0) return TermMatrix::identity(x.rows);
  TermMatrix syl = sylvester(f.full(), ft.full());
  size_t n = s + u;
  // Cramer: coefficient i of the Bezout pair solves Syl^T w = e_last; the
  // value is det(Syl with row i replaced by the unit row at the constant
  // column). Rows u..u+s-1 give v, the cofactor multiplying ft.
  std::vector<Term> vcoef(s);  // v = sum vcoef[k] lambda^k
  for (size_t i = 0; i < s; ++i) {
    TermMatrix rep = syl;
    for (size_t j = 0; j < n; ++j) rep.at(u + i, j) = j + 1 == n ? t_one() : t_zero();
    // Row u+i corresponds to lambda^{s-1-i} ft.
    vcoef[s - 1 - i] = det_term(rep);
  }
  return tm_mul(poly_at_matrix(vcoef, x), poly_at_matrix(ft.full(), x));
}

}  // namespace defring::poly
