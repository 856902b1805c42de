#pragma once
#include <gmpxx.h>

#include <functional>
#include <unordered_map>
#include <vector>

#include "defring/errors.hpp"
#include "defring/structure.hpp"

// Independent exact linear algebra. Everything here is deliberately built
// from first principles (Gaussian elimination, extended gcd, recursive
// Pfaffian) so it can serve as ground truth for the symbolic Term
// constructions without sharing code paths with them.
namespace defring::oracle {

struct RatField {
  using E = mpq_class;
  E zero() const { return E(0); }
  E one() const { return E(1); }
  E add(const E& a, const E& b) const { return a + b; }
  E sub(const E& a, const E& b) const { return a - b; }
  E mul(const E& a, const E& b) const { return a * b; }
  E neg(const E& a) const { return -a; }
  E inv(const E& a) const {
    if (a == 0) throw domain_error("division by zero over Q");
    return E(1) / a;
  }
  E from_int(long long n) const { return E(static_cast<long>(n)); }
  E from_rat(long long n, long long d) const {
    return E(static_cast<long>(n)) / E(static_cast<long>(d));
  }
  E bar(const E& a) const { return a; }
  bool eq(const E& a, const E& b) const { return a == b; }
  bool is_zero(const E& a) const { return a == 0; }
  int size() const { return 0; }  // infinite
};

struct FqField {
  const interp::Structure* s;
  using E = uint16_t;
  E zero() const { return 0; }
  E one() const { return 1; }
  E add(E a, E b) const { return s->add(a, b); }
  E sub(E a, E b) const { return s->sub(a, b); }
  E mul(E a, E b) const { return s->mul(a, b); }
  E neg(E a) const { return s->neg(a); }
  E inv(E a) const { return s->inv(a); }
  E from_int(long long n) const { return s->from_int(n); }
  E from_rat(long long n, long long d) const { return s->from_rat(n, d); }
  E bar(E a) const { return s->has_involution ? s->bar(a) : a; }
  bool eq(E a, E b) const { return a == b; }
  bool is_zero(E a) const { return a == 0; }
  int size() const { return s->size; }
};

template <class E>
struct Mtx {
  size_t rows = 0, cols = 0;
  std::vector<E> e;
  Mtx() = default;
  Mtx(size_t r, size_t c, E fill) : rows(r), cols(c), e(r * c, fill) {}
  E& at(size_t i, size_t j) { return e[i * cols + j]; }
  const E& at(size_t i, size_t j) const { return e[i * cols + j]; }
};

template <class F>
using MatT = Mtx<typename F::E>;
template <class F>
using PolyT = std::vector<typename F::E>;  // low-to-high, trimmed

// --- matrices -------------------------------------------------------------

template <class F>
MatT<F> m_zero(const F& f, size_t n) {
  return MatT<F>(n, n, f.zero());
}

template <class F>
MatT<F> m_identity(const F& f, size_t n) {
  MatT<F> m(n, n, f.zero());
  for (size_t i = 0; i < n; ++i) m.at(i, i) = f.one();
  return m;
}

template <class F>
MatT<F> m_add(const F& f, const MatT<F>& a, const MatT<F>& b) {
  MatT<F> r = a;
  for (size_t i = 0; i < r.e.size(); ++i) r.e[i] = f.add(a.e[i], b.e[i]);
  return r;
}

template <class F>
MatT<F> m_sub(const F& f, const MatT<F>& a, const MatT<F>& b) {
  MatT<F> r = a;
  for (size_t i = 0; i < r.e.size(); ++i) r.e[i] = f.sub(a.e[i], b.e[i]);
  return r;
}

template <class F>
MatT<F> m_mul(const F& f, const MatT<F>& a, const MatT<F>& b) {
  MatT<F> r(a.rows, b.cols, f.zero());
  for (size_t i = 0; i < a.rows; ++i)
    for (size_t k = 0; k < a.cols; ++k)
      for (size_t j = 0; j < b.cols; ++j)
        r.at(i, j) = f.add(r.at(i, j), f.mul(a.at(i, k), b.at(k, j)));
  return r;
}

template <class F>
MatT<F> m_scale(const F& f, const typename F::E& c, const MatT<F>& a) {
  MatT<F> r = a;
  for (auto& x : r.e) x = f.mul(c, x);
  return r;
}

template <class F>
MatT<F> m_transpose(const F&, const MatT<F>& a) {
  MatT<F> r(a.cols, a.rows, a.e.empty() ? typename F::E() : a.e[0]);
  for (size_t i = 0; i < a.rows; ++i)
    for (size_t j = 0; j < a.cols; ++j) r.at(j, i) = a.at(i, j);
  return r;
}

template <class F>
bool m_eq(const F& f, const MatT<F>& a, const MatT<F>& b) {
  if (a.rows != b.rows || a.cols != b.cols) return false;
  for (size_t i = 0; i < a.e.size(); ++i)
    if (!f.eq(a.e[i], b.e[i])) return false;
  return true;
}

template <class F>
typename F::E m_det(const F& f, MatT<F> a) {
  if (a.rows != a.cols) throw config_error("oracle det of non-square matrix");
  size_t n = a.rows;
  typename F::E det = f.one();
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && f.is_zero(a.at(piv, col))) ++piv;
    if (piv == n) return f.zero();
    if (piv != col) {
      for (size_t j = 0; j < n; ++j) std::swap(a.at(piv, j), a.at(col, j));
      det = f.neg(det);
    }
    det = f.mul(det, a.at(col, col));
    typename F::E ip = f.inv(a.at(col, col));
    for (size_t r = col + 1; r < n; ++r) {
      if (f.is_zero(a.at(r, col))) continue;
      typename F::E factor = f.mul(a.at(r, col), ip);
      for (size_t j = col; j < n; ++j)
        a.at(r, j) = f.sub(a.at(r, j), f.mul(factor, a.at(col, j)));
    }
  }
  return det;
}

template <class F>
size_t m_rank(const F& f, MatT<F> a) {
  size_t rank = 0;
  for (size_t col = 0; col < a.cols && rank < a.rows; ++col) {
    size_t piv = rank;
    while (piv < a.rows && f.is_zero(a.at(piv, col))) ++piv;
    if (piv == a.rows) continue;
    for (size_t j = 0; j < a.cols; ++j) std::swap(a.at(piv, j), a.at(rank, j));
    typename F::E ip = f.inv(a.at(rank, col));
    for (size_t r = 0; r < a.rows; ++r) {
      if (r == rank || f.is_zero(a.at(r, col))) continue;
      typename F::E factor = f.mul(a.at(r, col), ip);
      for (size_t j = 0; j < a.cols; ++j)
        a.at(r, j) = f.sub(a.at(r, j), f.mul(factor, a.at(rank, j)));
    }
    ++rank;
  }
  return rank;
}

// Basis of the right nullspace {v : Av = 0}, as column vectors.
template <class F>
std::vector<std::vector<typename F::E>> m_nullspace(const F& f, MatT<F> a) {
  size_t n = a.cols;
  std::vector<int> pivot_col;
  size_t rank = 0;
  for (size_t col = 0; col < n && rank < a.rows; ++col) {
    size_t piv = rank;
    while (piv < a.rows && f.is_zero(a.at(piv, col))) ++piv;
    if (piv == a.rows) continue;
    for (size_t j = 0; j < n; ++j) std::swap(a.at(piv, j), a.at(rank, j));
    typename F::E ip = f.inv(a.at(rank, col));
    for (size_t j = 0; j < n; ++j) a.at(rank, j) = f.mul(ip, a.at(rank, j));
    for (size_t r = 0; r < a.rows; ++r) {
      if (r == rank || f.is_zero(a.at(r, col))) continue;
      typename F::E factor = a.at(r, col);
      for (size_t j = 0; j < n; ++j)
        a.at(r, j) = f.sub(a.at(r, j), f.mul(factor, a.at(rank, j)));
    }
    pivot_col.push_back(static_cast<int>(col));
    ++rank;
  }
  std::vector<bool> is_pivot(n, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<typename F::E>> basis;
  for (size_t free_col = 0; free_col < n; ++free_col) {
    if (is_pivot[free_col]) continue;
    std::vector<typename F::E> v(n, f.zero());
    v[free_col] = f.one();
    for (size_t r = 0; r < rank; ++r)
      v[pivot_col[r]] = f.neg(a.at(r, free_col));
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class F>
MatT<F> m_inverse(const F& f, MatT<F> a) {
  size_t n = a.rows;
  MatT<F> inv = m_identity(f, n);
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && f.is_zero(a.at(piv, col))) ++piv;
    if (piv == n) throw domain_error("oracle inverse of singular matrix");
    if (piv != col)
      for (size_t j = 0; j < n; ++j) {
        std::swap(a.at(piv, j), a.at(col, j));
        std::swap(inv.at(piv, j), inv.at(col, j));
      }
    typename F::E ip = f.inv(a.at(col, col));
    for (size_t j = 0; j < n; ++j) {
      a.at(col, j) = f.mul(ip, a.at(col, j));
      inv.at(col, j) = f.mul(ip, inv.at(col, j));
    }
    for (size_t r = 0; r < n; ++r) {
      if (r == col || f.is_zero(a.at(r, col))) continue;
      typename F::E factor = a.at(r, col);
      for (size_t j = 0; j < n; ++j) {
        a.at(r, j) = f.sub(a.at(r, j), f.mul(factor, a.at(col, j)));
        inv.at(r, j) = f.sub(inv.at(r, j), f.mul(factor, inv.at(col, j)));
      }
    }
  }
  return inv;
}

// --- polynomials ----------------------------------------------------------

template <class F>
PolyT<F> p_trim(const F& f, PolyT<F> a) {
  while (!a.empty() && f.is_zero(a.back())) a.pop_back();
  return a;
}

template <class F>
PolyT<F> p_add(const F& f, const PolyT<F>& a, const PolyT<F>& b) {
  PolyT<F> r(std::max(a.size(), b.size()), f.zero());
  for (size_t i = 0; i < a.size(); ++i) r[i] = f.add(r[i], a[i]);
  for (size_t i = 0; i < b.size(); ++i) r[i] = f.add(r[i], b[i]);
  return p_trim(f, r);
}

template <class F>
PolyT<F> p_sub(const F& f, const PolyT<F>& a, const PolyT<F>& b) {
  PolyT<F> r(std::max(a.size(), b.size()), f.zero());
  for (size_t i = 0; i < a.size(); ++i) r[i] = f.add(r[i], a[i]);
  for (size_t i = 0; i < b.size(); ++i) r[i] = f.sub(r[i], b[i]);
  return p_trim(f, r);
}

template <class F>
PolyT<F> p_mul(const F& f, const PolyT<F>& a, const PolyT<F>& b) {
  if (a.empty() || b.empty()) return {};
  PolyT<F> r(a.size() + b.size() - 1, f.zero());
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
  return p_trim(f, r);
}

template <class F>
PolyT<F> p_scale(const F& f, const typename F::E& c, const PolyT<F>& a) {
  PolyT<F> r = a;
  for (auto& x : r) x = f.mul(c, x);
  return p_trim(f, r);
}

template <class F>
std::pair<PolyT<F>, PolyT<F>> p_divmod(const F& f, PolyT<F> a, const PolyT<F>& b) {
  if (b.empty()) throw domain_error("polynomial division by zero");
  a = p_trim(f, a);
  if (a.size() < b.size()) return {{}, a};
  typename F::E ilead = f.inv(b.back());
  PolyT<F> q(a.size() - b.size() + 1, f.zero());
  for (size_t shift = a.size() - b.size() + 1; shift-- > 0;) {
    typename F::E c = f.mul(a[shift + b.size() - 1], ilead);
    if (f.is_zero(c)) continue;
    q[shift] = c;
    for (size_t j = 0; j < b.size(); ++j)
      a[shift + j] = f.sub(a[shift + j], f.mul(c, b[j]));
  }
  return {p_trim(f, q), p_trim(f, a)};
}

template <class F>
PolyT<F> p_monic(const F& f, const PolyT<F>& a) {
  if (a.empty()) return a;
  return p_scale(f, f.inv(a.back()), a);
}

template <class F>
PolyT<F> p_gcd(const F& f, PolyT<F> a, PolyT<F> b) {
  a = p_trim(f, a);
  b = p_trim(f, b);
  while (!b.empty()) {
    auto [q, r] = p_divmod(f, a, b);
    (void)q;
    a = std::move(b);
    b = std::move(r);
  }
  return p_monic(f, a);
}

// g = gcd(a,b) monic, with u a + v b = g.
template <class F>
struct Egcd {
  PolyT<F> g, u, v;
};

template <class F>
Egcd<F> p_egcd(const F& f, PolyT<F> a, PolyT<F> b) {
  PolyT<F> r0 = p_trim(f, a), r1 = p_trim(f, b);
  PolyT<F> u0{f.one()}, u1{}, v0{}, v1{f.one()};
  while (!r1.empty()) {
    auto [q, r2] = p_divmod(f, r0, r1);
    PolyT<F> u2 = p_sub(f, u0, p_mul(f, q, u1));
    PolyT<F> v2 = p_sub(f, v0, p_mul(f, q, v1));
    r0 = std::move(r1);
    r1 = std::move(r2);
    u0 = std::move(u1);
    u1 = std::move(u2);
    v0 = std::move(v1);
    v1 = std::move(v2);
  }
  if (!r0.empty()) {
    typename F::E il = f.inv(r0.back());
    r0 = p_scale(f, il, r0);
    u0 = p_scale(f, il, u0);
    v0 = p_scale(f, il, v0);
  }
  return {r0, u0, v0};
}

template <class F>
PolyT<F> p_derivative(const F& f, const PolyT<F>& a) {
  PolyT<F> r;
  for (size_t i = 1; i < a.size(); ++i)
    r.push_back(f.mul(f.from_int(static_cast<long long>(i)), a[i]));
  return p_trim(f, r);
}

template <class F>
MatT<F> p_eval_mat(const F& f, const PolyT<F>& a, const MatT<F>& x) {
  size_t n = x.rows;
  MatT<F> acc = m_zero(f, n);
  for (size_t i = a.size(); i-- > 0;) {
    acc = m_mul(f, acc, x);
    for (size_t d = 0; d < n; ++d) acc.at(d, d) = f.add(acc.at(d, d), a[i]);
  }
  return acc;
}

// Characteristic polynomial det(lambda I - M), monic, size n+1 coefficients.
template <class F>
PolyT<F> char_poly_concrete(const F& f, const MatT<F>& m);

template <class F>
bool is_regular_concrete(const F& f, const MatT<F>& m, bool so_even_ambient = false);

// --- Pfaffians ------------------------------------------------------------

template <class F>
typename F::E pfaffian_concrete(const F& f, const MatT<F>& m);

template <class F>
MatT<F> psi_embed(const F& f, const MatT<F>& a, const MatT<F>& b);

// theta(M) = pf(J M) for a given J.
template <class F>
typename F::E theta(const F& f, const MatT<F>& j, const MatT<F>& m) {
  return pfaffian_concrete(f, m_mul(f, j, m));
}

// --- centralizers and projectors -------------------------------------------

template <class F>
std::vector<MatT<F>> centralizer_basis(const F& f, const MatT<F>& m);

template <class F>
MatT<F> eigenprojector(const F& f, const MatT<F>& x, const PolyT<F>& fpoly,
                       const PolyT<F>& ftpoly);

// All monic factorizations only exist over finite fields; enumerate monic
// irreducible factors of a by trial division.
std::vector<std::vector<uint16_t>> irreducible_factors(const FqField& f,
                                                       std::vector<uint16_t> a);

// --- template definitions --------------------------------------------------

template <class F>
PolyT<F> char_poly_concrete(const F& f, const MatT<F>& m) {
  if (m.rows != m.cols) throw config_error("char poly of non-square matrix");
  size_t n = m.rows;
  if (n > 16) throw config_error("oracle char poly capped at size 16");
  // Memoized cofactor expansion over F[lambda].
  std::unordered_map<uint32_t, PolyT<F>> memo;
  std::function<PolyT<F>(uint32_t, size_t)> rec = [&](uint32_t mask,
                                                      size_t row) -> PolyT<F> {
    if (mask == 0) return PolyT<F>{f.one()};
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    PolyT<F> acc;
    size_t pos = 0;
    for (size_t j = 0; j < n; ++j) {
      if (!(mask & (1u << j))) continue;
      PolyT<F> entry = row == j ? PolyT<F>{f.neg(m.at(row, j)), f.one()}
                                : PolyT<F>{f.neg(m.at(row, j))};
      entry = p_trim(f, entry);
      PolyT<F> prod = p_mul(f, entry, rec(mask & ~(1u << j), row + 1));
      acc = pos % 2 == 0 ? p_add(f, acc, prod) : p_sub(f, acc, prod);
      ++pos;
    }
    memo.emplace(mask, acc);
    return acc;
  };
  PolyT<F> p = rec(n == 0 ? 0u : ((1u << n) - 1u), 0);
  p.resize(n + 1, f.zero());
  return p;
}

template <class F>
bool is_regular_concrete(const F& f, const MatT<F>& m, bool so_even_ambient) {
  PolyT<F> p = char_poly_concrete(f, m);
  PolyT<F> dp = p_derivative(f, p);
  if (p_gcd(f, p, dp).size() <= 1) return true;
  if (!so_even_ambient) return false;
  // Accept the pattern: eigenvalue 0 of multiplicity exactly 2, remaining
  // eigenvalues distinct and nonzero (P = lambda^2 h, h(0) != 0, h squarefree).
  if (p.size() < 3 || !f.is_zero(p[0]) || !f.is_zero(p[1])) return false;
  PolyT<F> h(p.begin() + 2, p.end());
  h = p_trim(f, h);
  if (h.empty() || f.is_zero(h[0])) return false;
  return p_gcd(f, h, p_derivative(f, h)).size() <= 1;
}

template <class F>
typename F::E pfaffian_concrete(const F& f, const MatT<F>& m) {
  if (m.rows != m.cols || m.rows % 2 != 0)
    throw config_error("pfaffian needs an even square matrix");
  if (m.rows > 16) throw config_error("oracle pfaffian capped at size 16");
  std::unordered_map<uint32_t, typename F::E> memo;
  std::function<typename F::E(uint32_t)> rec = [&](uint32_t mask) -> typename F::E {
    if (mask == 0) return f.one();
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    size_t i = 0;
    while (!(mask & (1u << i))) ++i;
    uint32_t rest = mask & ~(1u << i);
    typename F::E acc = f.zero();
    size_t pos = 0;
    for (size_t j = i + 1; j < m.rows; ++j) {
      if (!(rest & (1u << j))) continue;
      typename F::E prod = f.mul(m.at(i, j), rec(rest & ~(1u << j)));
      acc = pos % 2 == 0 ? f.add(acc, prod) : f.sub(acc, prod);
      ++pos;
    }
    memo.emplace(mask, acc);
    return acc;
  };
  return rec(m.rows == 0 ? 0u : ((1u << m.rows) - 1u));
}

template <class F>
MatT<F> psi_embed(const F& f, const MatT<F>& a, const MatT<F>& b) {
  if (a.rows != a.cols || b.rows != b.cols || b.rows % 2 != 0)
    throw config_error("psi_embed needs square A and even square B");
  size_t ta = a.rows, hb = b.rows / 2;
  size_t n = ta + b.rows;
  MatT<F> r(n, n, f.zero());
  // Layout: [B1 0 B2; 0 A 0; B3 0 B4], B split into half-size corners.
  for (size_t i = 0; i < hb; ++i)
    for (size_t j = 0; j < hb; ++j) {
      r.at(i, j) = b.at(i, j);                            // B1
      r.at(i, ta + hb + j) = b.at(i, hb + j);             // B2
      r.at(ta + hb + i, j) = b.at(hb + i, j);             // B3
      r.at(ta + hb + i, ta + hb + j) = b.at(hb + i, hb + j);  // B4
    }
  for (size_t i = 0; i < ta; ++i)
    for (size_t j = 0; j < ta; ++j) r.at(hb + i, hb + j) = a.at(i, j);
  return r;
}

template <class F>
std::vector<MatT<F>> centralizer_basis(const F& f, const MatT<F>& m) {
  size_t n = m.rows;
  // Linear map Y -> MY - YM on the n^2 coordinates y_kl.
  MatT<F> l(n * n, n * n, f.zero());
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < n; ++k)
        for (size_t lcol = 0; lcol < n; ++lcol) {
          typename F::E c = f.zero();
          if (lcol == j) c = f.add(c, m.at(i, k));
          if (k == i) c = f.sub(c, m.at(lcol, j));
          l.at(i * n + j, k * n + lcol) = c;
        }
  auto null = m_nullspace(f, l);
  std::vector<MatT<F>> basis;
  for (auto& v : null) {
    MatT<F> y(n, n, f.zero());
    for (size_t k = 0; k < n; ++k)
      for (size_t lcol = 0; lcol < n; ++lcol) y.at(k, lcol) = v[k * n + lcol];
    basis.push_back(std::move(y));
  }
  return basis;
}

template <class F>
MatT<F> eigenprojector(const F& f, const MatT<F>& x, const PolyT<F>& fpoly,
                       const PolyT<F>& ftpoly) {
  Egcd<F> e = p_egcd(f, fpoly, ftpoly);
  if (e.g.size() != 1)
    throw domain_error("eigenprojector requires coprime factors");
  // u f + v ft = 1 after normalization; the projector onto ker f(X) is (v ft)(X).
  return p_eval_mat(f, p_mul(f, e.v, ftpoly), x);
}

}  // namespace defring::oracle
