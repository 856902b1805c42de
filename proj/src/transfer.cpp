#include "defring/transfer.hpp"

#include "defring/errors.hpp"
#include "defring/oracle.hpp"

namespace defring::transfer {

using namespace defring::lang;
using defring::interp::BuildCtx;
using defring::interp::Evaluator;
using defring::interp::QuantHint;
using defring::interp::Structure;
using defring::lie::Family;
using defring::poly::MonicPoly;
using defring::poly::TermMatrix;

namespace {

using FMat = oracle::Mtx<uint16_t>;
using Yield = std::function<bool(const std::vector<uint16_t>&)>;

// --- fresh blocks -----------------------------------------------------------

TermMatrix fresh_mat(BuildCtx& ctx, size_t n, std::vector<Var>& vars_out) {
  Var base = ctx.fresh.fresh();
  TermMatrix m(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      Var v{base.name, {static_cast<int>(i + 1), static_cast<int>(j + 1)}};
      vars_out.push_back(v);
      m.at(i, j) = t_var(v);
    }
  return m;
}

std::vector<Var> fresh_scalars(BuildCtx& ctx, size_t n) {
  Var base = ctx.fresh.fresh();
  std::vector<Var> vs;
  for (size_t i = 0; i < n; ++i) vs.push_back(Var{base.name, {static_cast<int>(i + 1)}});
  return vs;
}

MonicPoly fresh_poly(BuildCtx& ctx, size_t deg, std::vector<Var>& vars_out) {
  Var base = ctx.fresh.fresh();
  std::vector<Term> cs;
  for (size_t i = 0; i < deg; ++i) {
    Var v{base.name, {static_cast<int>(i)}};
    vars_out.push_back(v);
    cs.push_back(t_var(v));
  }
  return MonicPoly(deg, std::move(cs));
}

// --- generator plumbing ------------------------------------------------------

FMat eval_mat(Evaluator& ev, const TermMatrix& m) {
  FMat r(m.rows, m.cols, 0);
  for (size_t i = 0; i < m.e.size(); ++i) r.e[i] = ev.eval_term(m.e[i]);
  return r;
}

std::vector<uint16_t> eval_full(Evaluator& ev, const MonicPoly& p) {
  std::vector<uint16_t> r;
  for (Term t : p.coeffs) r.push_back(ev.eval_term(t));
  r.push_back(1);
  return r;
}

FMat j_concrete(const oracle::FqField& f, const Family& fam) {
  lie::RatMat jr = lie::j_rational(fam);
  FMat j(jr.rows, jr.cols, 0);
  for (size_t i = 0; i < jr.e.size(); ++i)
    j.e[i] = f.from_rat(jr.e[i].get_num().get_si(), jr.e[i].get_den().get_si());
  return j;
}

FMat bar_transpose(const oracle::FqField& f, const FMat& m) {
  FMat r(m.cols, m.rows, 0);
  for (size_t i = 0; i < m.rows; ++i)
    for (size_t j = 0; j < m.cols; ++j) r.at(j, i) = f.bar(m.at(i, j));
  return r;
}

uint16_t trace3(const oracle::FqField& f, const FMat& a, const FMat& b, const FMat& c) {
  FMat p = oracle::m_mul(f, a, oracle::m_mul(f, b, c));
  uint16_t t = 0;
  for (size_t i = 0; i < p.rows; ++i) t = f.add(t, p.at(i, i));
  return t;
}

// Odometer over all linear combinations of a basis; yields the combination
// matrix. Returns false when the consumer stopped.
bool for_each_span(const oracle::FqField& f, const std::vector<FMat>& basis, size_t n,
                   const std::function<bool(const FMat&)>& fn) {
  size_t dim = basis.size();
  std::vector<uint16_t> digits(dim, 0);
  while (true) {
    FMat m(n, n, 0);
    for (size_t d = 0; d < dim; ++d)
      if (digits[d] != 0) m = oracle::m_add(f, m, oracle::m_scale(f, digits[d], basis[d]));
    if (!fn(m)) return false;
    size_t i = 0;
    while (i < dim && ++digits[i] == f.size()) digits[i++] = 0;
    if (i == dim) return true;
  }
}

// Hint: the block ranges over the centralizer of the evaluated parameter
// matrix, enumerated as the span of an oracle-computed basis.
void add_span_hint(BuildCtx& ctx, std::vector<Var> group, TermMatrix x, Formula guard) {
  size_t n = x.rows;
  QuantHint h;
  h.group = std::move(group);
  h.guard = std::move(guard);
  h.gen = [x, n](const Structure& s, Evaluator& ev, const Yield& yield) {
    oracle::FqField f{&s};
    FMat xm = eval_mat(ev, x);
    auto basis = oracle::centralizer_basis(f, xm);
    for_each_span(f, basis, n, [&](const FMat& m) {
      return yield(std::vector<uint16_t>(m.e.begin(), m.e.end()));
    });
  };
  ctx.hints.push_back(std::move(h));
}

// Hint: the block is the (unique) matrix inverse of the evaluated parameter.
void add_inverse_hint(BuildCtx& ctx, std::vector<Var> group, TermMatrix a, Formula guard) {
  QuantHint h;
  h.group = std::move(group);
  h.guard = std::move(guard);
  h.gen = [a](const Structure& s, Evaluator& ev, const Yield& yield) {
    oracle::FqField f{&s};
    FMat am = eval_mat(ev, a);
    try {
      FMat inv = oracle::m_inverse(f, am);
      yield(std::vector<uint16_t>(inv.e.begin(), inv.e.end()));
    } catch (const domain_error&) {
      // singular: no candidate satisfies a b = 1
    }
  };
  ctx.hints.push_back(std::move(h));
}

// Hint: the cofactor coefficients are the exact polynomial quotient p / f.
void add_divisor_hint(BuildCtx& ctx, std::vector<Var> group, MonicPoly p, MonicPoly f,
                      Formula guard) {
  size_t deg = group.size();
  QuantHint h;
  h.group = std::move(group);
  h.guard = std::move(guard);
  h.gen = [p, f, deg](const Structure& s, Evaluator& ev, const Yield& yield) {
    oracle::FqField fq{&s};
    auto [q, r] = oracle::p_divmod(fq, eval_full(ev, p), eval_full(ev, f));
    if (!r.empty() || q.size() != deg + 1 || q.back() != 1) return;
    q.pop_back();
    yield(q);
  };
  ctx.hints.push_back(std::move(h));
}

// Hint for one factorization disjunct: enumerate ordered tuples of monic
// divisor chains of the evaluated polynomial with the block's degrees.
void add_factor_hint(BuildCtx& ctx, const poly::FactorBlock& blk, MonicPoly f, Formula guard) {
  std::vector<Var> group;
  std::vector<size_t> degs;
  for (size_t i = 0; i < blk.groups.size(); ++i) {
    group.insert(group.end(), blk.groups[i].begin(), blk.groups[i].end());
    degs.push_back(blk.factors[i].degree);
  }
  if (group.empty()) return;
  QuantHint h;
  h.group = std::move(group);
  h.guard = std::move(guard);
  h.gen = [f, degs](const Structure& s, Evaluator& ev, const Yield& yield) {
    oracle::FqField fq{&s};
    std::vector<uint16_t> rem = eval_full(ev, f);
    std::vector<uint16_t> tuple;
    bool stop = false;
    std::function<void(size_t, std::vector<uint16_t>)> rec =
        [&](size_t slot, std::vector<uint16_t> cur) {
          if (stop) return;
          if (slot == degs.size()) {
            if (cur.size() == 1 && cur[0] == 1)
              if (!yield(tuple)) stop = true;
            return;
          }
          size_t d = degs[slot];
          long long count = 1;
          for (size_t i = 0; i < d; ++i) count *= fq.size();
          for (long long idx = 0; idx < count && !stop; ++idx) {
            std::vector<uint16_t> cand(d + 1, 0);
            long long v = idx;
            for (size_t i = 0; i < d; ++i) {
              cand[i] = static_cast<uint16_t>(v % fq.size());
              v /= fq.size();
            }
            cand[d] = 1;
            auto [q, r] = oracle::p_divmod(fq, cur, cand);
            if (!r.empty()) continue;
            tuple.insert(tuple.end(), cand.begin(), cand.end() - 1);
            rec(slot + 1, q);
            tuple.resize(tuple.size() - d);
          }
        };
    rec(0, rem);
  };
  ctx.hints.push_back(std::move(h));
}

// Hint: a pure-imaginary scalar (bar e = -e).
void add_imaginary_hint(BuildCtx& ctx, const Var& v, Formula guard) {
  QuantHint h;
  h.group = {v};
  h.guard = std::move(guard);
  h.gen = [](const Structure& s, Evaluator&, const Yield& yield) {
    for (int e = 0; e < s.size; ++e)
      if (s.bar(static_cast<uint16_t>(e)) == s.neg(static_cast<uint16_t>(e)))
        if (!yield({static_cast<uint16_t>(e)})) return;
  };
  ctx.hints.push_back(std::move(h));
}

// Hint: candidate bases of the centralizer whose Gram matrix under the
// twisted trace form already equals J; depth-first with pruning on the new
// row and column of the Gram matrix.
void add_basis_hint(BuildCtx& ctx, std::vector<Var> group, Family fam, TermMatrix x,
                    TermMatrix c, Formula guard) {
  size_t n = x.rows;
  QuantHint h;
  h.group = std::move(group);
  h.guard = std::move(guard);
  h.gen = [fam, x, c, n](const Structure& s, Evaluator& ev, const Yield& yield) {
    oracle::FqField f{&s};
    FMat xm = eval_mat(ev, x);
    FMat cm = eval_mat(ev, c);
    auto basis = oracle::centralizer_basis(f, xm);
    FMat j, jinv;
    try {
      j = j_concrete(f, fam);
      jinv = oracle::m_inverse(f, j);
    } catch (const domain_error&) {
      // The form constants do not exist in this structure (e.g. 1/2 in
      // characteristic 2). Fall back to full enumeration so the body decides,
      // exactly as naive evaluation would.
      size_t cells = n * n * n;
      std::vector<uint16_t> tuple(cells, 0);
      while (true) {
        if (!yield(tuple)) return;
        size_t i = 0;
        while (i < cells && ++tuple[i] == s.size) tuple[i++] = 0;
        if (i == cells) return;
      }
    }
    auto tau = [&](const FMat& m) {
      return oracle::m_mul(f, jinv, oracle::m_mul(f, bar_transpose(f, m), j));
    };
    std::vector<FMat> chosen, tau_chosen;
    bool stop = false;
    std::function<void()> rec = [&]() {
      if (stop) return;
      size_t slot = chosen.size();
      if (slot == n) {
        std::vector<uint16_t> tuple;
        for (const FMat& m : chosen) tuple.insert(tuple.end(), m.e.begin(), m.e.end());
        if (!yield(tuple)) stop = true;
        return;
      }
      for_each_span(f, basis, n, [&](const FMat& e) {
        FMat te = tau(e);
        for (size_t i = 0; i < slot; ++i) {
          if (trace3(f, tau_chosen[i], e, cm) != j.at(i, slot)) return true;
          if (trace3(f, te, chosen[i], cm) != j.at(slot, i)) return true;
        }
        if (trace3(f, te, e, cm) != j.at(slot, slot)) return true;
        chosen.push_back(e);
        tau_chosen.push_back(te);
        rec();
        chosen.pop_back();
        tau_chosen.pop_back();
        return !stop;
      });
    };
    rec();
  };
  ctx.hints.push_back(std::move(h));
}

TermMatrix scaled_sum(const std::vector<Var>& scalars, const std::vector<TermMatrix>& mats,
                      size_t n) {
  TermMatrix acc = TermMatrix::zero(n);
  for (size_t i = 0; i < scalars.size(); ++i)
    acc = poly::tm_add(acc, poly::tm_scale(t_var(scalars[i]), mats[i]));
  return acc;
}

}  // namespace

Formula even_k(const std::vector<Formula>& args) {
  Formula even = f_true(), odd = f_false();
  for (const Formula& a : args) {
    Formula na = f_not(a);
    Formula e2 = f_or(f_and(a, even), f_and(na, odd));
    Formula o2 = f_or(f_and(a, odd), f_and(na, even));
    even = e2;
    odd = o2;
  }
  return even;
}

MonicPoly pz0(lie::TripleSpec::Case c, const MonicPoly& pz) {
  if (c != lie::TripleSpec::Case::OddOrth) return pz;
  if (pz.degree == 0) throw config_error("pz0 needs a positive-degree polynomial");
  // P = lambda P0 on the odd orthogonal algebra: drop the constant term.
  return MonicPoly(pz.degree - 1,
                   std::vector<Term>(pz.coeffs.begin() + 1, pz.coeffs.end()));
}

Formula norm_formula(const Family& fam, const TermMatrix& x, const MonicPoly& f,
                     const TermMatrix& u, BuildCtx& ctx) {
  size_t n = x.rows;
  if (f.degree > n) return f_false();
  MonicPoly p = poly::char_poly(x);
  std::vector<Var> ftvars;
  MonicPoly ft = fresh_poly(ctx, n - f.degree, ftvars);
  std::vector<Var> x1vars;
  TermMatrix x1 = fresh_mat(ctx, n, x1vars);

  Formula in_cent = lie::centralizer_body(x, x1);
  Formula prod = poly::product_eq(p, {f, ft});
  TermMatrix pi = poly::proj_numerator(x, f, ft);
  TermMatrix lhs = poly::tm_mul(pi, poly::tm_mul(x1, lie::tau_apply(fam, x1)));
  TermMatrix rhs = poly::tm_mul(pi, u);
  Formula inner =
      f_big_and({in_cent, prod, lie::centralizer_body(x, u), poly::tm_eq(lhs, rhs)});

  if (!ftvars.empty()) add_divisor_hint(ctx, ftvars, p, f, prod);
  if (!x1vars.empty()) add_span_hint(ctx, x1vars, x, in_cent);
  return f_exists_all(ftvars, f_exists_all(x1vars, inner));
}

Formula trace_form_formula(const Family& fam, const TermMatrix& x, const TermMatrix& c,
                           BuildCtx& ctx) {
  size_t n = x.rows;
  std::vector<Var> evars;
  std::vector<TermMatrix> e;
  for (size_t i = 0; i < n; ++i) e.push_back(fresh_mat(ctx, n, evars));

  // Linear independence of the e_i.
  std::vector<Var> avars = fresh_scalars(ctx, n);
  std::vector<Formula> all_zero;
  for (const Var& a : avars) all_zero.push_back(f_eq(t_var(a), t_zero()));
  Formula lin = f_forall_all(
      avars, f_implies(poly::tm_eq(scaled_sum(avars, e, n), TermMatrix::zero(n)),
                       f_big_and(all_zero)));

  // The e_i span the centralizer.
  std::vector<Var> vvars;
  TermMatrix v = fresh_mat(ctx, n, vvars);
  Formula v_in_cent = lie::centralizer_body(x, v);
  std::vector<Var> lvars = fresh_scalars(ctx, n);
  Formula span = f_forall_all(
      vvars,
      f_implies(v_in_cent, f_exists_all(lvars, poly::tm_eq(scaled_sum(lvars, e, n), v))));
  if (n > 0) add_span_hint(ctx, vvars, x, v_in_cent);

  // The twisted trace form in these coordinates is J.
  std::vector<Var> xs = fresh_scalars(ctx, n), xps = fresh_scalars(ctx, n);
  TermMatrix big_e = scaled_sum(xs, e, n), big_ep = scaled_sum(xps, e, n);
  Term lhs = poly::tm_trace(
      poly::tm_mul(lie::tau_apply(fam, big_e), poly::tm_mul(big_ep, c)));
  lie::RatMat jr = lie::j_rational(fam);
  Term rhs = t_zero();
  for (size_t i = 0; i < n; ++i)
    for (size_t jj = 0; jj < n; ++jj) {
      const mpq_class& q = jr.at(i, jj);
      if (q == 0) continue;
      Term xi = t_var(xs[i]);
      if (fam.unitary()) xi = t_bar(xi);
      rhs = s_add(rhs, s_mul(xi, s_mul(t_rat(q.get_num().get_si(), q.get_den().get_si()),
                                       t_var(xps[jj]))));
    }
  Formula gram = f_forall_all(xs, f_forall_all(xps, f_eq(lhs, rhs)));

  Formula body = f_big_and({lin, span, lie::centralizer_body(x, c), gram});

  if (n > 0) {
    std::vector<Formula> guard_parts;
    for (size_t i = 0; i < n; ++i) guard_parts.push_back(lie::centralizer_body(x, e[i]));
    TermMatrix jm = lie::j_matrix(fam);
    for (size_t i = 0; i < n; ++i)
      for (size_t jj = 0; jj < n; ++jj)
        guard_parts.push_back(f_eq(
            poly::tm_trace(poly::tm_mul(lie::tau_apply(fam, e[i]),
                                        poly::tm_mul(e[jj], c))),
            jm.at(i, jj)));
    add_basis_hint(ctx, evars, fam, x, c, f_big_and(guard_parts));
  }
  return f_exists_all(evars, body);
}

Formula even_parity(const MonicPoly& f, const PhiFn& phi, BuildCtx& ctx) {
  if (f.degree == 0) return f_true();
  std::vector<Formula> disjuncts;
  for (size_t l = 1; l <= f.degree; ++l) {
    disjuncts.push_back(poly::exists_factorization(
        f, l,
        [](const std::vector<size_t>& d) {
          for (size_t k : d)
            if (k < 1) return false;
          return true;
        },
        [&](const poly::FactorBlock& blk) {
          std::vector<Formula> conj;
          std::vector<Formula> phis;
          for (const MonicPoly& fi : blk.factors) {
            conj.push_back(poly::irred(fi, ctx.fresh));
            phis.push_back(phi(fi));
          }
          conj.push_back(even_k(phis));
          return f_big_and(conj);
        },
        ctx.fresh,
        [&](const poly::FactorBlock& blk, const Formula& guard) {
          add_factor_hint(ctx, blk, f, guard);
        }));
  }
  return f_big_or(disjuncts);
}

Formula phi_case(const lie::TripleSpec& t, const MonicPoly& f, const TermMatrix& x,
                 const TermMatrix& cp, Term eps, BuildCtx& ctx) {
  Family g = t.g();
  MonicPoly px = poly::char_poly(x);
  TermMatrix pdx = poly::poly_at_matrix(poly::derivative(px), x);
  switch (t.c) {
    case lie::TripleSpec::Case::OddOrth:
    case lie::TripleSpec::Case::Sympl: {
      if (f.degree % 2 != 0) return f_true();  // antecedent even(f) fails
      return f_implies(poly::even_poly(f),
                       norm_formula(g, x, f, poly::tm_mul(pdx, cp), ctx));
    }
    case lie::TripleSpec::Case::EvenOrth: {
      if (f.degree % 2 != 0) return f_true();
      std::vector<Var> xpvars;
      TermMatrix xp = fresh_mat(ctx, g.n, xpvars);
      Formula invert = poly::tm_eq(poly::tm_mul(x, xp), TermMatrix::identity(g.n));
      Formula inner = f_big_and(
          {lie::centralizer_body(x, xp), invert,
           norm_formula(g, x, f, poly::tm_mul(poly::tm_mul(pdx, cp), xp), ctx)});
      if (!xpvars.empty()) add_inverse_hint(ctx, xpvars, x, invert);
      return f_implies(poly::even_poly(f), f_exists_all(xpvars, inner));
    }
    case lie::TripleSpec::Case::Unitary: {
      if (eps == nullptr) throw config_error("unitary phi needs the imaginary scalar");
      TermMatrix xe = poly::tm_scale(eps, x);
      return norm_formula(g, xe, f, poly::tm_mul(pdx, cp), ctx);
    }
  }
  throw config_error("bad triple case");
}

VirtualSet pm_set(const lie::TripleSpec& t) {
  Family g = t.g(), h1 = t.h1(), h2 = t.h2();
  TermMatrix x = TermMatrix::vars(g.n, "x");
  TermMatrix y = TermMatrix::vars(h1.n, "y");
  TermMatrix z = TermMatrix::vars(h2.n, "z");
  std::vector<Formula> conj{
      lie::lie_membership(g, x),  lie::regular_cond(g, x),
      lie::lie_membership(h1, y), lie::regular_cond(h1, y),
      lie::lie_membership(h2, z), lie::regular_cond(h2, z)};
  MonicPoly px = poly::char_poly(x), py = poly::char_poly(y), pz = poly::char_poly(z);
  switch (t.c) {
    case lie::TripleSpec::Case::OddOrth: {
      // lambda P_X = P_Y P_Z.
      std::vector<Term> shifted{t_zero()};
      shifted.insert(shifted.end(), px.coeffs.begin(), px.coeffs.end());
      conj.push_back(poly::product_eq(MonicPoly(px.degree + 1, std::move(shifted)), {py, pz}));
      break;
    }
    case lie::TripleSpec::Case::Sympl:
    case lie::TripleSpec::Case::Unitary:
      conj.push_back(poly::product_eq(px, {py, pz}));
      break;
    case lie::TripleSpec::Case::EvenOrth: {
      conj.push_back(poly::product_eq(px, {py, pz}));
      Term rhs = s_mul(lie::theta_term(h1, y), lie::theta_term(h2, z));
      if ((t.a * t.b) % 2 != 0) rhs = s_neg(rhs);
      conj.push_back(f_eq(lie::theta_term(g, x), rhs));
      break;
    }
  }
  VirtualSet v;
  v.sig = poly::tm_var_list(g.n, "x");
  auto ys = poly::tm_var_list(h1.n, "y"), zs = poly::tm_var_list(h2.n, "z");
  v.sig.insert(v.sig.end(), ys.begin(), ys.end());
  v.sig.insert(v.sig.end(), zs.begin(), zs.end());
  v.body = f_big_and(conj);
  v.lang = g.unitary() ? Lang::RingWithInvolution : Lang::Ring;
  return v;
}

namespace {

Formula plus_block(const lie::TripleSpec& t, BuildCtx& ctx) {
  Family g = t.g(), h2 = t.h2();
  TermMatrix x = TermMatrix::vars(g.n, "x");
  TermMatrix z = TermMatrix::vars(h2.n, "z");

  std::vector<Var> cvars, cpvars;
  TermMatrix c = fresh_mat(ctx, g.n, cvars);
  TermMatrix cp = fresh_mat(ctx, g.n, cpvars);

  Formula c_in = lie::centralizer_body(x, c);
  Formula cp_in = lie::centralizer_body(x, cp);
  Formula unit = poly::tm_eq(poly::tm_mul(c, cp), TermMatrix::identity(g.n));
  Formula twisted =
      poly::tm_eq(lie::tau_apply(g, c), poly::tm_scale(t_int(t.chi()), c));
  Formula tf = trace_form_formula(g, x, c, ctx);

  Formula parity;
  if (t.c != lie::TripleSpec::Case::Unitary) {
    MonicPoly p0 = pz0(t.c, poly::char_poly(z));
    parity = even_parity(
        p0, [&](const MonicPoly& f) { return phi_case(t, f, x, cp, nullptr, ctx); }, ctx);
  } else {
    Var epsv = ctx.fresh.fresh();
    Term eps = t_var(epsv);
    MonicPoly pze = poly::char_poly(poly::tm_scale(eps, z));
    Formula ep = even_parity(
        pze, [&](const MonicPoly& f) { return phi_case(t, f, x, cp, eps, ctx); }, ctx);
    Formula imag = f_eq(t_bar(eps), s_neg(eps));
    add_imaginary_hint(ctx, epsv, imag);
    parity = f_exists(epsv, f_big_and({f_not(f_eq(eps, t_zero())), imag, ep}));
  }

  Formula conj = f_big_and({c_in, cp_in, unit, twisted, tf, parity});
  if (!cvars.empty()) {
    add_span_hint(ctx, cvars, x, c_in);
    add_inverse_hint(ctx, cpvars, c, unit);
  }
  return f_exists_all(cvars, f_exists_all(cpvars, conj));
}

}  // namespace

bool default_glreg(const lie::TripleSpec& t) {
  return t.c == lie::TripleSpec::Case::EvenOrth;
}

SigmaSets sigma_sets(const lie::TripleSpec& t, bool glreg, BuildCtx& ctx) {
  VirtualSet pm = pm_set(t);
  if (glreg) {
    TermMatrix x = TermMatrix::vars(t.g().n, "x");
    pm.body = f_and(pm.body, lie::regular_cond(lie::fam_gl(t.g().n), x));
  }
  Formula block = plus_block(t, ctx);
  SigmaSets s;
  s.plus = VirtualSet{pm.sig, f_and(pm.body, block), pm.lang};
  s.minus = VirtualSet{pm.sig, f_and(pm.body, f_not(block)), pm.lang};
  s.zero = VirtualSet{pm.sig, f_not(pm.body), pm.lang};
  return s;
}

VirtualSet plus_set(const lie::TripleSpec& t, BuildCtx& ctx) {
  VirtualSet pm = pm_set(t);
  pm.body = f_and(pm.body, plus_block(t, ctx));
  return pm;
}

}  // namespace defring::transfer
