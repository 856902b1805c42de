#include "defring/formula.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "defring/errors.hpp"

namespace defring::lang {

namespace {
Formula mk(FormulaNode n) { return std::make_shared<const FormulaNode>(std::move(n)); }
}  // namespace

Formula f_eq(Term a, Term b) {
  FormulaNode n;
  n.kind = FKind::Eq;
  n.t1 = a;
  n.t2 = b;
  return mk(std::move(n));
}

Formula f_not(Formula f) {
  FormulaNode n;
  n.kind = FKind::Not;
  n.a = std::move(f);
  return mk(std::move(n));
}

namespace {
Formula binary(FKind k, Formula a, Formula b) {
  FormulaNode n;
  n.kind = k;
  n.a = std::move(a);
  n.b = std::move(b);
  return mk(std::move(n));
}
Formula binder(FKind k, const Var& v, Formula body) {
  FormulaNode n;
  n.kind = k;
  n.var = v;
  n.a = std::move(body);
  return mk(std::move(n));
}
}  // namespace

Formula f_or(Formula a, Formula b) { return binary(FKind::Or, std::move(a), std::move(b)); }
Formula f_and(Formula a, Formula b) { return binary(FKind::And, std::move(a), std::move(b)); }
Formula f_implies(Formula a, Formula b) { return binary(FKind::Implies, std::move(a), std::move(b)); }
Formula f_iff(Formula a, Formula b) { return binary(FKind::Iff, std::move(a), std::move(b)); }
Formula f_exists(const Var& v, Formula body) { return binder(FKind::Exists, v, std::move(body)); }
Formula f_forall(const Var& v, Formula body) { return binder(FKind::Forall, v, std::move(body)); }

Formula f_true() {
  FormulaNode n;
  n.kind = FKind::True;
  static Formula cached = mk(std::move(n));
  return cached;
}

Formula f_false() {
  FormulaNode n;
  n.kind = FKind::False;
  static Formula cached = mk(std::move(n));
  return cached;
}

Formula f_big_or(const std::vector<Formula>& fs) {
  if (fs.empty()) return f_false();
  Formula acc = fs[0];
  for (size_t i = 1; i < fs.size(); ++i) acc = f_or(acc, fs[i]);
  return acc;
}

Formula f_big_and(const std::vector<Formula>& fs) {
  if (fs.empty()) return f_true();
  Formula acc = fs[0];
  for (size_t i = 1; i < fs.size(); ++i) acc = f_and(acc, fs[i]);
  return acc;
}

Formula f_exists_all(const std::vector<Var>& vs, Formula body) {
  for (auto it = vs.rbegin(); it != vs.rend(); ++it) body = f_exists(*it, std::move(body));
  return body;
}

Formula f_forall_all(const std::vector<Var>& vs, Formula body) {
  for (auto it = vs.rbegin(); it != vs.rend(); ++it) body = f_forall(*it, std::move(body));
  return body;
}

// ---------------------------------------------------------------------------
// Free / bound variables

namespace {
using FvCache = std::unordered_map<const FormulaNode*, std::set<Var>>;

const std::set<Var>& free_vars_rec(const Formula& f, FvCache& cache) {
  auto it = cache.find(f.get());
  if (it != cache.end()) return it->second;
  std::set<Var> out;
  switch (f->kind) {
    case FKind::Eq: {
      std::vector<Var> vs;
      collect_vars(f->t1, vs);
      collect_vars(f->t2, vs);
      out.insert(vs.begin(), vs.end());
      break;
    }
    case FKind::Not:
      out = free_vars_rec(f->a, cache);
      break;
    case FKind::Or:
    case FKind::And:
    case FKind::Implies:
    case FKind::Iff: {
      out = free_vars_rec(f->a, cache);
      const auto& r = free_vars_rec(f->b, cache);
      out.insert(r.begin(), r.end());
      break;
    }
    case FKind::Exists:
    case FKind::Forall:
      out = free_vars_rec(f->a, cache);
      out.erase(f->var);
      break;
    case FKind::True:
    case FKind::False:
      break;
  }
  return cache.emplace(f.get(), std::move(out)).first->second;
}

void bound_vars_rec(const Formula& f, std::unordered_set<const FormulaNode*>& seen,
                    std::set<Var>& out) {
  if (!seen.insert(f.get()).second) return;
  switch (f->kind) {
    case FKind::Exists:
    case FKind::Forall:
      out.insert(f->var);
      bound_vars_rec(f->a, seen, out);
      break;
    case FKind::Not:
      bound_vars_rec(f->a, seen, out);
      break;
    case FKind::Or:
    case FKind::And:
    case FKind::Implies:
    case FKind::Iff:
      bound_vars_rec(f->a, seen, out);
      bound_vars_rec(f->b, seen, out);
      break;
    default:
      break;
  }
}
}  // namespace

std::set<Var> free_vars(const Formula& f) {
  FvCache cache;
  return free_vars_rec(f, cache);
}

std::set<Var> bound_vars(const Formula& f) {
  std::unordered_set<const FormulaNode*> seen;
  std::set<Var> out;
  bound_vars_rec(f, seen, out);
  return out;
}

void FreshSupply::seed_past(Term t) {
  std::vector<Var> vs;
  collect_vars(t, vs);
  for (const auto& v : vs) {
    if (v.name.size() > 1 && v.name[0] == '$') {
      long long k = atoll(v.name.c_str() + 1);
      next = std::max(next, k + 1);
    }
  }
}

void FreshSupply::seed_past(const Formula& f) {
  auto fv = free_vars(f);
  auto bv = bound_vars(f);
  for (const auto* s : {&fv, &bv}) {
    for (const auto& v : *s) {
      if (v.name.size() > 1 && v.name[0] == '$') {
        long long k = atoll(v.name.c_str() + 1);
        next = std::max(next, k + 1);
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Substitution

namespace {

// One immutable substitution frame; renames extend it into a child frame.
struct SubstCtx {
  std::map<Var, Term> map;
  std::unordered_map<const FormulaNode*, Formula> fmemo;
  std::unordered_map<Term, Term> tmemo;
};

Term subst_term(Term t, SubstCtx& ctx) {
  auto it = ctx.tmemo.find(t);
  if (it != ctx.tmemo.end()) return it->second;
  Term out = t;
  switch (t->kind) {
    case TermKind::Var: {
      auto mit = ctx.map.find(t->var);
      if (mit != ctx.map.end()) out = mit->second;
      break;
    }
    case TermKind::Add:
      out = t_add(subst_term(t->a, ctx), subst_term(t->b, ctx));
      break;
    case TermKind::Mul:
      out = t_mul(subst_term(t->a, ctx), subst_term(t->b, ctx));
      break;
    case TermKind::Bar:
      out = t_bar(subst_term(t->a, ctx));
      break;
    default:
      break;
  }
  ctx.tmemo.emplace(t, out);
  return out;
}

Formula subst_rec(const Formula& f, SubstCtx& ctx, FreshSupply& fresh) {
  auto it = ctx.fmemo.find(f.get());
  if (it != ctx.fmemo.end()) return it->second;
  Formula out;
  switch (f->kind) {
    case FKind::Eq:
      out = f_eq(subst_term(f->t1, ctx), subst_term(f->t2, ctx));
      break;
    case FKind::Not:
      out = f_not(subst_rec(f->a, ctx, fresh));
      break;
    case FKind::Or:
    case FKind::And:
    case FKind::Implies:
    case FKind::Iff:
      out = binary(f->kind, subst_rec(f->a, ctx, fresh), subst_rec(f->b, ctx, fresh));
      break;
    case FKind::True:
    case FKind::False:
      out = f;
      break;
    case FKind::Exists:
    case FKind::Forall: {
      // Drop any mapping of the binder itself, then rename the binder if some
      // substituted term would capture it.
      SubstCtx inner;
      inner.map = ctx.map;
      inner.map.erase(f->var);
      bool capture = false;
      for (const auto& [v, t] : inner.map) {
        std::vector<Var> vs;
        collect_vars(t, vs);
        if (std::find(vs.begin(), vs.end(), f->var) != vs.end()) {
          capture = true;
          break;
        }
      }
      Var bv = f->var;
      if (capture) {
        bv = fresh.fresh();
        inner.map[f->var] = t_var(bv);
      }
      if (inner.map.empty()) {
        out = f;
      } else {
        out = binder(f->kind, bv, subst_rec(f->a, inner, fresh));
      }
      break;
    }
  }
  ctx.fmemo.emplace(f.get(), out);
  return out;
}

}  // namespace

Formula substitute(const Formula& f, const std::map<Var, Term>& map, FreshSupply& fresh) {
  if (map.empty()) return f;
  SubstCtx ctx;
  ctx.map = map;
  return subst_rec(f, ctx, fresh);
}

Formula substitute(const Formula& f, const std::map<Var, Term>& map) {
  FreshSupply fresh;
  fresh.seed_past(f);
  for (const auto& [v, t] : map) fresh.seed_past(t);
  return substitute(f, map, fresh);
}

// ---------------------------------------------------------------------------
// Desugaring

namespace {

Formula core_and(Formula a, Formula b) { return f_not(f_or(f_not(a), f_not(b))); }

Term unary_literal(long long k) {
  // k >= 0; 3 becomes 1+1+1 (left fold).
  if (k == 0) return t_zero();
  Term acc = t_one();
  for (long long i = 1; i < k; ++i) acc = t_add(acc, t_one());
  return acc;
}

struct Lowering {
  FreshSupply* fresh;
  // Per-atom state: literal -> witness var, plus constraint formulas.
  std::map<std::pair<long long, long long>, Var> witnesses;
  std::vector<std::pair<Var, Formula>> constraints;
  std::unordered_map<Term, Term> memo;

  Term lower(Term t) {
    auto it = memo.find(t);
    if (it != memo.end()) return it->second;
    Term out = t;
    switch (t->kind) {
      case TermKind::Int:
      case TermKind::Rat: {
        auto [m, d] = literal_value(t);
        if (d == 1 && m >= 0) {
          out = unary_literal(m);
        } else {
          auto key = std::make_pair(m, d);
          auto wit = witnesses.find(key);
          Var w;
          if (wit == witnesses.end()) {
            w = fresh->fresh();
            witnesses.emplace(key, w);
            // d*w = m, written with the "x+1=0" convention for negatives.
            Term lhs = d == 1 ? t_var(w) : t_mul(unary_literal(d), t_var(w));
            Formula c = m >= 0 ? f_eq(lhs, unary_literal(m))
                               : f_eq(t_add(lhs, unary_literal(-m)), t_zero());
            constraints.emplace_back(w, c);
          } else {
            w = wit->second;
          }
          out = t_var(w);
        }
        break;
      }
      case TermKind::Add: out = t_add(lower(t->a), lower(t->b)); break;
      case TermKind::Mul: out = t_mul(lower(t->a), lower(t->b)); break;
      case TermKind::Bar: out = t_bar(lower(t->a)); break;
      default: break;
    }
    memo.emplace(t, out);
    return out;
  }
};

Formula desugar_atom(Term t1, Term t2, FreshSupply& fresh) {
  Lowering lo;
  lo.fresh = &fresh;
  Term a = lo.lower(t1);
  Term b = lo.lower(t2);
  Formula out = f_eq(a, b);
  for (auto it = lo.constraints.rbegin(); it != lo.constraints.rend(); ++it) {
    out = f_exists(it->first, core_and(it->second, out));
  }
  return out;
}

Formula desugar_rec(const Formula& f, FreshSupply& fresh,
                    std::unordered_map<const FormulaNode*, Formula>& memo) {
  auto it = memo.find(f.get());
  if (it != memo.end()) return it->second;
  Formula out;
  switch (f->kind) {
    case FKind::Eq:
      out = desugar_atom(f->t1, f->t2, fresh);
      break;
    case FKind::Not:
      out = f_not(desugar_rec(f->a, fresh, memo));
      break;
    case FKind::Or:
      out = f_or(desugar_rec(f->a, fresh, memo), desugar_rec(f->b, fresh, memo));
      break;
    case FKind::And:
      out = core_and(desugar_rec(f->a, fresh, memo), desugar_rec(f->b, fresh, memo));
      break;
    case FKind::Implies:
      out = f_or(f_not(desugar_rec(f->a, fresh, memo)), desugar_rec(f->b, fresh, memo));
      break;
    case FKind::Iff: {
      Formula a = desugar_rec(f->a, fresh, memo);
      Formula b = desugar_rec(f->b, fresh, memo);
      out = core_and(f_or(f_not(a), b), f_or(f_not(b), a));
      break;
    }
    case FKind::Exists:
      out = f_exists(f->var, desugar_rec(f->a, fresh, memo));
      break;
    case FKind::Forall:
      out = f_not(f_exists(f->var, f_not(desugar_rec(f->a, fresh, memo))));
      break;
    case FKind::True:
      out = f_eq(t_zero(), t_zero());
      break;
    case FKind::False:
      out = f_not(f_eq(t_zero(), t_zero()));
      break;
  }
  memo.emplace(f.get(), out);
  return out;
}

bool term_is_core(Term t) {
  switch (t->kind) {
    case TermKind::Int:
    case TermKind::Rat:
      return false;
    case TermKind::Add:
    case TermKind::Mul:
      return term_is_core(t->a) && term_is_core(t->b);
    case TermKind::Bar:
      return term_is_core(t->a);
    default:
      return true;
  }
}

}  // namespace

Formula desugar(const Formula& f) {
  FreshSupply fresh;
  fresh.seed_past(f);
  std::unordered_map<const FormulaNode*, Formula> memo;
  return desugar_rec(f, fresh, memo);
}

bool is_core(const Formula& f) {
  switch (f->kind) {
    case FKind::Eq: return term_is_core(f->t1) && term_is_core(f->t2);
    case FKind::Not: return is_core(f->a);
    case FKind::Or: return is_core(f->a) && is_core(f->b);
    case FKind::Exists: return is_core(f->a);
    default: return false;
  }
}

bool formula_contains_bar(const Formula& f) {
  switch (f->kind) {
    case FKind::Eq: return contains_bar(f->t1) || contains_bar(f->t2);
    case FKind::Not:
    case FKind::Exists:
    case FKind::Forall:
      return formula_contains_bar(f->a);
    case FKind::Or:
    case FKind::And:
    case FKind::Implies:
    case FKind::Iff:
      return formula_contains_bar(f->a) || formula_contains_bar(f->b);
    default:
      return false;
  }
}

// ---------------------------------------------------------------------------
// Set algebra

namespace {
Formula aligned_body(const VirtualSet& a, const VirtualSet& b) {
  if (a.sig.size() != b.sig.size())
    throw config_error("virtual set signature arity mismatch: " +
                       std::to_string(a.sig.size()) + " vs " + std::to_string(b.sig.size()));
  std::map<Var, Term> m;
  for (size_t i = 0; i < a.sig.size(); ++i) {
    if (!(b.sig[i] == a.sig[i])) m[b.sig[i]] = t_var(a.sig[i]);
  }
  return substitute(b.body, m);
}
Lang join_lang(const VirtualSet& a, const VirtualSet& b) {
  return (a.lang == Lang::RingWithInvolution || b.lang == Lang::RingWithInvolution)
             ? Lang::RingWithInvolution
             : Lang::Ring;
}
}  // namespace

Formula vs_subset(const VirtualSet& a, const VirtualSet& b) {
  return f_forall_all(a.sig, f_implies(a.body, aligned_body(a, b)));
}

VirtualSet vs_intersect(const VirtualSet& a, const VirtualSet& b) {
  return {a.sig, f_and(a.body, aligned_body(a, b)), join_lang(a, b)};
}

VirtualSet vs_union(const VirtualSet& a, const VirtualSet& b) {
  return {a.sig, f_or(a.body, aligned_body(a, b)), join_lang(a, b)};
}

Formula vs_member(const VirtualSet& v, const std::vector<Term>& point) {
  if (point.size() != v.sig.size())
    throw config_error("membership tuple arity mismatch");
  std::map<Var, Term> m;
  for (size_t i = 0; i < v.sig.size(); ++i) m[v.sig[i]] = point[i];
  return substitute(v.body, m);
}

namespace {
void stats_rec(const Formula& f, std::unordered_set<const FormulaNode*>& seen, FormulaStats& s) {
  if (!seen.insert(f.get()).second) return;
  s.nodes++;
  switch (f->kind) {
    case FKind::Exists:
    case FKind::Forall:
      s.quantifiers++;
      stats_rec(f->a, seen, s);
      break;
    case FKind::Not:
      stats_rec(f->a, seen, s);
      break;
    case FKind::Or:
    case FKind::And:
    case FKind::Implies:
    case FKind::Iff:
      stats_rec(f->a, seen, s);
      stats_rec(f->b, seen, s);
      break;
    default:
      break;
  }
}
}  // namespace

FormulaStats formula_stats(const Formula& f) {
  FormulaStats s;
  std::unordered_set<const FormulaNode*> seen;
  stats_rec(f, seen, s);
  s.free_var_count = free_vars(f).size();
  return s;
}

}  // namespace defring::lang
