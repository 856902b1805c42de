#include "defring/realify.hpp"

#include <unordered_map>

#include "defring/errors.hpp"

namespace defring::lang {

std::pair<Var, Var> realified_pair(const Var& z) {
  return {Var{z.name + ".re", z.index}, Var{z.name + ".im", z.index}};
}

namespace {

struct RTerm {
  Term re, im;
};

struct Realifier {
  Term u;
  std::unordered_map<Term, RTerm> tmemo;
  std::unordered_map<const FormulaNode*, Formula> fmemo;

  RTerm term(Term t) {
    auto it = tmemo.find(t);
    if (it != tmemo.end()) return it->second;
    RTerm r;
    switch (t->kind) {
      case TermKind::Zero:
      case TermKind::One:
      case TermKind::Int:
      case TermKind::Rat:
        r = {t, t_zero()};
        break;
      case TermKind::Var: {
        auto [re, im] = realified_pair(t->var);
        r = {t_var(re), t_var(im)};
        break;
      }
      case TermKind::Add: {
        RTerm a = term(t->a), b = term(t->b);
        r = {s_add(a.re, b.re), s_add(a.im, b.im)};
        break;
      }
      case TermKind::Mul: {
        // (a + b eps)(c + d eps) = (ac + u bd) + (ad + bc) eps
        RTerm a = term(t->a), b = term(t->b);
        r = {s_add(s_mul(a.re, b.re), s_mul(u, s_mul(a.im, b.im))),
             s_add(s_mul(a.re, b.im), s_mul(a.im, b.re))};
        break;
      }
      case TermKind::Bar: {
        RTerm a = term(t->a);
        r = {a.re, s_neg(a.im)};
        break;
      }
      default:
        throw config_error("unknown term kind in realify");
    }
    tmemo.emplace(t, r);
    return r;
  }

  Formula formula(const Formula& f) {
    auto it = fmemo.find(f.get());
    if (it != fmemo.end()) return it->second;
    Formula r;
    switch (f->kind) {
      case FKind::True:
      case FKind::False:
        r = f;
        break;
      case FKind::Eq: {
        RTerm a = term(f->t1), b = term(f->t2);
        r = f_and(f_eq(a.re, b.re), f_eq(a.im, b.im));
        break;
      }
      case FKind::Not:
        r = f_not(formula(f->a));
        break;
      case FKind::Or:
        r = f_or(formula(f->a), formula(f->b));
        break;
      case FKind::And:
        r = f_and(formula(f->a), formula(f->b));
        break;
      case FKind::Implies:
        r = f_implies(formula(f->a), formula(f->b));
        break;
      case FKind::Iff:
        r = f_iff(formula(f->a), formula(f->b));
        break;
      case FKind::Exists:
      case FKind::Forall: {
        auto [re, im] = realified_pair(f->var);
        Formula body = formula(f->a);
        r = f->kind == FKind::Exists ? f_exists(re, f_exists(im, body))
                                     : f_forall(re, f_forall(im, body));
        break;
      }
      default:
        throw config_error("unknown formula kind in realify");
    }
    fmemo.emplace(f.get(), r);
    return r;
  }
};

}  // namespace

Formula realify(const Formula& f, const Var& u, Lang lang) {
  if (lang != Lang::RingWithInvolution)
    throw config_error("realify requires the involution language flag");
  Realifier rf{t_var(u), {}, {}};
  return rf.formula(f);
}

VirtualSet realify(const VirtualSet& vs, const Var& u) {
  VirtualSet out;
  out.lang = Lang::Ring;
  out.sig.push_back(u);
  for (const Var& z : vs.sig) {
    auto [re, im] = realified_pair(z);
    out.sig.push_back(re);
    out.sig.push_back(im);
  }
  out.body = realify(vs.body, u, vs.lang);
  return out;
}

}  // namespace defring::lang
