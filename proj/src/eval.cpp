#include "defring/eval.hpp"

#include <cstdlib>
#include <set>

#include "defring/errors.hpp"
#include "defring/rng.hpp"

namespace defring::interp {

using namespace defring::lang;

long long default_budget() {
  if (const char* env = std::getenv("DEFRING_BUDGET")) {
    long long v = std::atoll(env);
    if (v > 0) return v;
  }
  return 100000000;
}

Evaluator::Evaluator(const Structure& s, EvalOptions opts) : s_(s), opts_(opts) {
  if (opts_.budget < 0) opts_.budget = default_budget();
  if (opts_.hints)
    for (const QuantHint& h : *opts_.hints)
      if (!h.group.empty()) hint_by_head_.emplace(var_id(h.group[0]), &h);
}

void Evaluator::charge(long long n) {
  used_ += n;
  if (used_ > opts_.budget)
    throw budget_error("evaluation budget of " + std::to_string(opts_.budget) +
                       " assignments exhausted");
}

void Evaluator::bind(const Var& v, uint16_t val) {
  uint32_t id = var_id(v);
  if (env_.size() <= id) env_.resize(id + 1, -1);
  env_[id] = val;
  ++epoch_;
}

void Evaluator::unbind(const Var& v) {
  uint32_t id = var_id(v);
  if (id < env_.size()) env_[id] = -1;
  ++epoch_;
}

bool Evaluator::is_bound(const Var& v) const {
  uint32_t id = var_id(v);
  return id < env_.size() && env_[id] >= 0;
}

uint16_t Evaluator::eval_term(Term t) {
  if (tcache_.size() <= t->id) tcache_.resize(term_count());
  Cache& c = tcache_[t->id];
  if (c.epoch == epoch_) return c.val;
  uint16_t v;
  switch (t->kind) {
    case TermKind::Zero: v = 0; break;
    case TermKind::One: v = s_.from_int(1); break;
    case TermKind::Int: v = s_.from_int(t->num); break;
    case TermKind::Rat: v = s_.from_rat(t->num, t->den); break;
    case TermKind::Var: {
      if (t->var_id >= env_.size() || env_[t->var_id] < 0)
        throw config_error("unbound variable " + t->var.text());
      v = static_cast<uint16_t>(env_[t->var_id]);
      break;
    }
    case TermKind::Add: v = s_.add(eval_term(t->a), eval_term(t->b)); break;
    case TermKind::Mul: v = s_.mul(eval_term(t->a), eval_term(t->b)); break;
    case TermKind::Bar: v = s_.bar(eval_term(t->a)); break;
    default: throw config_error("unknown term kind");
  }
  c.epoch = epoch_;
  c.val = v;
  return v;
}

bool Evaluator::eval(const Formula& f) {
  switch (f->kind) {
    case FKind::True: return true;
    case FKind::False: return false;
    case FKind::Eq: return eval_term(f->t1) == eval_term(f->t2);
    case FKind::Not: return !eval(f->a);
    case FKind::Or: return eval(f->a) || eval(f->b);
    case FKind::And: return eval(f->a) && eval(f->b);
    case FKind::Implies: return !eval(f->a) || eval(f->b);
    case FKind::Iff: return eval(f->a) == eval(f->b);
    case FKind::Exists:
    case FKind::Forall: return eval_quant(f);
  }
  throw config_error("unknown formula kind");
}

bool Evaluator::eval_quant(const Formula& f) {
  if (opts_.strategy == Strategy::Guided) {
    auto it = hint_by_head_.find(var_id(f->var));
    if (it != hint_by_head_.end()) {
      // The hint applies when the whole group appears as one consecutive
      // block of same-kind binders starting here.
      const QuantHint& h = *it->second;
      const FormulaNode* cur = f.get();
      bool match = true;
      for (size_t i = 1; i < h.group.size(); ++i) {
        if (cur->a->kind != f->kind || !(cur->a->var == h.group[i])) {
          match = false;
          break;
        }
        cur = cur->a.get();
      }
      if (match) return eval_quant_guided(f, h);
    }
  }
  return eval_quant_naive(f);
}

bool Evaluator::eval_quant_naive(const Formula& f) {
  bool exists = f->kind == FKind::Exists;
  uint32_t id = var_id(f->var);
  int32_t saved = id < env_.size() ? env_[id] : -1;
  bool result = !exists;
  for (int v = 0; v < s_.size; ++v) {
    charge(1);
    bind(f->var, static_cast<uint16_t>(v));
    bool r = eval(f->a);
    if (r == exists) {
      result = exists;
      break;
    }
  }
  if (env_.size() <= id) env_.resize(id + 1, -1);
  env_[id] = saved;
  ++epoch_;
  return result;
}

bool Evaluator::eval_quant_guided(const Formula& f, const QuantHint& h) {
  if (opts_.validate_hints) validate(h);
  bool exists = f->kind == FKind::Exists;
  const FormulaNode* cur = f.get();
  for (size_t i = 1; i < h.group.size(); ++i) cur = cur->a.get();
  Formula body = cur->a;

  std::vector<int32_t> saved(h.group.size());
  for (size_t i = 0; i < h.group.size(); ++i) {
    uint32_t id = var_id(h.group[i]);
    saved[i] = id < env_.size() ? env_[id] : -1;
  }

  bool result = !exists;
  h.gen(s_, *this, [&](const std::vector<uint16_t>& tuple) {
    if (tuple.size() != h.group.size())
      throw config_error("hint generator yielded a tuple of wrong arity");
    charge(1);
    for (size_t i = 0; i < h.group.size(); ++i) bind(h.group[i], tuple[i]);
    bool r = eval(body);
    if (r == exists) {
      result = exists;
      return false;  // decided; stop enumerating
    }
    return true;
  });

  for (size_t i = 0; i < h.group.size(); ++i) {
    uint32_t id = var_id(h.group[i]);
    if (env_.size() <= id) env_.resize(id + 1, -1);
    env_[id] = saved[i];
  }
  ++epoch_;
  return result;
}

void Evaluator::validate(const QuantHint& h) {
  if (!hint_covers_guard(*this, h))
    throw config_error("guided hint for '" + h.group[0].text() +
                       "' does not cover its guard");
}

bool hint_covers_guard(Evaluator& ev, const QuantHint& h) {
  const Structure& s = ev.structure();
  std::set<std::vector<uint16_t>> yielded;
  h.gen(s, ev, [&](const std::vector<uint16_t>& tuple) {
    yielded.insert(tuple);
    return true;
  });

  size_t m = h.group.size();
  std::vector<int32_t> saved(m);
  std::vector<bool> was_bound(m);
  for (size_t i = 0; i < m; ++i) was_bound[i] = ev.is_bound(h.group[i]);

  std::vector<uint16_t> tuple(m, 0);
  bool ok = true;
  while (true) {
    for (size_t i = 0; i < m; ++i) ev.bind(h.group[i], tuple[i]);
    if (ev.eval(h.guard) && !yielded.count(tuple)) {
      ok = false;
      break;
    }
    size_t i = 0;
    while (i < m && ++tuple[i] == s.size) tuple[i++] = 0;
    if (i == m) break;
  }
  for (size_t i = 0; i < m; ++i)
    if (!was_bound[i]) ev.unbind(h.group[i]);
  return ok;
}

CountResult count_points(const Structure& s, const VirtualSet& v, EvalOptions opts) {
  Evaluator ev(s, opts);
  size_t m = v.sig.size();
  long long budget = opts.budget < 0 ? default_budget() : opts.budget;
  long double total = 1;
  for (size_t i = 0; i < m; ++i) total *= s.size;
  if (total > static_cast<long double>(budget))
    throw budget_error("exhaustive count needs " + std::to_string(static_cast<double>(total)) +
                       " assignments, over the budget of " + std::to_string(budget));

  CountResult r;
  r.exact = true;
  std::vector<uint16_t> tuple(m, 0);
  while (true) {
    for (size_t i = 0; i < m; ++i) ev.bind(v.sig[i], tuple[i]);
    if (ev.eval(v.body)) ++r.count;
    size_t i = 0;
    while (i < m && ++tuple[i] == s.size) tuple[i++] = 0;
    if (i == m) break;
  }
  return r;
}

CountResult count_sample(const Structure& s, const VirtualSet& v, size_t samples,
                         uint64_t seed, EvalOptions opts) {
  Evaluator ev(s, opts);
  Rng rng(seed);
  CountResult r;
  r.exact = false;
  r.samples = samples;
  r.seed = seed;
  for (size_t n = 0; n < samples; ++n) {
    for (const Var& x : v.sig) ev.bind(x, static_cast<uint16_t>(rng.below(s.size)));
    if (ev.eval(v.body)) ++r.hits;
  }
  return r;
}

}  // namespace defring::interp
