#include "defring/term.hpp"

#include <deque>
#include <mutex>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "defring/errors.hpp"

namespace defring::lang {

std::string Var::text() const {
  std::string s = name;
  for (int i : index) {
    s += '_';
    s += std::to_string(i);
  }
  return s;
}

size_t VarHash::operator()(const Var& v) const {
  size_t h = std::hash<std::string>{}(v.name);
  for (int i : v.index) h = h * 1000003u + static_cast<size_t>(i) + 0x9e3779b9u;
  return h;
}

namespace {

size_t node_hash(const TermNode& n) {
  size_t h = static_cast<size_t>(n.kind) * 0x9e3779b97f4a7c15ull;
  switch (n.kind) {
    case TermKind::Var:
      h ^= VarHash{}(n.var);
      break;
    case TermKind::Int:
    case TermKind::Rat:
      h ^= std::hash<long long>{}(n.num) + 3 * std::hash<long long>{}(n.den);
      break;
    case TermKind::Add:
    case TermKind::Mul:
      h ^= n.a->hash * 31 + n.b->hash * 131;
      break;
    case TermKind::Bar:
      h ^= n.a->hash * 7;
      break;
    default:
      break;
  }
  return h;
}

bool node_eq(const TermNode& x, const TermNode& y) {
  if (x.kind != y.kind) return false;
  switch (x.kind) {
    case TermKind::Var: return x.var == y.var;
    case TermKind::Int:
    case TermKind::Rat: return x.num == y.num && x.den == y.den;
    case TermKind::Add:
    case TermKind::Mul: return x.a == y.a && x.b == y.b;
    case TermKind::Bar: return x.a == y.a;
    default: return true;
  }
}

struct PtrHash {
  size_t operator()(Term t) const { return t->hash; }
};
struct PtrEq {
  bool operator()(Term x, Term y) const { return node_eq(*x, *y); }
};

struct Interner {
  std::mutex mu;
  std::deque<TermNode> pool;
  std::unordered_set<Term, PtrHash, PtrEq> table;

  Term intern(TermNode n) {
    n.hash = node_hash(n);
    std::lock_guard<std::mutex> lock(mu);
    auto it = table.find(&n);
    if (it != table.end()) return *it;
    n.id = static_cast<uint32_t>(pool.size());
    pool.push_back(std::move(n));
    Term t = &pool.back();
    table.insert(t);
    return t;
  }
};

Interner& interner() {
  static Interner g;
  return g;
}

Term intern(TermNode n) { return interner().intern(std::move(n)); }

}  // namespace

namespace {
struct VarRegistry {
  std::mutex mu;
  std::unordered_map<Var, uint32_t, VarHash> ids;
};
VarRegistry& var_registry() {
  static VarRegistry g;
  return g;
}
}  // namespace

uint32_t var_id(const Var& v) {
  auto& r = var_registry();
  std::lock_guard<std::mutex> lock(r.mu);
  auto [it, added] = r.ids.emplace(v, static_cast<uint32_t>(r.ids.size()));
  (void)added;
  return it->second;
}

uint32_t var_count() {
  auto& r = var_registry();
  std::lock_guard<std::mutex> lock(r.mu);
  return static_cast<uint32_t>(r.ids.size());
}

Term t_var(const Var& v) {
  TermNode n;
  n.kind = TermKind::Var;
  n.var = v;
  n.var_id = var_id(v);
  return intern(std::move(n));
}

Term t_var(const std::string& name, std::vector<int> index) {
  return t_var(Var{name, std::move(index)});
}

Term t_zero() {
  TermNode n;
  n.kind = TermKind::Zero;
  static Term cached = intern(std::move(n));
  return cached;
}

Term t_one() {
  TermNode n;
  n.kind = TermKind::One;
  static Term cached = intern(std::move(n));
  return cached;
}

Term t_int(long long v) {
  if (v == 0) return t_zero();
  if (v == 1) return t_one();
  TermNode n;
  n.kind = TermKind::Int;
  n.num = v;
  n.den = 1;
  return intern(std::move(n));
}

Term t_rat(long long num, long long den) {
  if (den == 0) throw config_error("rational literal with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  long long g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (den == 1) return t_int(num);
  TermNode n;
  n.kind = TermKind::Rat;
  n.num = num;
  n.den = den;
  return intern(std::move(n));
}

Term t_add(Term a, Term b) {
  TermNode n;
  n.kind = TermKind::Add;
  n.a = a;
  n.b = b;
  return intern(std::move(n));
}

Term t_mul(Term a, Term b) {
  TermNode n;
  n.kind = TermKind::Mul;
  n.a = a;
  n.b = b;
  return intern(std::move(n));
}

Term t_bar(Term t) {
  TermNode n;
  n.kind = TermKind::Bar;
  n.a = t;
  return intern(std::move(n));
}

bool is_literal(Term t) {
  switch (t->kind) {
    case TermKind::Zero:
    case TermKind::One:
    case TermKind::Int:
    case TermKind::Rat:
      return true;
    default:
      return false;
  }
}

std::pair<long long, long long> literal_value(Term t) {
  switch (t->kind) {
    case TermKind::Zero: return {0, 1};
    case TermKind::One: return {1, 1};
    case TermKind::Int: return {t->num, 1};
    case TermKind::Rat: return {t->num, t->den};
    default: throw config_error("literal_value on non-literal term");
  }
}

Term s_add(Term a, Term b) {
  if (a->kind == TermKind::Zero) return b;
  if (b->kind == TermKind::Zero) return a;
  if (is_literal(a) && is_literal(b)) {
    auto [an, ad] = literal_value(a);
    auto [bn, bd] = literal_value(b);
    return t_rat(an * bd + bn * ad, ad * bd);
  }
  return t_add(a, b);
}

Term s_mul(Term a, Term b) {
  if (a->kind == TermKind::Zero || b->kind == TermKind::Zero) return t_zero();
  if (a->kind == TermKind::One) return b;
  if (b->kind == TermKind::One) return a;
  if (is_literal(a) && is_literal(b)) {
    auto [an, ad] = literal_value(a);
    auto [bn, bd] = literal_value(b);
    return t_rat(an * bn, ad * bd);
  }
  return t_mul(a, b);
}

Term s_neg(Term a) { return s_mul(t_int(-1), a); }

Term s_sub(Term a, Term b) { return s_add(a, s_neg(b)); }

uint32_t term_count() {
  std::lock_guard<std::mutex> lock(interner().mu);
  return static_cast<uint32_t>(interner().pool.size());
}

namespace {
void collect_vars_rec(Term t, std::unordered_set<Term>& seen, std::vector<Var>& out) {
  if (!seen.insert(t).second) return;
  switch (t->kind) {
    case TermKind::Var: out.push_back(t->var); break;
    case TermKind::Add:
    case TermKind::Mul:
      collect_vars_rec(t->a, seen, out);
      collect_vars_rec(t->b, seen, out);
      break;
    case TermKind::Bar: collect_vars_rec(t->a, seen, out); break;
    default: break;
  }
}
}  // namespace

void collect_vars(Term t, std::vector<Var>& out) {
  std::unordered_set<Term> seen;
  collect_vars_rec(t, seen, out);
}

namespace {
bool contains_bar_rec(Term t, std::unordered_set<Term>& seen) {
  if (!seen.insert(t).second) return false;
  switch (t->kind) {
    case TermKind::Bar: return true;
    case TermKind::Add:
    case TermKind::Mul:
      return contains_bar_rec(t->a, seen) || contains_bar_rec(t->b, seen);
    default: return false;
  }
}
}  // namespace

bool contains_bar(Term t) {
  std::unordered_set<Term> seen;
  return contains_bar_rec(t, seen);
}

}  // namespace defring::lang
