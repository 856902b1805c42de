#include "defring/checks.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "defring/classify.hpp"
#include "defring/errors.hpp"
#include "defring/realify.hpp"
#include "defring/registry.hpp"
#include "defring/rng.hpp"
#include "defring/sexpr.hpp"

namespace defring::checks {

using namespace defring::lang;
using defring::interp::BuildCtx;
using defring::interp::EvalOptions;
using defring::interp::Evaluator;
using defring::interp::Strategy;
using defring::interp::Structure;
using defring::lie::Family;
using defring::oracle::FqField;
using defring::oracle::RatField;
using defring::poly::MonicPoly;
using defring::poly::TermMatrix;

using FMat = oracle::Mtx<uint16_t>;
using QMat = oracle::Mtx<mpq_class>;

namespace {

// ---------- shared helpers --------------------------------------------------

std::string fmt(unsigned long long v) { return std::to_string(v); }

// Exact evaluation of a ground (variable-free) term over the rationals.
mpq_class term_to_rat(Term t, std::unordered_map<const TermNode*, mpq_class>& memo) {
  auto it = memo.find(t);
  if (it != memo.end()) return it->second;
  mpq_class v;
  switch (t->kind) {
    case TermKind::Zero: v = 0; break;
    case TermKind::One: v = 1; break;
    case TermKind::Int: v = mpq_class(static_cast<long>(t->num)); break;
    case TermKind::Rat:
      v = mpq_class(static_cast<long>(t->num)) / mpq_class(static_cast<long>(t->den));
      break;
    case TermKind::Add: v = term_to_rat(t->a, memo) + term_to_rat(t->b, memo); break;
    case TermKind::Mul: v = term_to_rat(t->a, memo) * term_to_rat(t->b, memo); break;
    case TermKind::Bar: v = term_to_rat(t->a, memo); break;
    case TermKind::Var: throw config_error("rational evaluation of open term");
    default: throw config_error("unknown term kind");
  }
  memo.emplace(t, v);
  return v;
}

mpq_class term_to_rat(Term t) {
  std::unordered_map<const TermNode*, mpq_class> memo;
  return term_to_rat(t, memo);
}

FMat rand_fmat(Rng& rng, const Structure& s, size_t n) {
  FMat m(n, n, 0);
  for (auto& e : m.e) e = static_cast<uint16_t>(rng.below(s.size));
  return m;
}

FMat j_field(const FqField& f, const Family& fam) {
  lie::RatMat jr = lie::j_rational(fam);
  FMat j(jr.rows, jr.cols, 0);
  for (size_t i = 0; i < jr.e.size(); ++i)
    j.e[i] = f.from_rat(jr.e[i].get_num().get_si(), jr.e[i].get_den().get_si());
  return j;
}

template <class F>
oracle::MatT<F> bar_transpose(const F& f, const oracle::MatT<F>& m) {
  oracle::MatT<F> r = oracle::m_transpose(f, m);
  for (auto& e : r.e) e = f.bar(e);
  return r;
}

// Oracle-side lie membership: bar-transpose(X) J + J X == 0 (gl: always).
template <class F>
bool is_member(const F& f, const oracle::MatT<F>& j, const oracle::MatT<F>& x,
               bool is_gl) {
  if (is_gl) return true;
  auto lhs = oracle::m_add(f, oracle::m_mul(f, bar_transpose(f, x), j),
                           oracle::m_mul(f, j, x));
  return oracle::m_eq(f, lhs, oracle::m_zero(f, x.rows));
}

std::vector<FMat> members_of(const Structure& s, const Family& fam) {
  FqField f{&s};
  size_t n = fam.n;
  FMat j = j_field(f, fam);
  std::vector<FMat> out;
  FMat m(n, n, 0);
  size_t cells = n * n;
  while (true) {
    if (is_member(f, j, m, fam.tag == lie::FamilyTag::Gl)) out.push_back(m);
    size_t i = 0;
    while (i < cells && ++m.e[i] == s.size) m.e[i++] = 0;
    if (i == cells) break;
    if (cells == 0) break;
  }
  return out;
}

void bind_tuple(Evaluator& ev, const std::vector<Var>& sig, const std::vector<uint16_t>& t) {
  for (size_t i = 0; i < sig.size(); ++i) ev.bind(sig[i], t[i]);
}

enum class Outcome { True, False, Domain, Budget };

std::string outcome_name(Outcome o) {
  switch (o) {
    case Outcome::True: return "true";
    case Outcome::False: return "false";
    case Outcome::Domain: return "domain-error";
    case Outcome::Budget: return "budget-error";
  }
  return "?";
}

Outcome eval_outcome(const Structure& s, const Formula& f,
                     const std::vector<std::pair<Var, uint16_t>>& binds, EvalOptions opts) {
  Evaluator ev(s, opts);
  for (const auto& [v, val] : binds) ev.bind(v, val);
  try {
    return ev.eval(f) ? Outcome::True : Outcome::False;
  } catch (const domain_error&) {
    return Outcome::Domain;
  } catch (const budget_error&) {
    return Outcome::Budget;
  }
}

// ---------- random formulas (desugar + serialization suites) ----------------

Term rand_term(Rng& rng, const std::vector<Var>& pool, int depth, bool allow_bar) {
  int pick = static_cast<int>(rng.below(depth <= 0 ? 5 : (allow_bar ? 8 : 7)));
  switch (pick) {
    case 0: return t_var(pool[rng.below(pool.size())]);
    case 1: return t_int(static_cast<long long>(rng.below(9)) - 4);
    case 2: {
      long long num = static_cast<long long>(rng.below(9)) - 4;
      return t_rat(num, static_cast<long long>(rng.below(2)) + 1);
    }
    case 3: return t_zero();
    case 4: return t_one();
    case 5: return t_add(rand_term(rng, pool, depth - 1, allow_bar),
                         rand_term(rng, pool, depth - 1, allow_bar));
    case 6: return t_mul(rand_term(rng, pool, depth - 1, allow_bar),
                         rand_term(rng, pool, depth - 1, allow_bar));
    default: return t_bar(rand_term(rng, pool, depth - 1, allow_bar));
  }
}

Formula rand_formula(Rng& rng, const std::vector<Var>& pool, int depth, bool allow_bar) {
  int pick = static_cast<int>(rng.below(depth <= 0 ? 3 : 10));
  switch (pick) {
    case 0:
      return f_eq(rand_term(rng, pool, 2, allow_bar), rand_term(rng, pool, 2, allow_bar));
    case 1: return f_true();
    case 2: return f_false();
    case 3: return f_not(rand_formula(rng, pool, depth - 1, allow_bar));
    case 4: return f_or(rand_formula(rng, pool, depth - 1, allow_bar),
                        rand_formula(rng, pool, depth - 1, allow_bar));
    case 5: return f_and(rand_formula(rng, pool, depth - 1, allow_bar),
                         rand_formula(rng, pool, depth - 1, allow_bar));
    case 6: return f_implies(rand_formula(rng, pool, depth - 1, allow_bar),
                             rand_formula(rng, pool, depth - 1, allow_bar));
    case 7: return f_iff(rand_formula(rng, pool, depth - 1, allow_bar),
                         rand_formula(rng, pool, depth - 1, allow_bar));
    case 8:
      return f_exists(pool[rng.below(pool.size())],
                      rand_formula(rng, pool, depth - 1, allow_bar));
    default:
      return f_forall(pool[rng.below(pool.size())],
                      rand_formula(rng, pool, depth - 1, allow_bar));
  }
}

// ---------- suite: counts ---------------------------------------------------

CheckReport suite_counts(uint64_t seed) {
  CheckReport rep{"counts"};
  struct Item {
    const char* set;
    const char* st;
    unsigned long long expect;
  };
  const Item items[] = {
      {"lie:so:2", "fq:3", 3},    {"lie:so:3", "fq:3", 27},  {"lie:so:3", "fq:5", 125},
      {"lie:so:4", "fq:3", 729},  {"lie:sp:2", "fq:3", 27},  {"lie:sp:2", "fq:5", 125},
      {"lie:u:1", "inv:3", 3},    {"lie:u:2", "inv:3", 81},
  };
  for (const Item& it : items) {
    Structure s = interp::make_structure(it.st);
    registry::NamedSet ns = registry::resolve_set(it.set);
    auto r = interp::count_points(s, ns.set);
    if (r.count == it.expect)
      rep.note(std::string(it.set) + " over " + it.st + " = " + fmt(r.count));
    else
      rep.fail(std::string(it.set) + " over " + it.st + " = " + fmt(r.count) +
               ", expected " + fmt(it.expect));
  }
  // sp(4) over F_3 has 3^16 ambient points; verify |sp(4)| = 3^10 by sampling.
  {
    Structure s = interp::make_structure("fq:3");
    registry::NamedSet ns = registry::resolve_set("lie:sp:4");
    size_t samples = 200000;
    auto r = interp::count_sample(s, ns.set, samples, seed);
    double p = 1.0;
    for (int i = 0; i < 6; ++i) p /= 3.0;  // 3^10 / 3^16
    double mean = samples * p;
    double sigma = std::sqrt(samples * p * (1 - p));
    if (std::abs(static_cast<double>(r.hits) - mean) <= 6 * sigma)
      rep.note("lie:sp:4 over fq:3 sampled: " + fmt(r.hits) + "/" + fmt(samples) +
               " hits, consistent with 3^10");
    else
      rep.fail("lie:sp:4 over fq:3 sampled: " + fmt(r.hits) + "/" + fmt(samples) +
               " hits, expected about " + std::to_string(mean));
  }
  return rep;
}

// ---------- suite: regularity -----------------------------------------------

CheckReport suite_regularity(uint64_t) {
  CheckReport rep{"regularity"};
  {
    Structure s = interp::make_structure("fq:3");
    FqField f{&s};
    registry::NamedSet rss = registry::resolve_set("rss:gl:2");
    Evaluator ev(s);
    size_t bad = 0;
    FMat m(2, 2, 0);
    while (true) {
      bind_tuple(ev, rss.set.sig, std::vector<uint16_t>(m.e.begin(), m.e.end()));
      bool formula = ev.eval(rss.set.body);
      bool oracle_v = oracle::is_regular_concrete(f, m);
      if (formula != oracle_v) ++bad;
      size_t i = 0;
      while (i < 4 && ++m.e[i] == s.size) m.e[i++] = 0;
      if (i == 4) break;
    }
    if (bad == 0)
      rep.note("gl(2) over fq:3: formula matches oracle on all 81 matrices");
    else
      rep.fail("gl(2) over fq:3: " + fmt(bad) + " mismatches");
  }
  {
    Structure s = interp::make_structure("fq:5");
    FqField f{&s};
    FMat j = j_field(f, lie::fam_sp(2));
    registry::NamedSet mem = registry::resolve_set("lie:sp:2");
    registry::NamedSet rss = registry::resolve_set("rss:sp:2");
    Evaluator ev(s);
    size_t bad = 0, members = 0;
    FMat m(2, 2, 0);
    while (true) {
      std::vector<uint16_t> tuple(m.e.begin(), m.e.end());
      bind_tuple(ev, mem.set.sig, tuple);
      bool in_formula = ev.eval(mem.set.body);
      bool in_oracle = is_member(f, j, m, false);
      if (in_formula != in_oracle) ++bad;
      bool rss_formula = ev.eval(rss.set.body);
      bool rss_oracle = in_oracle && oracle::is_regular_concrete(f, m);
      if (rss_formula != rss_oracle) ++bad;
      if (in_oracle) ++members;
      size_t i = 0;
      while (i < 4 && ++m.e[i] == s.size) m.e[i++] = 0;
      if (i == 4) break;
    }
    if (bad == 0)
      rep.note("sp(2) over fq:5: formula matches oracle on all 625 matrices (" +
               fmt(members) + " members)");
    else
      rep.fail("sp(2) over fq:5: " + fmt(bad) + " mismatches");
  }
  return rep;
}

// ---------- suite: pfaffian -------------------------------------------------

template <class F>
void pfaffian_rounds(CheckReport& rep, const std::string& label, const F& f,
                     const std::function<typename F::E()>& rand_elem, int rounds,
                     Rng& local) {
  using E = typename F::E;
  using M = oracle::MatT<F>;
  auto rand_skew = [&](size_t n) {
    M m(n, n, f.zero());
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j) {
        E e = rand_elem();
        m.at(i, j) = e;
        m.at(j, i) = f.neg(e);
      }
    return m;
  };
  size_t bad = 0;
  for (int round = 0; round < rounds; ++round) {
    size_t n = 2 * (1 + local.below(3));  // 2, 4, 6
    M a = rand_skew(n);
    // pf^2 = det
    E pf = oracle::pfaffian_concrete(f, a);
    if (!f.eq(f.mul(pf, pf), oracle::m_det(f, a))) ++bad;
    // conjugation covariance
    M g(n, n, f.zero());
    for (auto& e : g.e) e = rand_elem();
    M conj = oracle::m_mul(f, oracle::m_transpose(f, g), oracle::m_mul(f, a, g));
    if (!f.eq(oracle::pfaffian_concrete(f, conj), f.mul(oracle::m_det(f, g), pf))) ++bad;
    // block multiplicativity
    size_t n2 = 2 * (1 + local.below(2));
    M b = rand_skew(n2);
    M blk(n + n2, n + n2, f.zero());
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) blk.at(i, j) = a.at(i, j);
    for (size_t i = 0; i < n2; ++i)
      for (size_t j = 0; j < n2; ++j) blk.at(n + i, n + j) = b.at(i, j);
    if (!f.eq(oracle::pfaffian_concrete(f, blk),
              f.mul(pf, oracle::pfaffian_concrete(f, b))))
      ++bad;
  }
  // theta-psi multiplicativity and the exact J identity
  for (auto [aa, bb] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 2}}) {
    Family fa = lie::fam_so(2 * aa), fb = lie::fam_so(2 * bb), fab = lie::fam_so(2 * (aa + bb));
    lie::RatMat ja = lie::j_rational(fa), jb = lie::j_rational(fb), jab = lie::j_rational(fab);
    auto to_f = [&](const lie::RatMat& q) {
      M m(q.rows, q.cols, f.zero());
      for (size_t i = 0; i < q.e.size(); ++i)
        m.e[i] = f.from_rat(q.e[i].get_num().get_si(), q.e[i].get_den().get_si());
      return m;
    };
    M Ja = to_f(ja), Jb = to_f(jb), Jab = to_f(jab);
    // J_{2a+2b} = psi((-1)^b J_{2a}, J_{2b})
    M scaled = bb % 2 == 0 ? Ja : oracle::m_scale(f, f.neg(f.one()), Ja);
    if (!oracle::m_eq(f, oracle::psi_embed(f, scaled, Jb), Jab)) ++bad;
    M Jai = oracle::m_inverse(f, Ja), Jbi = oracle::m_inverse(f, Jb);
    for (int round = 0; round < rounds; ++round) {
      M A = oracle::m_mul(f, Jai, rand_skew(2 * aa));
      M B = oracle::m_mul(f, Jbi, rand_skew(2 * bb));
      E ta = oracle::theta(f, Ja, A), tb = oracle::theta(f, Jb, B);
      E lhs = oracle::theta(f, Jab, oracle::psi_embed(f, A, B));
      E rhs = f.mul(ta, tb);
      if ((aa * bb) % 2 != 0) rhs = f.neg(rhs);
      if (!f.eq(lhs, rhs)) ++bad;
    }
  }
  if (bad == 0)
    rep.note("pfaffian identities over " + label + ": ok");
  else
    rep.fail("pfaffian identities over " + label + ": " + fmt(bad) + " mismatches");
}

CheckReport suite_pfaffian(uint64_t seed) {
  CheckReport rep{"pfaffian"};
  for (const char* spec : {"fq:3", "fq:5"}) {
    Structure s = interp::make_structure(spec);
    FqField f{&s};
    Rng rng(seed ^ s.size);
    Rng shape(seed + 1);
    pfaffian_rounds<FqField>(
        rep, spec, f, [&]() { return static_cast<uint16_t>(rng.below(s.size)); }, 200,
        shape);
    // symbolic pfaffian_term vs oracle, random prime-field matrices
    Rng rng2(seed + 17);
    size_t bad = 0;
    for (int round = 0; round < 50; ++round) {
      size_t n = 2 * (1 + rng2.below(2));
      TermMatrix tm(n, n);
      FMat m(n, n, 0);
      for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
          long long v = static_cast<long long>(rng2.below(s.p));
          m.at(i, j) = static_cast<uint16_t>(v);
          m.at(j, i) = s.neg(m.at(i, j));
          tm.at(i, j) = t_int(v);
          tm.at(j, i) = t_int(-v);
        }
      Evaluator ev(s);
      if (ev.eval_term(poly::pfaffian_term(tm)) != oracle::pfaffian_concrete(f, m)) ++bad;
    }
    if (bad == 0)
      rep.note(std::string("symbolic pfaffian matches oracle over ") + spec);
    else
      rep.fail(std::string("symbolic pfaffian over ") + spec + ": " + fmt(bad) +
               " mismatches");
  }
  {
    RatField f;
    Rng rng(seed ^ 0xabcdef);
    Rng shape(seed + 2);
    pfaffian_rounds<RatField>(
        rep, "Q", f,
        [&]() { return mpq_class(static_cast<long>(rng.below(9)) - 4); }, 200, shape);
    Rng rng2(seed + 23);
    size_t bad = 0;
    for (int round = 0; round < 50; ++round) {
      size_t n = 2 * (1 + rng2.below(2));
      TermMatrix tm(n, n);
      QMat m(n, n, mpq_class(0));
      for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
          long long v = static_cast<long long>(rng2.below(9)) - 4;
          m.at(i, j) = static_cast<long>(v);
          m.at(j, i) = -m.at(i, j);
          tm.at(i, j) = t_int(v);
          tm.at(j, i) = t_int(-v);
        }
      if (term_to_rat(poly::pfaffian_term(tm)) != oracle::pfaffian_concrete(f, m)) ++bad;
    }
    if (bad == 0)
      rep.note("symbolic pfaffian matches oracle over Q");
    else
      rep.fail("symbolic pfaffian over Q: " + fmt(bad) + " mismatches");
  }
  return rep;
}

// ---------- suite: projection -----------------------------------------------

CheckReport suite_projection(uint64_t seed) {
  CheckReport rep{"projection"};
  RatField f;
  Rng rng(seed ^ 0x99);
  size_t bad = 0;
  for (int round = 0; round < 50; ++round) {
    size_t n = 2 + rng.below(3);
    // Distinct integer eigenvalues and a random conjugation.
    std::vector<long long> eig;
    while (eig.size() < n) {
      long long v = static_cast<long long>(rng.below(11)) - 5;
      bool dup = false;
      for (long long e : eig) dup = dup || e == v;
      if (!dup) eig.push_back(v);
    }
    QMat g(n, n, mpq_class(0));
    do {
      for (auto& e : g.e) e = mpq_class(static_cast<long>(rng.below(7)) - 3);
    } while (f.is_zero(oracle::m_det(f, g)));
    QMat d(n, n, mpq_class(0));
    for (size_t i = 0; i < n; ++i) d.at(i, i) = static_cast<long>(eig[i]);
    QMat x = oracle::m_mul(f, g, oracle::m_mul(f, d, oracle::m_inverse(f, g)));

    size_t k = 1 + rng.below(n - 1);
    oracle::PolyT<RatField> fp{f.one()}, ftp{f.one()};
    for (size_t i = 0; i < n; ++i) {
      oracle::PolyT<RatField> lin{mpq_class(static_cast<long>(-eig[i])), f.one()};
      if (i < k)
        fp = oracle::p_mul(f, fp, lin);
      else
        ftp = oracle::p_mul(f, ftp, lin);
    }

    auto lit_poly = [&](const oracle::PolyT<RatField>& p) {
      std::vector<Term> cs;
      for (size_t i = 0; i + 1 < p.size(); ++i)
        cs.push_back(t_rat(p[i].get_num().get_si(), p[i].get_den().get_si()));
      return MonicPoly(p.size() - 1, std::move(cs));
    };
    TermMatrix litx(n, n);
    for (size_t i = 0; i < n * n; ++i)
      litx.e[i] = t_rat(x.e[i].get_num().get_si(), x.e[i].get_den().get_si());
    MonicPoly litf = lit_poly(fp), litft = lit_poly(ftp);

    TermMatrix pi = poly::proj_numerator(litx, litf, litft);
    mpq_class res = term_to_rat(poly::resultant_term(litf, litft.full()));
    if (res == 0) {
      ++bad;
      continue;
    }
    QMat m(n, n, mpq_class(0));
    {
      std::unordered_map<const TermNode*, mpq_class> memo;
      for (size_t i = 0; i < n * n; ++i) m.e[i] = term_to_rat(pi.e[i], memo) / res;
    }
    QMat proj = oracle::eigenprojector(f, x, fp, ftp);
    bool ok = oracle::m_eq(f, m, proj);
    ok = ok && oracle::m_eq(f, oracle::m_mul(f, m, m), m);
    ok = ok && oracle::m_eq(f, oracle::m_mul(f, m, x), oracle::m_mul(f, x, m));
    ok = ok && oracle::m_eq(f, oracle::m_mul(f, oracle::p_eval_mat(f, fp, x), m),
                            oracle::m_zero(f, n));
    ok = ok && oracle::m_rank(f, m) == k;
    if (!ok) ++bad;
  }
  if (bad == 0)
    rep.note("projection numerator matches oracle eigenprojector on 50 instances");
  else
    rep.fail("projection suite: " + fmt(bad) + " bad instances");
  return rep;
}

// ---------- suite: desugar --------------------------------------------------

CheckReport suite_desugar(uint64_t seed) {
  CheckReport rep{"desugar"};
  std::vector<Var> pool{Var{"a", {}}, Var{"b", {}}, Var{"c", {}}};
  Rng rng(seed ^ 0x5eed);
  const char* specs[] = {"fq:3", "fq:5", "inv:3"};
  size_t bad = 0;
  for (int round = 0; round < 100; ++round) {
    Structure s = interp::make_structure(specs[round % 3]);
    bool allow_bar = s.has_involution;
    Formula g = rand_formula(rng, pool, 4, allow_bar);
    Formula core = desugar(g);
    if (!is_core(core)) {
      rep.fail("desugar produced a non-core formula");
      return rep;
    }
    std::vector<std::pair<Var, uint16_t>> binds;
    for (const Var& v : pool) binds.push_back({v, static_cast<uint16_t>(rng.below(s.size))});
    Outcome o1 = eval_outcome(s, g, binds, {});
    Outcome o2 = eval_outcome(s, core, binds, {});
    if (o1 != o2) ++bad;
  }
  if (bad == 0)
    rep.note("desugar preserves evaluation on 100 random triples");
  else
    rep.fail("desugar: " + fmt(bad) + " disagreements");
  return rep;
}

// ---------- suite: realify --------------------------------------------------

struct RealifyEnv {
  Structure ext = interp::make_structure("inv:3");
  Structure base = interp::make_structure("fq:3");
  Var u{"uu", {}};
  uint16_t u0;

  RealifyEnv() {
    // u0 = eps^2 where eps is the adjoined element with digits (0, 1).
    uint16_t eps = ext.from_components({0, 1});
    uint16_t sq = ext.mul(eps, eps);
    if (ext.component(sq, 1) != 0) throw config_error("modulus is not x^2 - u0");
    u0 = static_cast<uint16_t>(ext.component(sq, 0));
  }

  bool eval_real(const Formula& rf, const std::vector<std::pair<Var, uint16_t>>& ebinds,
                 EvalOptions opts = {}) const {
    Evaluator ev(base, opts);
    ev.bind(u, u0);
    for (const auto& [v, e] : ebinds) {
      auto [re, im] = realified_pair(v);
      ev.bind(re, static_cast<uint16_t>(ext.component(e, 0)));
      ev.bind(im, static_cast<uint16_t>(ext.component(e, 1)));
    }
    return ev.eval(rf);
  }
};

CheckReport suite_realify(uint64_t seed) {
  CheckReport rep{"realify"};
  RealifyEnv env;
  auto compare_exhaustive = [&](const std::string& label, const Formula& g,
                                const std::vector<Var>& frees, EvalOptions eopts,
                                EvalOptions ropts) {
    Formula rf = realify(g, env.u, Lang::RingWithInvolution);
    size_t m = frees.size(), bad = 0;
    std::vector<uint16_t> tuple(m, 0);
    while (true) {
      std::vector<std::pair<Var, uint16_t>> binds;
      for (size_t i = 0; i < m; ++i) binds.push_back({frees[i], tuple[i]});
      Outcome e_side = eval_outcome(env.ext, g, binds, eopts);
      bool r_side = env.eval_real(rf, binds, ropts);
      if ((e_side == Outcome::True) != r_side || e_side == Outcome::Domain ||
          e_side == Outcome::Budget)
        ++bad;
      size_t i = 0;
      while (i < m && ++tuple[i] == env.ext.size) tuple[i++] = 0;
      if (i == m) break;
    }
    if (bad == 0)
      rep.note(label + ": realified evaluation agrees exhaustively");
    else
      rep.fail(label + ": " + fmt(bad) + " disagreements");
  };

  // memberships, exhaustive
  compare_exhaustive("u(1) membership", lie::lie_algebra(lie::fam_u(1)).body,
                     poly::tm_var_list(1, "x"), {}, {});
  compare_exhaustive("u(2) membership", lie::lie_algebra(lie::fam_u(2)).body,
                     poly::tm_var_list(2, "x"), {}, {});

  // norm over u(1), exhaustive
  {
    BuildCtx ctx;
    TermMatrix x = TermMatrix::vars(1, "x"), w = TermMatrix::vars(1, "w");
    MonicPoly fpol(1, {t_var(Var{"a", {0}})});
    Formula g = transfer::norm_formula(lie::fam_u(1), x, fpol, w, ctx);
    compare_exhaustive("u(1) norm", g, {Var{"x", {1, 1}}, Var{"a", {0}}, Var{"w", {1, 1}}},
                       {}, {});
  }
  // trace-form over u(1), exhaustive
  {
    BuildCtx ctx;
    TermMatrix x = TermMatrix::vars(1, "x"), c = TermMatrix::vars(1, "c");
    Formula g = transfer::trace_form_formula(lie::fam_u(1), x, c, ctx);
    compare_exhaustive("u(1) trace-form", g, {Var{"x", {1, 1}}, Var{"c", {1, 1}}}, {}, {});
  }

  // norm over u(2): sampled assignments, naive on both sides
  {
    BuildCtx ctx;
    TermMatrix x = TermMatrix::vars(2, "x"), w = TermMatrix::vars(2, "w");
    MonicPoly fpol(1, {t_var(Var{"a", {0}})});
    Formula g = transfer::norm_formula(lie::fam_u(2), x, fpol, w, ctx);
    Formula rf = realify(g, env.u, Lang::RingWithInvolution);
    std::vector<Var> frees = poly::tm_var_list(2, "x");
    frees.push_back(Var{"a", {0}});
    auto ws = poly::tm_var_list(2, "w");
    frees.insert(frees.end(), ws.begin(), ws.end());
    Rng rng(seed ^ 0x7e71);
    size_t bad = 0;
    for (int round = 0; round < 10; ++round) {
      std::vector<std::pair<Var, uint16_t>> binds;
      for (const Var& v : frees)
        binds.push_back({v, static_cast<uint16_t>(rng.below(env.ext.size))});
      Outcome e_side = eval_outcome(env.ext, g, binds, {});
      bool r_side = env.eval_real(rf, binds, {});
      if ((e_side == Outcome::True) != r_side) ++bad;
    }
    if (bad == 0)
      rep.note("u(2) norm: realified evaluation agrees on 10 sampled assignments");
    else
      rep.fail("u(2) norm: " + fmt(bad) + " disagreements");
  }

  // trace-form over u(2): guided on the involution side, component-mapped
  // candidates on the realified side.
  {
    BuildCtx ctx;
    TermMatrix x = TermMatrix::vars(2, "x"), c = TermMatrix::vars(2, "c");
    Formula g = transfer::trace_form_formula(lie::fam_u(2), x, c, ctx);
    Formula rf = realify(g, env.u, Lang::RingWithInvolution);

    // Leading existential block of the realified formula = component pairs of
    // the basis matrices.
    std::vector<Var> rgroup;
    for (const FormulaNode* cur = rf.get(); cur->kind == FKind::Exists; cur = cur->a.get())
      rgroup.push_back(cur->var);
    if (rgroup.size() != 16) {
      rep.fail("u(2) trace-form: unexpected realified binder block of size " +
               fmt(rgroup.size()));
      return rep;
    }

    FqField fe{&env.ext};
    FMat j = j_field(fe, lie::fam_u(2));
    FMat jinv = oracle::m_inverse(fe, j);
    Rng rng(seed ^ 0x7f02);
    size_t bad = 0;
    for (int round = 0; round < 10; ++round) {
      FMat xm = rand_fmat(rng, env.ext, 2), cm = rand_fmat(rng, env.ext, 2);
      std::vector<std::pair<Var, uint16_t>> binds;
      auto xs = poly::tm_var_list(2, "x");
      auto cs = poly::tm_var_list(2, "c");
      for (size_t i = 0; i < 4; ++i) binds.push_back({xs[i], xm.e[i]});
      for (size_t i = 0; i < 4; ++i) binds.push_back({cs[i], cm.e[i]});

      EvalOptions guided;
      guided.strategy = Strategy::Guided;
      guided.hints = &ctx.hints;
      Outcome e_side = eval_outcome(env.ext, g, binds, guided);

      // Realified hint: enumerate Gram-compatible basis pairs over the
      // extension, yield their component splits.
      interp::QuantHint rh;
      rh.group = rgroup;
      rh.guard = f_true();
      rh.gen = [&, xm, cm](const Structure&, Evaluator&,
                           const std::function<bool(const std::vector<uint16_t>&)>& yield) {
        auto basis = oracle::centralizer_basis(fe, xm);
        auto tau = [&](const FMat& m) {
          return oracle::m_mul(fe, jinv, oracle::m_mul(fe, bar_transpose(fe, m), j));
        };
        auto tr3 = [&](const FMat& a, const FMat& b, const FMat& cc) {
          FMat p = oracle::m_mul(fe, a, oracle::m_mul(fe, b, cc));
          return fe.add(p.at(0, 0), p.at(1, 1));
        };
        size_t dim = basis.size();
        std::vector<uint16_t> d1(dim, 0);
        bool stop = false;
        auto all_span = [&](const std::function<bool(const FMat&)>& fn) {
          std::vector<uint16_t> dg(dim, 0);
          while (true) {
            FMat m(2, 2, 0);
            for (size_t t2 = 0; t2 < dim; ++t2)
              if (dg[t2]) m = oracle::m_add(fe, m, oracle::m_scale(fe, dg[t2], basis[t2]));
            if (!fn(m)) return;
            size_t i = 0;
            while (i < dim && ++dg[i] == fe.size()) dg[i++] = 0;
            if (i == dim) return;
          }
        };
        (void)d1;
        all_span([&](const FMat& e1) {
          FMat t1 = tau(e1);
          if (tr3(t1, e1, cm) != j.at(0, 0)) return true;
          all_span([&](const FMat& e2) {
            FMat t2m = tau(e2);
            if (tr3(t1, e2, cm) != j.at(0, 1)) return true;
            if (tr3(t2m, e1, cm) != j.at(1, 0)) return true;
            if (tr3(t2m, e2, cm) != j.at(1, 1)) return true;
            std::vector<uint16_t> tuple;
            for (const FMat* em : {&e1, &e2})
              for (uint16_t e : em->e) {
                tuple.push_back(static_cast<uint16_t>(env.ext.component(e, 0)));
                tuple.push_back(static_cast<uint16_t>(env.ext.component(e, 1)));
              }
            if (!yield(tuple)) stop = true;
            return !stop;
          });
          return !stop;
        });
      };
      std::vector<interp::QuantHint> rhints{rh};
      EvalOptions ropts;
      ropts.strategy = Strategy::Guided;
      ropts.hints = &rhints;
      ropts.budget = 2000000000LL;
      bool r_side;
      {
        Evaluator ev(env.base, ropts);
        ev.bind(env.u, env.u0);
        for (const auto& [v, e] : binds) {
          auto [re, im] = realified_pair(v);
          ev.bind(re, static_cast<uint16_t>(env.ext.component(e, 0)));
          ev.bind(im, static_cast<uint16_t>(env.ext.component(e, 1)));
        }
        r_side = ev.eval(rf);
      }
      if ((e_side == Outcome::True) != r_side) ++bad;
    }
    if (bad == 0)
      rep.note("u(2) trace-form: realified evaluation agrees on 10 sampled assignments");
    else
      rep.fail("u(2) trace-form: " + fmt(bad) + " disagreements");
  }
  return rep;
}

// ---------- suite: guided ---------------------------------------------------

CheckReport suite_guided(uint64_t seed) {
  CheckReport rep{"guided"};
  Structure f3 = interp::make_structure("fq:3");
  Structure f2 = interp::make_structure_unchecked("fq:2");
  size_t compared = 0, skipped = 0, bad = 0;

  auto compare = [&](const Structure& s, const Formula& g, const BuildCtx& ctx,
                     const std::vector<std::pair<Var, uint16_t>>& binds, bool validate) {
    EvalOptions naive;
    naive.budget = 100000000;
    Outcome o1 = eval_outcome(s, g, binds, naive);
    if (o1 == Outcome::Budget) {
      ++skipped;
      return;
    }
    EvalOptions guided;
    guided.strategy = Strategy::Guided;
    guided.hints = &ctx.hints;
    guided.validate_hints = validate;
    Outcome o2 = eval_outcome(s, g, binds, guided);
    ++compared;
    if (o1 != o2) {
      ++bad;
      rep.fail("naive=" + outcome_name(o1) + " guided=" + outcome_name(o2));
    }
  };

  Rng rng(seed ^ 0x6a1d);
  std::vector<Family> fams{lie::fam_gl(1), lie::fam_gl(2), lie::fam_so(2), lie::fam_so(3),
                           lie::fam_sp(2)};
  for (const Structure* s : {&f3, &f2}) {
    bool validate = s == &f3;
    for (const Family& fam : fams) {
      size_t n = fam.n;
      // norm instances
      for (size_t d = 1; d <= n && d <= 2; ++d) {
        BuildCtx ctx;
        TermMatrix x = TermMatrix::vars(n, "x"), w = TermMatrix::vars(n, "w");
        MonicPoly fpol = MonicPoly::with_vars(d, "a");
        Formula g = transfer::norm_formula(fam, x, fpol, w, ctx);
        for (int round = 0; round < 4; ++round) {
          std::vector<std::pair<Var, uint16_t>> binds;
          for (const Var& v : poly::tm_var_list(n, "x"))
            binds.push_back({v, static_cast<uint16_t>(rng.below(s->size))});
          for (const Var& v : poly::tm_var_list(n, "w"))
            binds.push_back({v, static_cast<uint16_t>(rng.below(s->size))});
          for (size_t i = 0; i < d; ++i)
            binds.push_back({Var{"a", {static_cast<int>(i)}},
                             static_cast<uint16_t>(rng.below(s->size))});
          compare(*s, g, ctx, binds, validate);
        }
      }
      // trace-form instances
      if (n <= 2) {
        BuildCtx ctx;
        TermMatrix x = TermMatrix::vars(n, "x"), c = TermMatrix::vars(n, "c");
        Formula g = transfer::trace_form_formula(fam, x, c, ctx);
        for (int round = 0; round < 4; ++round) {
          std::vector<std::pair<Var, uint16_t>> binds;
          for (const Var& v : poly::tm_var_list(n, "x"))
            binds.push_back({v, static_cast<uint16_t>(rng.below(s->size))});
          for (const Var& v : poly::tm_var_list(n, "c"))
            binds.push_back({v, static_cast<uint16_t>(rng.below(s->size))});
          compare(*s, g, ctx, binds, validate);
        }
      }
    }
    // even-parity instances (rational-free: valid over F2 as well)
    for (size_t d = 1; d <= 3; ++d) {
      BuildCtx ctx;
      MonicPoly fpol = MonicPoly::with_vars(d, "a");
      Formula g = transfer::even_parity(
          fpol,
          [](const MonicPoly& fi) {
            return fi.degree % 2 != 0 ? f_false() : poly::even_poly(fi);
          },
          ctx);
      for (int round = 0; round < 6; ++round) {
        std::vector<std::pair<Var, uint16_t>> binds;
        for (size_t i = 0; i < d; ++i)
          binds.push_back(
              {Var{"a", {static_cast<int>(i)}}, static_cast<uint16_t>(rng.below(s->size))});
        compare(*s, g, ctx, binds, true);
      }
    }
  }
  rep.note(fmt(compared) + " instances compared, " + fmt(skipped) + " over naive budget");
  if (bad != 0) rep.fail(fmt(bad) + " strategy disagreements");
  return rep;
}

// ---------- suite: partition ------------------------------------------------

CheckReport suite_partition(uint64_t seed) {
  CheckReport rep{"partition"};
  struct Case {
    lie::TripleSpec t;
    const char* spec;
  };
  std::vector<Case> cases{
      {lie::TripleSpec(lie::TripleSpec::Case::OddOrth, 1, 1, 0), "fq:3"},
      {lie::TripleSpec(lie::TripleSpec::Case::Sympl, 1, 1, 0), "fq:3"},
      {lie::TripleSpec(lie::TripleSpec::Case::Unitary, 2, 1, 1), "inv:3"},
  };
  for (const Case& c : cases) {
    Structure s = interp::make_structure(c.spec);
    FqField fq{&s};
    Family g = c.t.g(), h1 = c.t.h1(), h2 = c.t.h2();
    std::vector<FMat> gmem = members_of(s, g);
    Rng rng(seed ^ (g.n * 131 + h1.n));
    bool glreg = transfer::default_glreg(c.t);
    const classify::SigmaBundle& bundle = classify::sigma_bundle(c.t, glreg);

    size_t counts[3] = {0, 0, 0};
    size_t violations = 0, zero_mismatch = 0;
    for (int round = 0; round < 50; ++round) {
      classify::TriplePoint p;
      if (round % 2 == 0) {
        p.x = rand_fmat(rng, s, g.n);
        p.y = rand_fmat(rng, s, h1.n);
        p.z = rand_fmat(rng, s, h2.n);
      } else if (c.t.c != lie::TripleSpec::Case::Unitary) {
        // Aligned candidate: Y = X in the g-member list, Z = 0.
        p.x = gmem[rng.below(gmem.size())];
        p.y = p.x;
        p.z = FMat(h2.n, h2.n, 0);
      } else {
        // Aligned unitary candidate: split the characteristic polynomial of a
        // member into two pure-imaginary eigenvalues when possible.
        bool found = false;
        for (int tries = 0; tries < 40 && !found; ++tries) {
          FMat x = gmem[rng.below(gmem.size())];
          auto cp = oracle::char_poly_concrete(fq, x);
          for (int e = 0; e < s.size && !found; ++e) {
            uint16_t y = static_cast<uint16_t>(e);
            uint16_t z = fq.neg(fq.add(cp[1], y));
            if (fq.mul(y, z) != cp[0]) continue;
            if (s.bar(y) != s.neg(y) || s.bar(z) != s.neg(z)) continue;
            p.x = x;
            p.y = FMat(1, 1, y);
            p.z = FMat(1, 1, z);
            found = true;
          }
        }
        if (!found) {
          p.x = rand_fmat(rng, s, g.n);
          p.y = rand_fmat(rng, s, h1.n);
          p.z = rand_fmat(rng, s, h2.n);
        }
      }
      int sigma;
      try {
        sigma = classify::classify_point(s, c.t, p, glreg, Strategy::Guided);
      } catch (const partition_error&) {
        ++violations;
        continue;
      }
      ++counts[sigma + 1];
      // zero-set complement agrees with the negated pm-set
      VirtualSet pm = registry::resolve_set("pm:" + c.t.name()).set;
      Evaluator ev(s);
      std::vector<uint16_t> tuple;
      tuple.insert(tuple.end(), p.x.e.begin(), p.x.e.end());
      tuple.insert(tuple.end(), p.y.e.begin(), p.y.e.end());
      tuple.insert(tuple.end(), p.z.e.begin(), p.z.e.end());
      bind_tuple(ev, pm.sig, tuple);
      bool in_pm = ev.eval(pm.body);
      if ((sigma == 0) != !in_pm) ++zero_mismatch;
      (void)bundle;
    }
    std::string head = c.t.name() + " over " + c.spec;
    if (violations == 0 && zero_mismatch == 0)
      rep.note(head + ": 50 points, sigma = (-1:" + fmt(counts[0]) + ", 0:" +
               fmt(counts[1]) + ", +1:" + fmt(counts[2]) + ")");
    else
      rep.fail(head + ": " + fmt(violations) + " partition violations, " +
               fmt(zero_mismatch) + " zero/pm mismatches");
  }
  return rep;
}

// ---------- suite: parity ---------------------------------------------------

CheckReport suite_parity(uint64_t) {
  CheckReport rep{"parity"};
  Structure s = interp::make_structure("fq:3");
  FqField f{&s};
  size_t bad = 0, total = 0;
  for (size_t deg = 0; deg <= 3; ++deg) {
    size_t count = 1;
    for (size_t i = 0; i < deg; ++i) count *= 3;
    for (size_t idx = 0; idx < count; ++idx) {
      std::vector<uint16_t> coeffs(deg);
      size_t v = idx;
      for (size_t i = 0; i < deg; ++i) {
        coeffs[i] = static_cast<uint16_t>(v % 3);
        v /= 3;
      }
      std::vector<Term> lits;
      for (uint16_t cc : coeffs) lits.push_back(t_int(cc));
      MonicPoly fp(deg, lits);

      std::vector<uint16_t> full(coeffs.begin(), coeffs.end());
      full.push_back(1);
      auto factors = deg == 0 ? std::vector<std::vector<uint16_t>>{}
                              : oracle::irreducible_factors(f, full);

      for (int phi_kind = 0; phi_kind < 3; ++phi_kind) {
        transfer::PhiFn phi;
        std::function<bool(const std::vector<uint16_t>&)> phi_concrete;
        if (phi_kind == 0) {
          phi = [](const MonicPoly&) { return f_true(); };
          phi_concrete = [](const std::vector<uint16_t>&) { return true; };
        } else if (phi_kind == 1) {
          phi = [](const MonicPoly&) { return f_false(); };
          phi_concrete = [](const std::vector<uint16_t>&) { return false; };
        } else {
          phi = [](const MonicPoly& fi) {
            return fi.degree % 2 != 0 ? f_false() : poly::even_poly(fi);
          };
          phi_concrete = [](const std::vector<uint16_t>& fac) {
            if ((fac.size() - 1) % 2 != 0) return false;
            for (size_t i = 1; i < fac.size(); i += 2)
              if (fac[i] != 0) return false;
            return true;
          };
        }
        size_t failures = 0;
        for (const auto& fac : factors)
          if (!phi_concrete(fac)) ++failures;
        bool expected = failures % 2 == 0;

        BuildCtx ctx;
        Formula g = transfer::even_parity(fp, phi, ctx);
        ++total;
        Outcome naive = eval_outcome(s, g, {}, {});
        EvalOptions gopts;
        gopts.strategy = Strategy::Guided;
        gopts.hints = &ctx.hints;
        Outcome guided = eval_outcome(s, g, {}, gopts);
        if (naive != (expected ? Outcome::True : Outcome::False) || naive != guided) ++bad;
      }
    }
  }
  if (bad == 0)
    rep.note("even-parity matches brute-force parity on " + fmt(total) + " instances");
  else
    rep.fail("even-parity: " + fmt(bad) + " mismatches out of " + fmt(total));
  return rep;
}

// ---------- suite: serialization --------------------------------------------

std::string golden_file_name(const std::string& set_name) {
  std::string out = set_name;
  for (char& ch : out)
    if (ch == ':') ch = '.';
  return out + ".sexpr";
}

CheckReport suite_serialization(uint64_t seed) {
  CheckReport rep{"serialization"};
  std::string dir = golden_dir();
  size_t bad = 0;
  for (const std::string& name : registry::catalog_names()) {
    std::string text = sexpr::to_sexpr(registry::resolve_set(name).set) + "\n";
    std::string path = dir + "/" + golden_file_name(name);
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      rep.fail("missing golden file " + path);
      ++bad;
      continue;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    if (ss.str() != text) {
      rep.fail("golden mismatch for " + name);
      ++bad;
    }
    // round trip
    VirtualSet back = sexpr::parse_vset(text);
    if (sexpr::to_sexpr(back) + "\n" != text) {
      rep.fail("round trip failed for " + name);
      ++bad;
    }
  }
  if (bad == 0) rep.note("golden byte equality for all catalog sets");

  std::vector<Var> pool{Var{"a", {}}, Var{"b", {}}, Var{"x", {1, 2}}};
  Rng rng(seed ^ 0x5e1a);
  size_t rt_bad = 0;
  for (int round = 0; round < 500; ++round) {
    Formula g = rand_formula(rng, pool, 4, round % 2 == 0);
    std::string text = sexpr::to_sexpr(g);
    Formula back = sexpr::parse_formula(text);
    if (sexpr::to_sexpr(back) != text) ++rt_bad;
  }
  if (rt_bad == 0)
    rep.note("round-trip identity on 500 random formulas");
  else
    rep.fail("round trip: " + fmt(rt_bad) + " failures");
  return rep;
}

}  // namespace

std::string golden_dir() {
  if (const char* env = std::getenv("DEFRING_GOLDEN_DIR")) return env;
  return "tests/golden";
}

std::vector<std::string> suite_names() {
  return {"counts",  "regularity", "pfaffian",  "projection",   "desugar",
          "realify", "guided",     "partition", "parity",       "serialization"};
}

CheckReport run_suite(const std::string& name, uint64_t seed) {
  if (name == "counts") return suite_counts(seed);
  if (name == "regularity") return suite_regularity(seed);
  if (name == "pfaffian") return suite_pfaffian(seed);
  if (name == "projection") return suite_projection(seed);
  if (name == "desugar") return suite_desugar(seed);
  if (name == "realify") return suite_realify(seed);
  if (name == "guided") return suite_guided(seed);
  if (name == "partition") return suite_partition(seed);
  if (name == "parity") return suite_parity(seed);
  if (name == "serialization") return suite_serialization(seed);
  throw config_error("unknown check suite '" + name + "'");
}

}  // namespace defring::checks
