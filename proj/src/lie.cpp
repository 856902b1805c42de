#include "defring/lie.hpp"

#include "defring/errors.hpp"

namespace defring::lie {

using namespace defring::lang;
using defring::poly::MonicPoly;
using defring::poly::TermMatrix;

Family fam_gl(int n) {
  if (n < 0) throw config_error("gl size must be nonnegative");
  return {FamilyTag::Gl, n};
}

Family fam_so(int n) {
  if (n < 0) throw config_error("so size must be nonnegative");
  return {FamilyTag::So, n};
}

Family fam_sp(int two_r) {
  if (two_r < 2 || two_r % 2 != 0) throw config_error("sp size must be even and positive");
  return {FamilyTag::Sp, two_r};
}

Family fam_u(int r) {
  if (r < 0) throw config_error("u size must be nonnegative");
  return {FamilyTag::U, r};
}

std::string fam_name(const Family& f) {
  switch (f.tag) {
    case FamilyTag::Gl: return "gl(" + std::to_string(f.n) + ")";
    case FamilyTag::So: return "so(" + std::to_string(f.n) + ")";
    case FamilyTag::Sp: return "sp(" + std::to_string(f.n) + ")";
    case FamilyTag::U: return "u(" + std::to_string(f.n) + ")";
  }
  return "?";
}

RatMat j_rational(const Family& f) {
  int n = f.n;
  RatMat j(n, n, mpq_class(0));
  switch (f.tag) {
    case FamilyTag::Gl:
      for (int i = 0; i < n; ++i) j.at(i, i) = 1;
      break;
    case FamilyTag::So:
      if (n % 2 == 1) {
        for (int i = 1; i <= n; ++i)
          for (int jj = 1; jj <= n; ++jj) {
            if (i + jj != n + 1) continue;
            if (i == jj)  // the center entry, i = (n+1)/2
              j.at(i - 1, jj - 1) = (i % 2 == 1) ? 1 : -1;
            else
              j.at(i - 1, jj - 1) = mpq_class((i % 2 == 1) ? 1 : -1, 2);
          }
      } else {
        for (int i = 1; i <= n; ++i)
          for (int jj = 1; jj <= n; ++jj) {
            if (i + jj != n + 1) continue;
            int sign_index = i < jj ? i : jj;  // (-1)^{i+1} for i<j, (-1)^{j+1} for j<i
            j.at(i - 1, jj - 1) = mpq_class((sign_index % 2 == 1) ? 1 : -1, 2);
          }
      }
      break;
    case FamilyTag::Sp:
      for (int i = 1; i <= n; ++i)
        for (int jj = 1; jj <= n; ++jj)
          if (i + jj == n + 1) j.at(i - 1, jj - 1) = (i % 2 == 0) ? 1 : -1;  // (-1)^i
      break;
    case FamilyTag::U:
      for (int i = 1; i <= n; ++i)
        for (int jj = 1; jj <= n; ++jj)
          if (i + jj == n + 1) j.at(i - 1, jj - 1) = 2 * ((i % 2 == 1) ? 1 : -1);
      break;
  }
  return j;
}

namespace {

TermMatrix to_terms(const RatMat& m) {
  TermMatrix r(m.rows, m.cols);
  for (size_t i = 0; i < m.rows; ++i)
    for (size_t jj = 0; jj < m.cols; ++jj) {
      const mpq_class& q = m.at(i, jj);
      r.at(i, jj) = t_rat(q.get_num().get_si(), q.get_den().get_si());
    }
  return r;
}

}  // namespace

poly::TermMatrix j_matrix(const Family& f) { return to_terms(j_rational(f)); }

poly::TermMatrix j_inverse_matrix(const Family& f) {
  if (f.n == 0) return TermMatrix(0, 0);
  return to_terms(oracle::m_inverse(oracle::RatField{}, j_rational(f)));
}

Formula lie_membership(const Family& f, const TermMatrix& x) {
  if (f.tag == FamilyTag::Gl) {
    // The always-true formula: a conjunction of self-equalities.
    std::vector<Formula> eqs;
    for (Term t : x.e) eqs.push_back(f_eq(t, t));
    return f_big_and(eqs);
  }
  TermMatrix xt = f.unitary() ? poly::tm_bar(poly::tm_transpose(x)) : poly::tm_transpose(x);
  TermMatrix j = j_matrix(f);
  TermMatrix lhs = poly::tm_add(poly::tm_mul(xt, j), poly::tm_mul(j, x));
  return poly::tm_eq(lhs, TermMatrix::zero(f.n));
}

VirtualSet lie_algebra(const Family& f) {
  VirtualSet v;
  v.sig = poly::tm_var_list(f.n, "x");
  v.body = lie_membership(f, TermMatrix::vars(f.n, "x"));
  v.lang = f.unitary() ? Lang::RingWithInvolution : Lang::Ring;
  return v;
}

Formula regular_cond(const Family& f, const TermMatrix& x) {
  MonicPoly p = poly::char_poly(x);
  Formula distinct = f_not(f_eq(poly::resultant_term(p, poly::derivative(p)), t_zero()));
  if (f.tag != FamilyTag::So || f.n % 2 != 0 || f.n == 0) return distinct;
  // Even orthogonal branch B: eigenvalue 0 of multiplicity two, the rest
  // distinct and nonzero: P = lambda^2 h, res(h, h') != 0, h(0) != 0.
  MonicPoly h(p.degree - 2, std::vector<Term>(p.coeffs.begin() + 2, p.coeffs.end()));
  Term h0 = h.degree == 0 ? t_one() : h.coeffs[0];
  std::vector<Formula> branch{
      f_eq(p.coeffs[0], t_zero()), f_eq(p.coeffs[1], t_zero()),
      f_not(f_eq(poly::resultant_term(h, poly::derivative(h)), t_zero())),
      f_not(f_eq(h0, t_zero()))};
  return f_or(distinct, f_big_and(branch));
}

VirtualSet regular_ss(const Family& f) {
  VirtualSet v = lie_algebra(f);
  v.body = f_and(v.body, regular_cond(f, TermMatrix::vars(f.n, "x")));
  return v;
}

VirtualSet stable_orbit(const Family& f) {
  TermMatrix x = TermMatrix::vars(f.n, "x");
  TermMatrix y = TermMatrix::vars(f.n, "y");
  MonicPoly px = poly::char_poly(x), py = poly::char_poly(y);
  std::vector<Formula> conj{lie_membership(f, y)};
  for (size_t i = 0; i < px.degree; ++i) conj.push_back(f_eq(px.coeffs[i], py.coeffs[i]));
  if (f.tag == FamilyTag::So && f.n % 2 == 0)
    conj.push_back(f_eq(theta_term(f, x), theta_term(f, y)));
  VirtualSet v;
  v.sig = poly::tm_var_list(f.n, "y");
  v.body = f_big_and(conj);
  v.lang = f.unitary() ? Lang::RingWithInvolution : Lang::Ring;
  return v;
}

Formula centralizer_body(const TermMatrix& x, const TermMatrix& y) {
  return poly::tm_eq(poly::tm_mul(x, y), poly::tm_mul(y, x));
}

VirtualSet centralizer(const Family& f, bool ambient_gl) {
  TermMatrix x = TermMatrix::vars(f.n, "x");
  TermMatrix y = TermMatrix::vars(f.n, "y");
  Formula body = centralizer_body(x, y);
  if (!ambient_gl) body = f_and(lie_membership(f, y), body);
  VirtualSet v;
  v.sig = poly::tm_var_list(f.n, "y");
  v.body = body;
  v.lang = f.unitary() ? Lang::RingWithInvolution : Lang::Ring;
  return v;
}

VirtualSet proj_set(int n) {
  TermMatrix x = TermMatrix::vars(n, "x");
  TermMatrix p = TermMatrix::vars(n, "p");
  TermMatrix y = TermMatrix::vars(n, "y");
  TermMatrix py = poly::tm_mul(p, y);
  Formula inner = f_implies(
      centralizer_body(x, y),
      f_and(centralizer_body(x, py), poly::tm_eq(poly::tm_mul(p, py), py)));
  VirtualSet v;
  v.sig = poly::tm_var_list(n, "p");
  v.body = f_forall_all(poly::tm_var_list(n, "y"), inner);
  return v;
}

poly::TermMatrix tau_apply(const Family& f, const TermMatrix& m) {
  TermMatrix mt = f.unitary() ? poly::tm_bar(poly::tm_transpose(m)) : poly::tm_transpose(m);
  return poly::tm_mul(j_inverse_matrix(f), poly::tm_mul(mt, j_matrix(f)));
}

lang::Term theta_term(const Family& f, const TermMatrix& x) {
  if (f.tag != FamilyTag::So || f.n % 2 != 0)
    throw config_error("theta_term needs an even orthogonal family");
  return poly::pfaffian_term(poly::tm_mul(j_matrix(f), x));
}

TripleSpec::TripleSpec(Case cc, int rr, int aa, int bb) : c(cc), r(rr), a(aa), b(bb) {
  if (a < 0 || b < 0 || a + b != r)
    throw config_error("triple parameters must satisfy a + b = r with a, b >= 0");
  switch (c) {
    case Case::OddOrth:
      break;
    case Case::Sympl:
      if (b == 1) throw config_error("symplectic triple requires b != 1");
      if (a == 0) throw config_error("symplectic triple requires sp(2a) with a >= 1");
      break;
    case Case::EvenOrth:
      if (a == 1 || b == 1 || r == 1)
        throw config_error("even orthogonal triple requires a != 1, b != 1, r != 1");
      break;
    case Case::Unitary:
      break;
  }
}

Family TripleSpec::g() const {
  switch (c) {
    case Case::OddOrth: return fam_so(2 * r + 1);
    case Case::Sympl: return fam_sp(2 * r);
    case Case::EvenOrth: return fam_so(2 * r);
    case Case::Unitary: return fam_u(r);
  }
  throw config_error("bad triple case");
}

Family TripleSpec::h1() const {
  switch (c) {
    case Case::OddOrth: return fam_so(2 * a + 1);
    case Case::Sympl: return fam_sp(2 * a);
    case Case::EvenOrth: return fam_so(2 * a);
    case Case::Unitary: return fam_u(a);
  }
  throw config_error("bad triple case");
}

Family TripleSpec::h2() const {
  switch (c) {
    case Case::OddOrth: return fam_so(2 * b + 1);
    case Case::Sympl: return fam_so(2 * b);
    case Case::EvenOrth: return fam_so(2 * b);
    case Case::Unitary: return fam_u(b);
  }
  throw config_error("bad triple case");
}

int TripleSpec::chi() const {
  if (c == Case::Sympl) return -1;
  if (c == Case::Unitary && r % 2 == 0) return -1;
  return 1;
}

std::string TripleSpec::name() const {
  const char* head = c == Case::OddOrth    ? "odd-orth"
                     : c == Case::Sympl    ? "sympl"
                     : c == Case::EvenOrth ? "even-orth"
                                           : "unitary";
  std::string key = c == Case::Unitary ? "n" : "r";
  return std::string(head) + ":" + key + "=" + std::to_string(r) + ",a=" + std::to_string(a) +
         ",b=" + std::to_string(b);
}

std::vector<TripleSpec> triple_catalog(int max_param) {
  std::vector<TripleSpec> out;
  for (int r = 0; r <= max_param; ++r)
    for (int a = 0; a <= r; ++a) {
      int b = r - a;
      for (TripleSpec::Case c : {TripleSpec::Case::OddOrth, TripleSpec::Case::Sympl,
                                 TripleSpec::Case::EvenOrth, TripleSpec::Case::Unitary}) {
        try {
          out.emplace_back(c, r, a, b);
        } catch (const config_error&) {
          // invalid parameter combination for this case
        }
      }
    }
  return out;
}

TripleSpec parse_triple(const std::string& name) {
  auto colon = name.find(':');
  if (colon == std::string::npos) throw config_error("bad triple name '" + name + "'");
  std::string head = name.substr(0, colon);
  TripleSpec::Case c;
  if (head == "odd-orth")
    c = TripleSpec::Case::OddOrth;
  else if (head == "sympl")
    c = TripleSpec::Case::Sympl;
  else if (head == "even-orth")
    c = TripleSpec::Case::EvenOrth;
  else if (head == "unitary")
    c = TripleSpec::Case::Unitary;
  else
    throw config_error("unknown triple case '" + head + "'");
  int r = -1, a = -1, b = -1;
  std::string rest = name.substr(colon + 1);
  size_t pos = 0;
  while (pos < rest.size()) {
    size_t comma = rest.find(',', pos);
    std::string piece = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    pos = comma == std::string::npos ? rest.size() : comma + 1;
    auto eq = piece.find('=');
    if (eq == std::string::npos) throw config_error("bad triple parameter '" + piece + "'");
    std::string key = piece.substr(0, eq);
    int val = std::atoi(piece.substr(eq + 1).c_str());
    if (key == "r" || key == "n")
      r = val;
    else if (key == "a")
      a = val;
    else if (key == "b")
      b = val;
    else
      throw config_error("unknown triple parameter '" + key + "'");
  }
  if (r < 0 || a < 0 || b < 0)
    throw config_error("triple name must set r (or n), a, and b");
  return TripleSpec(c, r, a, b);
}

}  // namespace defring::lie
