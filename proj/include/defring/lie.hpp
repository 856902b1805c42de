#pragma once
#include <string>
#include <vector>

#include "defring/oracle.hpp"
#include "defring/poly_meta.hpp"

namespace defring::lie {

enum class FamilyTag : uint8_t { Gl, So, Sp, U };

// n is always the ambient matrix size (so: n; sp: 2r so n even; u: r).
struct Family {
  FamilyTag tag = FamilyTag::Gl;
  int n = 0;
  bool unitary() const { return tag == FamilyTag::U; }
};

Family fam_gl(int n);
Family fam_so(int n);
Family fam_sp(int two_r);
Family fam_u(int r);
std::string fam_name(const Family& f);

using RatMat = oracle::Mtx<mpq_class>;

// The defining bilinear-form matrices, exact over the rationals, and their
// term-matrix embeddings (J inverses precomputed exactly).
RatMat j_rational(const Family& f);
poly::TermMatrix j_matrix(const Family& f);
poly::TermMatrix j_inverse_matrix(const Family& f);

// Membership body for an arbitrary matrix of terms (n^2 entry equalities).
lang::Formula lie_membership(const Family& f, const poly::TermMatrix& x);
lang::VirtualSet lie_algebra(const Family& f);  // signature x_{ij}

// Regularity condition (resultant clause, plus the two-fold-zero branch for
// even orthogonal) for an arbitrary matrix of terms; regular_ss conjoins it
// with lie membership.
lang::Formula regular_cond(const Family& f, const poly::TermMatrix& x);
lang::VirtualSet regular_ss(const Family& f);

// Stable orbit of the parameter matrix x: signature y, free parameters x.
lang::VirtualSet stable_orbit(const Family& f);

// Commutator equalities XY - YX = 0 (quantifier-free).
lang::Formula centralizer_body(const poly::TermMatrix& x, const poly::TermMatrix& y);
// Centralizer with parameter x: ambient gl(n) by default, or inside fam.
lang::VirtualSet centralizer(const Family& f, bool ambient_gl = true);

// proj(X): matrices P acting as a projection operator on C(X).
lang::VirtualSet proj_set(int n);

poly::TermMatrix tau_apply(const Family& f, const poly::TermMatrix& m);

// pf(J X) for the even orthogonal family.
lang::Term theta_term(const Family& f, const poly::TermMatrix& x);

struct TripleSpec {
  enum class Case : uint8_t { OddOrth, Sympl, EvenOrth, Unitary };
  Case c;
  int r = 0;  // n in the unitary case
  int a = 0, b = 0;

  TripleSpec(Case c, int r, int a, int b);  // throws config_error when invalid
  Family g() const;
  Family h1() const;
  Family h2() const;
  int chi() const;  // -1 for sp(2r) and even unitary, else +1
  std::string name() const;
};

std::vector<TripleSpec> triple_catalog(int max_param = 2);
TripleSpec parse_triple(const std::string& name);

}  // namespace defring::lie
