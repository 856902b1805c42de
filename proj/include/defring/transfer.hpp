#pragma once
#include <functional>

#include "defring/eval.hpp"
#include "defring/lie.hpp"
#include "defring/poly_meta.hpp"

namespace defring::transfer {

// even_k: true iff an even number of the arguments are false.
lang::Formula even_k(const std::vector<lang::Formula>& args);

// P_{Z,0}: drop the lambda factor in the odd orthogonal case.
poly::MonicPoly pz0(lie::TripleSpec::Case c, const poly::MonicPoly& pz);

// norm(X, f, U): the f-component of U in C(X) is a norm. Emits divisor and
// centralizer-span hints into ctx.
lang::Formula norm_formula(const lie::Family& fam, const poly::TermMatrix& x,
                           const poly::MonicPoly& f, const poly::TermMatrix& u,
                           interp::BuildCtx& ctx);

// trace-form(X, c): some basis of C(X) matches the defining form of fam.
lang::Formula trace_form_formula(const lie::Family& fam, const poly::TermMatrix& x,
                                 const poly::TermMatrix& c, interp::BuildCtx& ctx);

using PhiFn = std::function<lang::Formula(const poly::MonicPoly&)>;

// Disjunction over factorizations into irreducibles with an even number of
// phi-failures; degree 0 yields true.
lang::Formula even_parity(const poly::MonicPoly& f, const PhiFn& phi, interp::BuildCtx& ctx);

// The case-dependent phi of the +1-set; eps is the unitary pure-imaginary
// term (null otherwise).
lang::Formula phi_case(const lie::TripleSpec& t, const poly::MonicPoly& f,
                       const poly::TermMatrix& x, const poly::TermMatrix& cp,
                       lang::Term eps, interp::BuildCtx& ctx);

lang::VirtualSet pm_set(const lie::TripleSpec& t);

struct SigmaSets {
  lang::VirtualSet plus, minus, zero;
};

// The three-way partition. glreg conjoins gl-regularity of X onto the pm
// body (defaults on for the even orthogonal case via default_glreg).
bool default_glreg(const lie::TripleSpec& t);
SigmaSets sigma_sets(const lie::TripleSpec& t, bool glreg, interp::BuildCtx& ctx);
lang::VirtualSet plus_set(const lie::TripleSpec& t, interp::BuildCtx& ctx);

}  // namespace defring::transfer
