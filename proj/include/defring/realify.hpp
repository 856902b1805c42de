#pragma once
#include "defring/formula.hpp"

namespace defring::lang {

// The involution-elimination pass: each variable z becomes a component pair
// (z.re, z.im) with z = z.re + z.im*eps, eps^2 = u (u a fresh nonsquare
// parameter), bar(z) = z.re - z.im*eps. Equalities split into component
// pairs; quantifiers double.
std::pair<Var, Var> realified_pair(const Var& z);

// Rejects formulas outside the involution language flag.
Formula realify(const Formula& f, const Var& u, Lang lang);
VirtualSet realify(const VirtualSet& vs, const Var& u);

}  // namespace defring::lang
