#pragma once
#include <string>
#include <variant>

#include "defring/formula.hpp"
#include "defring/poly_meta.hpp"

namespace defring::sexpr {

// Deterministic canonical printing. Grammar:
//   term    := var | int | rat | "0" | "1" | (+ t t) | (* t t) | (bar t)
//   formula := (= t t) | (not f) | (or f f) | (and f f) | (implies f f)
//            | (iff f f) | (exists v f) | (forall v f) | true | false
//   vset    := (vset (sig v ...) f)
//   monic   := (monic n a0 a1 ...)
// Variable atoms are name followed by '_'-joined index parts; names never
// contain '_', so parsing is unambiguous.
std::string to_sexpr(lang::Term t);
std::string to_sexpr(const lang::Formula& f);
std::string to_sexpr(const lang::VirtualSet& v);
std::string to_sexpr(const poly::MonicPoly& p);

// Parsing never simplifies, so print -> parse -> print is the identity on
// canonical output. Errors carry 1-based line/column positions.
lang::Term parse_term(const std::string& text);
lang::Formula parse_formula(const std::string& text);
lang::VirtualSet parse_vset(const std::string& text);
poly::MonicPoly parse_monic(const std::string& text);

using Object = std::variant<lang::Formula, lang::VirtualSet, poly::MonicPoly>;
Object parse_object(const std::string& text);

}  // namespace defring::sexpr
