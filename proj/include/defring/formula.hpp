#pragma once
#include <map>
#include <memory>
#include <set>
#include <vector>

#include "defring/term.hpp"

namespace defring::lang {

// Strict core is {Eq, Not, Or, Exists}; the rest are sugar that desugar()
// lowers away. big-or / big-and are folded at construction time (empty big-or
// is False, empty big-and is True), so they never appear as AST nodes.
enum class FKind : uint8_t {
  Eq, Not, Or, Exists, And, Forall, Implies, Iff, True, False
};

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
  FKind kind;
  Term t1 = nullptr, t2 = nullptr;  // Eq
  Formula a, b;                     // children
  Var var;                          // Exists / Forall binder
};

Formula f_eq(Term a, Term b);
Formula f_not(Formula f);
Formula f_or(Formula a, Formula b);
Formula f_and(Formula a, Formula b);
Formula f_implies(Formula a, Formula b);
Formula f_iff(Formula a, Formula b);
Formula f_exists(const Var& v, Formula body);
Formula f_forall(const Var& v, Formula body);
Formula f_true();
Formula f_false();
Formula f_big_or(const std::vector<Formula>& fs);   // empty -> False
Formula f_big_and(const std::vector<Formula>& fs);  // empty -> True

// Convenience: a chain of binders over a block of variables.
Formula f_exists_all(const std::vector<Var>& vs, Formula body);
Formula f_forall_all(const std::vector<Var>& vs, Formula body);

enum class Lang : uint8_t { Ring, RingWithInvolution };

// A formula together with an ordered free-variable signature.
struct VirtualSet {
  std::vector<Var> sig;
  Formula body;
  Lang lang = Lang::Ring;
};

// Monotone counter producing reserved "$k" names that cannot collide with
// catalog variables (which never start with '$').
struct FreshSupply {
  long long next = 1;
  Var fresh() { return Var{"$" + std::to_string(next++), {}}; }
  // Advance past any "$k" already present, so renames stay collision-free.
  void seed_past(const Formula& f);
  void seed_past(Term t);
};

std::set<Var> free_vars(const Formula& f);
std::set<Var> bound_vars(const Formula& f);

// Capture-avoiding simultaneous substitution; binders are renamed to fresh
// "$k" variables when they would capture a variable of a substituted term.
Formula substitute(const Formula& f, const std::map<Var, Term>& map, FreshSupply& fresh);
Formula substitute(const Formula& f, const std::map<Var, Term>& map);

// Lower to the strict core {eq, not, or, exists} over terms
// {var, zero, one, add, mul, bar}. Integer literals become 1+1+...+1;
// negative and rational literals become existentially quantified witnesses
// constrained by d*w + m = 0 style equations.
Formula desugar(const Formula& f);
bool is_core(const Formula& f);

bool formula_contains_bar(const Formula& f);

// Set algebra over virtual sets (positional identification of signatures).
Formula vs_subset(const VirtualSet& a, const VirtualSet& b);
VirtualSet vs_intersect(const VirtualSet& a, const VirtualSet& b);
VirtualSet vs_union(const VirtualSet& a, const VirtualSet& b);

// Membership formula of a value-tuple of terms: body with sig substituted.
Formula vs_member(const VirtualSet& v, const std::vector<Term>& point);

// AST statistics for the CLI's emit command.
struct FormulaStats {
  size_t nodes = 0;
  size_t quantifiers = 0;
  size_t free_var_count = 0;
};
FormulaStats formula_stats(const Formula& f);

}  // namespace defring::lang
