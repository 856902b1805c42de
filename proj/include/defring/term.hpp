#pragma once
#include <cstdint>
#include <string>
#include <vector>

namespace defring::lang {

// A variable symbol: a base name plus an optional multi-index, so that matrix
// entries can be written x_{ij} without flattening to a sequential numbering.
struct Var {
  std::string name;
  std::vector<int> index;

  bool operator==(const Var&) const = default;
  bool operator<(const Var& o) const {
    if (name != o.name) return name < o.name;
    return index < o.index;
  }
  // Canonical printed form: name with index parts joined by '_'.
  std::string text() const;
};

struct VarHash {
  size_t operator()(const Var& v) const;
};

enum class TermKind : uint8_t { Var, Int, Rat, Zero, One, Add, Mul, Bar };

class TermNode;
using Term = const TermNode*;  // interned, immutable, never freed

class TermNode {
 public:
  TermKind kind;
  uint32_t id;   // dense id, used by evaluation caches
  size_t hash;
  Var var;                     // Var
  uint32_t var_id = 0;         // dense id of `var` (Var nodes only)
  long long num = 0, den = 1;  // Int (num only) and Rat literals
  Term a = nullptr, b = nullptr;
};

// Interning constructors. These never simplify; structural round trips stay exact.
Term t_var(const Var& v);
Term t_var(const std::string& name, std::vector<int> index = {});
Term t_zero();
Term t_one();
Term t_int(long long n);               // 0 and 1 collapse onto Zero/One
Term t_rat(long long num, long long den);  // normalized; integral values collapse
Term t_add(Term a, Term b);
Term t_mul(Term a, Term b);
Term t_bar(Term t);

// Simplifying helpers used by the catalog constructors: fold literal
// arithmetic and drop additive/multiplicative identities so that J-matrix
// products stay small.
Term s_add(Term a, Term b);
Term s_mul(Term a, Term b);
Term s_neg(Term a);
Term s_sub(Term a, Term b);

bool is_literal(Term t);
// num/den of a literal node (Zero, One, Int, Rat).
std::pair<long long, long long> literal_value(Term t);

// Number of interned terms so far; ids are < this.
uint32_t term_count();

// Dense ids for variable symbols (assigned on first use); the evaluator keys
// its environment vector on these.
uint32_t var_id(const Var& v);
uint32_t var_count();

void collect_vars(Term t, std::vector<Var>& out);
bool contains_bar(Term t);

}  // namespace defring::lang
