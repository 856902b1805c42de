#pragma once
#include <cstdint>
#include <string>
#include <vector>

namespace defring::interp {

// A finite interpretation of the ring language: a table-backed finite field
// F_{p^k}, optionally with an involution (conjugation). Elements are dense
// indices 0..size-1 encoding little-endian base-p digit vectors, so 0 is the
// zero element and 1 is the unit.
class Structure {
 public:
  enum class Kind : uint8_t { Prime, Ext, Involutive };

  Kind kind = Kind::Prime;
  int p = 0;     // characteristic
  int k = 1;     // degree over the prime field
  int size = 0;  // p^k
  bool has_involution = false;
  std::vector<int> modulus;  // monic modulus over F_p, coefficients low-to-high (k > 1)
  std::string spec;          // canonical spec string, modulus included

  uint16_t add(uint16_t a, uint16_t b) const { return add_t[a * size + b]; }
  uint16_t mul(uint16_t a, uint16_t b) const { return mul_t[a * size + b]; }
  uint16_t neg(uint16_t a) const { return neg_t[a]; }
  uint16_t sub(uint16_t a, uint16_t b) const { return add(a, neg(b)); }
  uint16_t inv(uint16_t a) const;  // throws domain_error on 0
  uint16_t bar(uint16_t a) const;  // throws domain_error without involution
  uint16_t from_int(long long n) const;
  uint16_t from_rat(long long num, long long den) const;
  // Digit i (coefficient of x^i) of an element, as a prime-field element.
  int component(uint16_t a, int i) const;
  uint16_t from_components(const std::vector<int>& digits) const;
  bool is_square(uint16_t a) const;

  std::vector<uint16_t> add_t, mul_t;
  std::vector<uint16_t> neg_t, inv_t, bar_t;
};

// Spec strings: "fq:q", "fq:q:modulus=x^2+1", "inv:q" (q an odd prime; the
// involutive structure is F_{q^2} with the Frobenius x -> x^q, built on the
// modulus x^2 - u0 for the least nonsquare u0). Even characteristic and
// sizes above 256 are rejected.
Structure make_structure(const std::string& spec);
// Same, but admits characteristic 2 (test use only).
Structure make_structure_unchecked(const std::string& spec);

}  // namespace defring::interp
