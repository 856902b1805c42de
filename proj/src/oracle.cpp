#include "defring/oracle.hpp"

namespace defring::oracle {

std::vector<std::vector<uint16_t>> irreducible_factors(const FqField& f,
                                                       std::vector<uint16_t> a) {
  a = p_trim(f, a);
  if (a.empty()) throw domain_error("factoring the zero polynomial");
  a = p_monic(f, a);
  std::vector<std::vector<uint16_t>> out;
  // Peel off the least-degree monic divisor each round; a least-degree proper
  // divisor is necessarily irreducible.
  while (a.size() > 1) {
    bool found = false;
    for (size_t d = 1; d < a.size() && !found; ++d) {
      long long count = 1;
      for (size_t i = 0; i < d; ++i) count *= f.size();
      for (long long idx = 0; idx < count && !found; ++idx) {
        std::vector<uint16_t> cand(d + 1, 0);
        long long v = idx;
        for (size_t i = 0; i < d; ++i) {
          cand[i] = static_cast<uint16_t>(v % f.size());
          v /= f.size();
        }
        cand[d] = 1;
        auto [q, r] = p_divmod(f, a, cand);
        if (r.empty()) {
          out.push_back(cand);
          a = q;
          found = true;
        }
      }
    }
    if (!found) {  // a itself is irreducible
      out.push_back(a);
      break;
    }
  }
  return out;
}

}  // namespace defring::oracle
