#include "defring/structure.hpp"

#include <algorithm>
#include <cstdlib>

#include "defring/errors.hpp"

namespace defring::interp {

uint16_t Structure::inv(uint16_t a) const {
  if (a == 0) throw domain_error("inverse of zero in " + spec);
  return inv_t[a];
}

uint16_t Structure::bar(uint16_t a) const {
  if (!has_involution) throw domain_error("structure " + spec + " has no involution");
  return bar_t[a];
}

uint16_t Structure::from_int(long long n) const {
  long long r = n % p;
  if (r < 0) r += p;
  return static_cast<uint16_t>(r);  // digit-0 embedding of the prime field
}

uint16_t Structure::from_rat(long long num, long long den) const {
  uint16_t d = from_int(den);
  if (d == 0)
    throw domain_error("denominator " + std::to_string(den) + " vanishes in " + spec);
  return mul(from_int(num), inv(d));
}

int Structure::component(uint16_t a, int i) const {
  int v = a;
  for (int j = 0; j < i; ++j) v /= p;
  return v % p;
}

uint16_t Structure::from_components(const std::vector<int>& digits) const {
  long long v = 0;
  for (size_t i = digits.size(); i-- > 0;) {
    int d = digits[i] % p;
    if (d < 0) d += p;
    v = v * p + d;
  }
  if (v >= size) throw config_error("element digits out of range");
  return static_cast<uint16_t>(v);
}

bool Structure::is_square(uint16_t a) const {
  for (int x = 0; x < size; ++x)
    if (mul(static_cast<uint16_t>(x), static_cast<uint16_t>(x)) == a) return true;
  return false;
}

namespace {

using Poly = std::vector<int>;  // over F_p, low-to-high, trimmed

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Poly trim(Poly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b, int p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return trim(r);
}

// Remainder of a by monic b.
Poly poly_mod(Poly a, const Poly& b, int p) {
  a = trim(a);
  size_t db = b.size() - 1;
  while (a.size() > db) {
    int lead = a.back();
    size_t shift = a.size() - 1 - db;
    for (size_t i = 0; i <= db; ++i) {
      int& c = a[shift + i];
      c = ((c - lead * b[i]) % p + p) % p;
    }
    a = trim(a);
    if (a.empty()) break;
  }
  return a;
}

bool divides(const Poly& d, const Poly& f, int p) { return poly_mod(f, d, p).empty(); }

bool irreducible(const Poly& f, int p) {
  size_t deg = f.size() - 1;
  if (deg == 0) return false;
  if (deg == 1) return true;
  // Trial division by all monic polynomials of degree up to deg/2.
  for (size_t d = 1; d <= deg / 2; ++d) {
    long long count = 1;
    for (size_t i = 0; i < d; ++i) count *= p;
    for (long long idx = 0; idx < count; ++idx) {
      Poly cand(d + 1, 0);
      long long v = idx;
      for (size_t i = 0; i < d; ++i) {
        cand[i] = static_cast<int>(v % p);
        v /= p;
      }
      cand[d] = 1;
      if (divides(cand, f, p)) return false;
    }
  }
  return true;
}

std::string format_modulus(const Poly& m) {
  std::string out;
  for (size_t i = m.size(); i-- > 0;) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += '+';
    if (i == 0) {
      out += std::to_string(m[i]);
    } else {
      if (m[i] != 1) out += std::to_string(m[i]) + "*";
      out += i == 1 ? "x" : "x^" + std::to_string(i);
    }
  }
  return out.empty() ? "0" : out;
}

Poly parse_modulus(const std::string& text, int p) {
  Poly m;
  size_t pos = 0;
  auto fail = [&](const std::string& why) {
    throw config_error("bad modulus '" + text + "': " + why);
  };
  while (pos < text.size()) {
    size_t plus = text.find('+', pos);
    std::string piece = text.substr(pos, plus == std::string::npos ? std::string::npos : plus - pos);
    pos = plus == std::string::npos ? text.size() : plus + 1;
    if (piece.empty()) fail("empty summand");
    long long coeff = 1;
    size_t xat = piece.find('x');
    std::string cpart = piece.substr(0, xat == std::string::npos ? std::string::npos : xat);
    if (!cpart.empty() && cpart.back() == '*') cpart.pop_back();
    if (!cpart.empty()) {
      char* end = nullptr;
      coeff = std::strtoll(cpart.c_str(), &end, 10);
      if (end == nullptr || *end != '\0') fail("bad coefficient '" + cpart + "'");
    } else if (xat == std::string::npos) {
      fail("summand without coefficient or x");
    }
    long long deg = 0;
    if (xat != std::string::npos) {
      deg = 1;
      std::string rest = piece.substr(xat + 1);
      if (!rest.empty()) {
        if (rest[0] != '^') fail("expected '^' after x");
        char* end = nullptr;
        deg = std::strtoll(rest.c_str() + 1, &end, 10);
        if (end == nullptr || *end != '\0' || deg < 0) fail("bad exponent");
      }
    }
    if (deg > 16) fail("degree too large");
    if (m.size() <= static_cast<size_t>(deg)) m.resize(deg + 1, 0);
    int c = static_cast<int>(((coeff % p) + p) % p);
    m[deg] = (m[deg] + c) % p;
  }
  m = trim(m);
  if (m.empty()) fail("zero polynomial");
  if (m.back() != 1) fail("modulus must be monic");
  return m;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  for (size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

void build_tables(Structure& st, const Poly& modulus) {
  int p = st.p, k = st.k, size = st.size;
  st.add_t.assign(size * size, 0);
  st.mul_t.assign(size * size, 0);
  st.neg_t.assign(size, 0);
  st.inv_t.assign(size, 0);

  auto digits_of = [&](int a) {
    std::vector<int> d(k);
    for (int i = 0; i < k; ++i) {
      d[i] = a % p;
      a /= p;
    }
    return d;
  };
  auto index_of = [&](const std::vector<int>& d) {
    int v = 0;
    for (int i = k; i-- > 0;) v = v * p + d[i];
    return v;
  };

  // x^k .. x^{2k-2} reduced mod the modulus.
  std::vector<Poly> red(std::max(0, k - 1));
  for (int e = 0; e < k - 1; ++e) {
    Poly xe(k + e + 1, 0);
    xe[k + e] = 1;
    Poly r = poly_mod(xe, modulus, p);
    r.resize(k, 0);
    red[e] = r;
  }

  for (int a = 0; a < size; ++a) {
    auto da = digits_of(a);
    std::vector<int> na(k);
    for (int i = 0; i < k; ++i) na[i] = (p - da[i]) % p;
    st.neg_t[a] = static_cast<uint16_t>(index_of(na));
    for (int b = 0; b < size; ++b) {
      auto db = digits_of(b);
      std::vector<int> sum(k);
      for (int i = 0; i < k; ++i) sum[i] = (da[i] + db[i]) % p;
      st.add_t[a * size + b] = static_cast<uint16_t>(index_of(sum));
      std::vector<int> prod(2 * k - 1, 0);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
      std::vector<int> out(prod.begin(), prod.begin() + k);
      for (int e = 0; e < k - 1; ++e) {
        int c = prod[k + e];
        if (c == 0) continue;
        for (int i = 0; i < k; ++i) out[i] = (out[i] + c * red[e][i]) % p;
      }
      st.mul_t[a * size + b] = static_cast<uint16_t>(index_of(out));
    }
  }
  for (int a = 1; a < size; ++a)
    for (int b = 1; b < size; ++b)
      if (st.mul_t[a * size + b] == 1) {
        st.inv_t[a] = static_cast<uint16_t>(b);
        break;
      }
  for (int a = 1; a < size; ++a)
    if (st.inv_t[a] == 0) throw config_error("structure " + st.spec + " is not a field");
}

uint16_t pow_elem(const Structure& st, uint16_t a, long long e) {
  uint16_t r = 1;
  while (e > 0) {
    if (e & 1) r = st.mul(r, a);
    a = st.mul(a, a);
    e >>= 1;
  }
  return r;
}

Structure make_impl(const std::string& spec, bool allow_even) {
  auto parts = split(spec, ':');
  if (parts.empty()) throw config_error("empty structure spec");
  Structure st;

  if (parts[0] == "fq") {
    if (parts.size() < 2) throw config_error("fq spec needs a size: fq:q");
    int q = std::atoi(parts[1].c_str());
    if (q < 2 || q > 256) throw config_error("structure size must be in [2, 256]");
    int p = 0;
    for (int d = 2; d <= q; ++d)
      if (q % d == 0) {
        p = d;
        break;
      }
    int k = 0, t = q;
    while (t > 1) {
      if (t % p != 0) throw config_error(std::to_string(q) + " is not a prime power");
      t /= p;
      ++k;
    }
    if (p == 2 && !allow_even)
      throw config_error("even characteristic is rejected (q = " + std::to_string(q) + ")");
    st.p = p;
    st.k = k;
    st.size = q;
    std::string modulus_text;
    for (size_t i = 2; i < parts.size(); ++i) {
      auto eq = parts[i].find('=');
      std::string key = parts[i].substr(0, eq);
      if (key == "modulus" && eq != std::string::npos)
        modulus_text = parts[i].substr(eq + 1);
      else
        throw config_error("unknown structure option '" + parts[i] + "'");
    }
    if (k == 1) {
      if (!modulus_text.empty()) throw config_error("prime field takes no modulus");
      st.kind = Structure::Kind::Prime;
      st.spec = "fq:" + std::to_string(q);
      build_tables(st, Poly{0, 1});
      return st;
    }
    st.kind = Structure::Kind::Ext;
    Poly mod;
    if (!modulus_text.empty()) {
      mod = parse_modulus(modulus_text, p);
      if (mod.size() != static_cast<size_t>(k) + 1)
        throw config_error("modulus degree must be " + std::to_string(k));
      if (!irreducible(mod, p)) throw config_error("modulus '" + modulus_text + "' is reducible");
    } else {
      // Deterministic default: the least irreducible monic polynomial in the
      // little-endian digit order of its non-leading coefficients.
      long long count = 1;
      for (int i = 0; i < k; ++i) count *= p;
      for (long long idx = 0; idx < count && mod.empty(); ++idx) {
        Poly cand(k + 1, 0);
        long long v = idx;
        for (int i = 0; i < k; ++i) {
          cand[i] = static_cast<int>(v % p);
          v /= p;
        }
        cand[k] = 1;
        if (irreducible(cand, p)) mod = cand;
      }
      if (mod.empty()) throw config_error("no irreducible modulus found");
    }
    st.modulus = mod;
    st.spec = "fq:" + std::to_string(q) + ":modulus=" + format_modulus(mod);
    build_tables(st, mod);
    return st;
  }

  if (parts[0] == "inv") {
    if (parts.size() != 2) throw config_error("inv spec is inv:q for a prime q");
    int q = std::atoi(parts[1].c_str());
    if (!is_prime(q)) throw config_error("inv:q requires a prime q");
    if (q == 2 && !allow_even) throw config_error("even characteristic is rejected (q = 2)");
    if (q * q > 256) throw config_error("involutive structure size q^2 must be <= 256");
    st.kind = Structure::Kind::Involutive;
    st.p = q;
    st.k = 2;
    st.size = q * q;
    // Least nonsquare u0 in F_q; the modulus is x^2 - u0.
    int u0 = -1;
    for (int c = 2; c < q && u0 < 0; ++c) {
      bool sq = false;
      for (int x = 1; x < q && !sq; ++x) sq = (x * x) % q == c;
      if (!sq) u0 = c;
    }
    if (u0 < 0) throw config_error("no nonsquare in F_" + std::to_string(q));
    Poly mod{(q - u0) % q, 0, 1};
    st.modulus = mod;
    st.spec = "inv:" + std::to_string(q) + ":modulus=" + format_modulus(mod);
    build_tables(st, mod);
    st.has_involution = true;
    st.bar_t.assign(st.size, 0);
    for (int a = 0; a < st.size; ++a)
      st.bar_t[a] = pow_elem(st, static_cast<uint16_t>(a), q);
    return st;
  }

  throw config_error("unknown structure family '" + parts[0] + "'");
}

}  // namespace

Structure make_structure(const std::string& spec) { return make_impl(spec, false); }

Structure make_structure_unchecked(const std::string& spec) { return make_impl(spec, true); }

}  // namespace defring::interp
