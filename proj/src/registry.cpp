#include "defring/registry.hpp"

#include "defring/classify.hpp"
#include "defring/errors.hpp"

namespace defring::registry {

using namespace defring::lang;

namespace {

lie::Family parse_family(const std::string& fam, int n) {
  if (fam == "gl") return lie::fam_gl(n);
  if (fam == "so") return lie::fam_so(n);
  if (fam == "sp") return lie::fam_sp(n);
  if (fam == "u") return lie::fam_u(n);
  throw config_error("unknown family '" + fam + "'");
}

int parse_size(const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw config_error("bad size '" + s + "'");
  return std::atoi(s.c_str());
}

// "fam:n" suffix -> family
lie::Family family_of(const std::string& rest) {
  auto colon = rest.find(':');
  if (colon == std::string::npos) throw config_error("expected '<fam>:<n>' in set name");
  return parse_family(rest.substr(0, colon), parse_size(rest.substr(colon + 1)));
}

}  // namespace

NamedSet resolve_set(const std::string& name, std::optional<bool> glreg) {
  auto colon = name.find(':');
  if (colon == std::string::npos) throw config_error("unknown set name '" + name + "'");
  std::string head = name.substr(0, colon);
  std::string rest = name.substr(colon + 1);

  NamedSet out;
  out.ctx = std::make_shared<interp::BuildCtx>();

  if (head == "L") {
    int n = parse_size(rest);
    VirtualSet v;
    std::vector<Formula> eqs;
    for (int i = 1; i <= n; ++i) {
      Var x{"x", {i}};
      v.sig.push_back(x);
      eqs.push_back(f_eq(t_var(x), t_var(x)));
    }
    v.body = f_big_and(eqs);
    out.set = std::move(v);
    return out;
  }
  if (head == "lie") {
    out.set = lie::lie_algebra(family_of(rest));
    return out;
  }
  if (head == "rss") {
    out.set = lie::regular_ss(family_of(rest));
    return out;
  }
  if (head == "orbit") {
    out.set = lie::stable_orbit(family_of(rest));
    return out;
  }
  if (head == "cent") {
    out.set = lie::centralizer(family_of(rest));
    return out;
  }
  if (head == "proj") {
    out.set = lie::proj_set(parse_size(rest));
    return out;
  }
  if (head == "pm" || head == "plus" || head == "minus" || head == "zero") {
    lie::TripleSpec t = lie::parse_triple(rest);
    bool g = glreg.value_or(transfer::default_glreg(t));
    if (head == "pm") {
      VirtualSet pm = transfer::pm_set(t);
      if (g) {
        poly::TermMatrix x = poly::TermMatrix::vars(t.g().n, "x");
        pm.body = f_and(pm.body, lie::regular_cond(lie::fam_gl(t.g().n), x));
      }
      out.set = std::move(pm);
      return out;
    }
    const classify::SigmaBundle& b = classify::sigma_bundle(t, g);
    out.ctx = b.ctx;
    out.set = head == "plus" ? b.sets.plus : head == "minus" ? b.sets.minus : b.sets.zero;
    return out;
  }
  throw config_error("unknown set name '" + name + "'");
}

std::vector<std::string> catalog_names() {
  return {
      "L:2",
      "lie:gl:2",
      "lie:so:2",
      "lie:so:3",
      "lie:sp:2",
      "lie:u:1",
      "lie:u:2",
      "rss:gl:2",
      "rss:so:3",
      "rss:sp:2",
      "rss:u:1",
      "orbit:so:2",
      "orbit:sp:2",
      "cent:gl:2",
      "cent:u:1",
      "proj:2",
      "pm:odd-orth:r=1,a=1,b=0",
      "plus:odd-orth:r=1,a=1,b=0",
      "minus:odd-orth:r=1,a=1,b=0",
      "zero:odd-orth:r=1,a=1,b=0",
      "pm:sympl:r=1,a=1,b=0",
      "plus:sympl:r=1,a=1,b=0",
      "pm:even-orth:r=2,a=2,b=0",
      "plus:even-orth:r=2,a=2,b=0",
      "pm:unitary:n=1,a=1,b=0",
      "plus:unitary:n=1,a=1,b=0",
      "pm:unitary:n=2,a=1,b=1",
      "plus:unitary:n=2,a=1,b=1",
  };
}

}  // namespace defring::registry
