#pragma once
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "defring/eval.hpp"

namespace defring::registry {

// A catalog set plus the build context owning its guided-evaluation hints
// (empty for quantifier-free or hint-less sets).
struct NamedSet {
  lang::VirtualSet set;
  std::shared_ptr<interp::BuildCtx> ctx;
};

// Names: "L:n", "lie:<fam>:<n>", "rss:<fam>:<n>", "orbit:<fam>:<n>",
// "cent:<fam>:<n>", "proj:<n>", and "pm:|plus:|minus:|zero:<triple>" where
// <fam> is gl|so|sp|u and <triple> is e.g. "odd-orth:r=1,a=1,b=0".
// glreg overrides the per-case default for the sigma sets.
NamedSet resolve_set(const std::string& name, std::optional<bool> glreg = std::nullopt);

// The fixed list of sets pinned by the serialization golden files.
std::vector<std::string> catalog_names();

}  // namespace defring::registry
