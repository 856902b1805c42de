#pragma once
#include <memory>

#include "defring/transfer.hpp"

namespace defring::classify {

// A candidate triple of matrices, entries already reduced into the structure.
struct TriplePoint {
  oracle::Mtx<uint16_t> x, y, z;
};

// Constructed sigma sets together with the build context that owns their
// guided-evaluation hints; cached per (triple, glreg).
struct SigmaBundle {
  transfer::SigmaSets sets;
  std::shared_ptr<interp::BuildCtx> ctx;
};

const SigmaBundle& sigma_bundle(const lie::TripleSpec& t, bool glreg);

// Evaluate the partition at one point: returns -1, 0 or +1. Throws
// partition_error unless exactly one of the three sets contains the point.
int classify_point(const interp::Structure& s, const lie::TripleSpec& t,
                   const TriplePoint& p, bool glreg, interp::Strategy strategy,
                   long long budget = -1);

}  // namespace defring::classify
