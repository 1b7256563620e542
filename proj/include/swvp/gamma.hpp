#pragma once

#include <optional>
#include <vector>

#include "swvp/core.hpp"

namespace swvp {

enum class GammaFamily {
  kWeightedMargin,      // gamma proportional to |margin|^beta
  kWeightedMarginRank,  // gamma from a beta-power of the |margin| rank
};

enum class GammaMode {
  kAggressive,  // support restricted to violating assignments
  kBalanced,    // support spans violating and non-violating assignments
};

struct GammaScheme {
  GammaFamily family = GammaFamily::kWeightedMargin;
  GammaMode mode = GammaMode::kAggressive;
  double beta = 1.0;
  // Balanced mode only: drop the largest-margin non-violating members (with
  // renormalization) until the weighted margin is nonpositive. Off by
  // default; aggressive mode satisfies that condition by construction.
  bool enforce_nonpositive_margin = false;
};

// Computes gamma weights over the partition's canonical member order
// (violating first, then non-violating). Members outside the scheme's
// support get weight zero; weights over the support always normalize to 1,
// falling back to the uniform distribution when every raw weight is zero
// (for instance all margins zero under the margin-power family).
//
// Returns nullopt when the support set is empty -- aggressive mode with no
// violating assignment -- which callers resolve by backing off to a
// whole-label update.
std::optional<std::vector<double>> set_gamma(const GammaScheme& scheme,
                                             const ViolationPartition& partition);

}  // namespace swvp
