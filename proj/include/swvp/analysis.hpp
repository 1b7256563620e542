#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "swvp/core.hpp"
#include "swvp/features.hpp"
#include "swvp/trainers.hpp"

namespace swvp {

// Margins and radii of a dataset under a candidate separator u, over whole
// rival labelings (delta, radius) and over the mixed assignments generated by
// a substructure set (delta_ma, radius_ma). Everything is computed by
// exhaustive enumeration, so datasets must stay below the enumeration cap.
struct SeparabilityReport {
  SparseVector u;          // the witness, normalized to unit length
  double delta = 0.0;      // min_i min_{z != y_i} u . (phi(y_i) - phi(z))
  double radius = 0.0;     // max_i max_z ||phi(y_i) - phi(z)||
  double delta_ma = 0.0;   // same minimum over mixed assignments distinct from gold
  double radius_ma = 0.0;  // same maximum over mixed assignments
  bool separable = false;  // delta > 0
  double csp_bound = 0.0;  // radius^2 / delta^2 (inf when not separable)
  double swvp_bound = 0.0; // radius_ma^2 / delta_ma^2 (inf when not separable)
};

SeparabilityReport compute_margins(const std::vector<SequenceExample>& data, const SparseVector& u,
                                   const SubstructureSet& substructures, const FeatureIndex& index,
                                   std::uint64_t cap = kDefaultEnumerationCap);

// Separator witness: a generously budgeted whole-label perceptron run. On
// convergence the final weights make no mistakes against any argmax rival,
// and the normalized vector is returned for certification by
// compute_margins. nullopt means possibly non-separable.
std::optional<SparseVector> find_separator(const std::vector<SequenceExample>& data,
                                           const FeatureIndex& index, int max_epochs = 1000);

// updates <= bound, with 1e-9 relative slack on the bound. Uses the
// whole-label bound for kCsp results and the mixed-assignment bound
// otherwise; the report must come from the substructure set the run used.
// Throws unless the report certifies separability and the run converged.
bool update_bound_holds(const TrainResult& result, const SeparabilityReport& report);

// Per-example margin quantities for the first-pass mistake bound under a
// witness (u, delta) pair that need not separate the data.
struct MistakeBoundReport {
  std::vector<double> rival_margin;     // u.phi(gold) - best rival labeling
  std::vector<double> rival_margin_ma;  // same over mixed assignments != gold
  std::vector<double> hinge_slack;      // max(0, delta - rival_margin)
  double slack_norm = 0.0;              // sqrt(sum of squared slacks)
  double min_margin_gain = 0.0;         // min_i (rival_margin_ma - rival_margin)
  double radius = 0.0;
  double radius_ma = 0.0;
  double csp_rhs = 0.0;   // (radius + slack_norm)^2 / delta^2
  double swvp_rhs = 0.0;  // (radius_ma + slack_norm)^2 / (delta + min_margin_gain)^2
  long first_pass_mistakes_csp = 0;
  long first_pass_mistakes_swvp = 0;
};

// swvp_config controls the variant used for the single-epoch mistake count
// (its max_epochs is forced to 1; the whole-label pass always runs with the
// plain perceptron).
MistakeBoundReport compute_mistake_bound(const std::vector<SequenceExample>& data,
                                         const SparseVector& u, double delta,
                                         const SubstructureSet& substructures,
                                         const FeatureIndex& index, TrainConfig swvp_config,
                                         std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace swvp
