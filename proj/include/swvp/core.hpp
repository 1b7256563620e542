#pragma once

#include <functional>
#include <string>
#include <vector>

#include "swvp/features.hpp"
#include "swvp/inference.hpp"
#include "swvp/sparse_vector.hpp"

namespace swvp {

// Positions are 0-based here; an index set is a sorted subset of 0..length-1.
using IndexSet = std::vector<int>;

// Which substructures of a length-L chain participate in the update.
//   kFull:   the single set {0..L-1}; mixed assignments are whole labelings.
//   kSingle: all singletons {0},...,{L-1}; single-difference mixed assignments.
// Custom generators are admitted for experimentation.
class SubstructureSet {
 public:
  enum class Policy { kFull, kSingle, kCustom };

  static SubstructureSet full();
  static SubstructureSet single();
  static SubstructureSet custom(std::string name,
                                std::function<std::vector<IndexSet>(int)> generator);

  Policy policy() const { return policy_; }
  const std::string& name() const { return name_; }
  std::vector<IndexSet> members_for(int length) const;

 private:
  SubstructureSet(Policy policy, std::string name,
                  std::function<std::vector<IndexSet>(int)> generator)
      : policy_(policy), name_(std::move(name)), generator_(std::move(generator)) {}

  Policy policy_;
  std::string name_;
  std::function<std::vector<IndexSet>(int)> generator_;
};

// Labeling equal to y_star on the index set and to y_gold elsewhere.
Labeling mixed_assignment(const Labeling& y_star, const Labeling& y_gold, const IndexSet& indices);

// One mixed assignment with its score difference against gold under the
// current weights. margin = w . (phi(x, y_gold) - phi(x, label));
// violating means the model scores the assignment at least as high as gold.
struct MixedAssignment {
  IndexSet indices;
  Labeling label;
  SparseVector delta;  // phi(x, y_gold) - phi(x, label)
  double margin = 0.0;
  bool violating = false;
};

// Mixed assignments distinct from gold, split by violation status.
struct ViolationPartition {
  std::vector<MixedAssignment> violating;      // margin <= 0
  std::vector<MixedAssignment> non_violating;  // margin > 0

  std::size_t size() const { return violating.size() + non_violating.size(); }

  // Members in canonical order: violating first, then non-violating. Gamma
  // weight vectors are aligned with this order.
  const MixedAssignment& member(std::size_t i) const {
    return i < violating.size() ? violating[i] : non_violating[i - violating.size()];
  }
};

// Builds the mixed assignment of every substructure, drops the ones equal to
// gold, and classifies the rest by the sign of their margin (exact <= 0).
ViolationPartition partition_violations(const std::vector<int>& x, const Labeling& y_gold,
                                        const Labeling& y_star,
                                        const std::vector<IndexSet>& substructures,
                                        const SparseVector& w, const FeatureIndex& index);

inline constexpr double kGammaSumTol = 1e-9;
inline constexpr double kWeightedMarginTol = 1e-12;

struct GammaConditions {
  bool sums_to_one = false;        // sum gamma == 1 (tol 1e-9) and gamma >= 0
  bool nonpositive_margin = false; // w . sum gamma*delta <= 0 (tol 1e-12)
  double weight_sum = 0.0;
  double weighted_margin = 0.0;
};

// Evaluates both gamma selection conditions for a weight vector aligned with
// the partition's canonical member order. The weighted margin is recomputed
// from scratch -- count differences rebuilt from (x, y_gold, member label),
// weighted sum assembled, one dot with w -- independently of the margins
// cached in the partition. Throws if gamma does not cover every member.
GammaConditions check_gamma_conditions(const std::vector<double>& gamma,
                                       const ViolationPartition& partition, const SparseVector& w,
                                       const std::vector<int>& x, const Labeling& y_gold,
                                       const FeatureIndex& index);

}  // namespace swvp
