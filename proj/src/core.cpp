#include "swvp/core.hpp"

#include <cmath>
#include <stdexcept>

namespace swvp {

SubstructureSet SubstructureSet::full() {
  return SubstructureSet(Policy::kFull, "full", [](int length) {
    IndexSet all(static_cast<std::size_t>(length));
    for (int i = 0; i < length; ++i) all[static_cast<std::size_t>(i)] = i;
    return std::vector<IndexSet>{all};
  });
}

SubstructureSet SubstructureSet::single() {
  return SubstructureSet(Policy::kSingle, "single", [](int length) {
    std::vector<IndexSet> sets;
    sets.reserve(static_cast<std::size_t>(length));
    for (int i = 0; i < length; ++i) sets.push_back({i});
    return sets;
  });
}

SubstructureSet SubstructureSet::custom(std::string name,
                                        std::function<std::vector<IndexSet>(int)> generator) {
  return SubstructureSet(Policy::kCustom, std::move(name), std::move(generator));
}

std::vector<IndexSet> SubstructureSet::members_for(int length) const {
  if (length < 1) throw std::invalid_argument("SubstructureSet: length must be positive");
  return generator_(length);
}

Labeling mixed_assignment(const Labeling& y_star, const Labeling& y_gold,
                          const IndexSet& indices) {
  if (y_star.size() != y_gold.size()) {
    throw std::invalid_argument("mixed_assignment: labeling length mismatch");
  }
  if (indices.empty()) {
    throw std::invalid_argument("mixed_assignment: empty index set");
  }
  Labeling m = y_gold;
  for (int k : indices) {
    if (k < 0 || k >= static_cast<int>(m.size())) {
      throw std::out_of_range("mixed_assignment: index outside the chain");
    }
    m[static_cast<std::size_t>(k)] = y_star[static_cast<std::size_t>(k)];
  }
  return m;
}

ViolationPartition partition_violations(const std::vector<int>& x, const Labeling& y_gold,
                                        const Labeling& y_star,
                                        const std::vector<IndexSet>& substructures,
                                        const SparseVector& w, const FeatureIndex& index) {
  if (y_star == y_gold) {
    throw std::invalid_argument("partition_violations: prediction equals gold");
  }
  ViolationPartition part;
  for (const IndexSet& indices : substructures) {
    Labeling m = mixed_assignment(y_star, y_gold, indices);
    if (m == y_gold) continue;  // both sets are defined over assignments distinct from gold
    MixedAssignment ma;
    ma.indices = indices;
    ma.delta = delta_phi(x, y_gold, m, index);
    ma.margin = w.dot(ma.delta);
    ma.label = std::move(m);
    ma.violating = ma.margin <= 0.0;  // exact comparison: zero margins violate
    if (ma.violating) {
      part.violating.push_back(std::move(ma));
    } else {
      part.non_violating.push_back(std::move(ma));
    }
  }
  return part;
}

GammaConditions check_gamma_conditions(const std::vector<double>& gamma,
                                       const ViolationPartition& partition, const SparseVector& w,
                                       const std::vector<int>& x, const Labeling& y_gold,
                                       const FeatureIndex& index) {
  if (gamma.size() != partition.size()) {
    throw std::invalid_argument("check_gamma_conditions: gamma must cover every member");
  }
  GammaConditions out;
  bool nonnegative = true;
  double sum = 0.0;
  for (double g : gamma) {
    if (g < 0.0) nonnegative = false;
    sum += g;
  }
  out.weight_sum = sum;
  out.sums_to_one = nonnegative && std::abs(sum - 1.0) <= kGammaSumTol;

  SparseVector weighted;
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    if (gamma[i] == 0.0) continue;
    weighted.add_scaled(delta_phi(x, y_gold, partition.member(i).label, index), gamma[i]);
  }
  out.weighted_margin = w.dot(weighted);
  out.nonpositive_margin = out.weighted_margin <= kWeightedMarginTol;
  return out;
}

}  // namespace swvp
