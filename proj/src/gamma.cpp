#include "swvp/gamma.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace swvp {

namespace {

// Deterministic rank order for the rank-based family: larger |margin| first,
// ties broken by the smallest substructure index, then by label order.
bool rank_before(const MixedAssignment& a, const MixedAssignment& b) {
  double ma = std::abs(a.margin);
  double mb = std::abs(b.margin);
  if (ma != mb) return ma > mb;
  if (a.indices.front() != b.indices.front()) return a.indices.front() < b.indices.front();
  return a.label < b.label;
}

void normalize_or_uniform(std::vector<double>& weights, const std::vector<std::size_t>& support) {
  double sum = 0.0;
  for (std::size_t i : support) sum += weights[i];
  if (sum > 0.0) {
    for (std::size_t i : support) weights[i] /= sum;
  } else {
    double u = 1.0 / static_cast<double>(support.size());
    for (std::size_t i : support) weights[i] = u;
  }
}

}  // namespace

std::optional<std::vector<double>> set_gamma(const GammaScheme& scheme,
                                             const ViolationPartition& partition) {
  if (scheme.beta <= 0.0) throw std::invalid_argument("set_gamma: beta must be positive");

  const std::size_t n_violating = partition.violating.size();
  const std::size_t total = partition.size();
  std::vector<std::size_t> support;
  support.reserve(total);
  for (std::size_t i = 0; i < (scheme.mode == GammaMode::kAggressive ? n_violating : total); ++i) {
    support.push_back(i);
  }
  if (support.empty()) return std::nullopt;

  std::vector<double> weights(total, 0.0);
  if (scheme.family == GammaFamily::kWeightedMargin) {
    for (std::size_t i : support) {
      weights[i] = std::pow(std::abs(partition.member(i).margin), scheme.beta);
    }
  } else {
    std::vector<std::size_t> order = support;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return rank_before(partition.member(a), partition.member(b));
    });
    const double size = static_cast<double>(support.size());
    for (std::size_t rank = 0; rank < order.size(); ++rank) {
      weights[order[rank]] = std::pow((size - static_cast<double>(rank)) / size, scheme.beta);
    }
  }
  normalize_or_uniform(weights, support);

  if (scheme.mode == GammaMode::kBalanced && scheme.enforce_nonpositive_margin) {
    // Weighted margin as a gamma-weighted sum of member margins. Dropping the
    // most positive supported member strictly decreases it, so this loop
    // terminates once only violating members carry weight.
    auto weighted_margin = [&] {
      double s = 0.0;
      for (std::size_t i : support) s += weights[i] * partition.member(i).margin;
      return s;
    };
    while (weighted_margin() > 0.0) {
      std::size_t worst = total;
      double worst_margin = 0.0;
      for (std::size_t i = n_violating; i < total; ++i) {
        if (weights[i] > 0.0 && (worst == total || partition.member(i).margin > worst_margin)) {
          worst = i;
          worst_margin = partition.member(i).margin;
        }
      }
      if (worst == total) break;  // no weighted non-violating member remains
      weights[worst] = 0.0;
      support.erase(std::remove(support.begin(), support.end(), worst), support.end());
      if (support.empty()) return std::nullopt;
      normalize_or_uniform(weights, support);
    }
  }
  return weights;
}

}  // namespace swvp
