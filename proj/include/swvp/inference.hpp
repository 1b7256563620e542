#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "swvp/features.hpp"
#include "swvp/sparse_vector.hpp"

namespace swvp {

inline constexpr std::uint64_t kDefaultEnumerationCap = 100000;

struct enumeration_cap_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The full label space {1..num_labels}^length with deterministic lexicographic
// enumeration (leftmost position most significant, label 1 first).
struct LabelSpace {
  int num_labels;
  int length;

  // Number of labelings; throws enumeration_cap_error above `cap`.
  std::uint64_t count(std::uint64_t cap = kDefaultEnumerationCap) const;

  Labeling first() const { return Labeling(static_cast<std::size_t>(length), 1); }

  // Advances to the lexicographic successor; false once the space is exhausted.
  bool next(Labeling& y) const;
};

// Dense copy of w over the index's feature space, for O(1) scoring lookups.
std::vector<double> densify(const SparseVector& w, const FeatureIndex& index);

// Score contribution of one position: the six indicator weights for
// (obs, label, prev_label), accumulated in fixed template order.
double position_score(const std::vector<double>& dense_w, const FeatureIndex& index, int obs,
                      int label, int prev_label);

// w . phi(x, y), accumulated tail-to-head so that the total matches the
// decoder's suffix recursion bit for bit along any labeling.
double chain_score(const std::vector<int>& x, const Labeling& y,
                   const std::vector<double>& dense_w, const FeatureIndex& index);

// Exact argmax of w . phi(x, .) by dynamic programming over suffix scores,
// O(length * num_labels^2). Among equal-scoring labelings returns the
// lexicographically smallest.
Labeling viterbi_argmax(const std::vector<int>& x, const SparseVector& w,
                        const FeatureIndex& index);

// Test oracle: scores every labeling in lexicographic order and returns the
// first maximizer. Throws enumeration_cap_error if the space exceeds `cap`.
Labeling enumerate_argmax(const std::vector<int>& x, const SparseVector& w,
                          const FeatureIndex& index,
                          std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace swvp
