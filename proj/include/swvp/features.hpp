#pragma once

#include <array>
#include <vector>

#include "swvp/sparse_vector.hpp"

namespace swvp {

using Labeling = std::vector<int>;

// One observed/hidden sequence pair. Observed symbols live in 1..num_obs,
// hidden symbols in 1..num_labels, both sides the same length.
struct SequenceExample {
  std::vector<int> x;
  Labeling y;
};

enum class FeatureTemplate {
  kObs = 0,           // x_i
  kLabel,             // y_i
  kPrevLabel,         // y_{i-1}
  kObsLabel,          // (x_i, y_i)
  kLabelBigram,       // (y_i, y_{i-1})
  kObsLabelBigram,    // (x_i, y_i, y_{i-1})
};

inline constexpr int kNumTemplates = 6;

// Label id 0 is the reserved boundary symbol used as y_0; real labels are
// 1..num_labels. Previous-label slots therefore span num_labels + 1 values.
inline constexpr int kBoundaryLabel = 0;

// Injective closed-form encoding of the six indicator templates over a fixed
// pair of alphabets. Position independent: the same (x_i, y_i, y_{i-1})
// triple maps to the same ids at every chain position.
class FeatureIndex {
 public:
  FeatureIndex(int num_obs, int num_labels);

  int num_obs() const { return num_obs_; }
  int num_labels() const { return num_labels_; }
  int feature_count() const { return total_; }

  // Feature ids for the six indicators firing at one chain position.
  std::array<int, kNumTemplates> position_features(int obs, int label, int prev_label) const;

  int encode_obs(int obs) const;
  int encode_label(int label) const;
  int encode_prev_label(int prev_label) const;
  int encode_obs_label(int obs, int label) const;
  int encode_label_bigram(int label, int prev_label) const;
  int encode_obs_label_bigram(int obs, int label, int prev_label) const;

  struct Decoded {
    FeatureTemplate tmpl;
    int obs = -1;         // -1 where the template has no observation slot
    int label = -1;
    int prev_label = -1;
  };
  Decoded decode(int feature_id) const;

 private:
  void check_obs(int obs) const;
  void check_label(int label) const;
  void check_prev_label(int prev_label) const;

  int num_obs_;
  int num_labels_;
  int prev_values_;  // num_labels_ + 1, boundary included
  std::array<int, kNumTemplates + 1> offsets_{};
  int total_;
};

// Feature counts of a labeled chain: the six indicator templates summed over
// positions i = 1..L with y_0 the boundary symbol. Entries are occurrence
// counts, so the mapping decomposes exactly over positions.
SparseVector phi(const std::vector<int>& x, const Labeling& y, const FeatureIndex& index);

// phi(x, y_gold) - phi(x, z)
SparseVector delta_phi(const std::vector<int>& x, const Labeling& y_gold, const Labeling& z,
                       const FeatureIndex& index);

// Structural validation of one example against the index alphabets.
void validate_example(const SequenceExample& example, const FeatureIndex& index);

}  // namespace swvp
