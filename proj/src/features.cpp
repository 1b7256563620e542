#include "swvp/features.hpp"

#include <stdexcept>
#include <string>

namespace swvp {

FeatureIndex::FeatureIndex(int num_obs, int num_labels)
    : num_obs_(num_obs), num_labels_(num_labels), prev_values_(num_labels + 1) {
  if (num_obs < 1 || num_labels < 1) {
    throw std::invalid_argument("FeatureIndex: alphabet sizes must be positive");
  }
  offsets_[0] = 0;
  offsets_[1] = offsets_[0] + num_obs_;                              // kObs
  offsets_[2] = offsets_[1] + num_labels_;                           // kLabel
  offsets_[3] = offsets_[2] + prev_values_;                          // kPrevLabel
  offsets_[4] = offsets_[3] + num_obs_ * num_labels_;                // kObsLabel
  offsets_[5] = offsets_[4] + num_labels_ * prev_values_;            // kLabelBigram
  offsets_[6] = offsets_[5] + num_obs_ * num_labels_ * prev_values_; // end
  total_ = offsets_[6];
}

void FeatureIndex::check_obs(int obs) const {
  if (obs < 1 || obs > num_obs_) {
    throw std::out_of_range("FeatureIndex: observed symbol " + std::to_string(obs) +
                            " outside 1.." + std::to_string(num_obs_));
  }
}

void FeatureIndex::check_label(int label) const {
  if (label < 1 || label > num_labels_) {
    throw std::out_of_range("FeatureIndex: label " + std::to_string(label) + " outside 1.." +
                            std::to_string(num_labels_));
  }
}

void FeatureIndex::check_prev_label(int prev_label) const {
  if (prev_label < 0 || prev_label > num_labels_) {
    throw std::out_of_range("FeatureIndex: previous label " + std::to_string(prev_label) +
                            " outside 0.." + std::to_string(num_labels_));
  }
}

int FeatureIndex::encode_obs(int obs) const {
  check_obs(obs);
  return offsets_[0] + (obs - 1);
}

int FeatureIndex::encode_label(int label) const {
  check_label(label);
  return offsets_[1] + (label - 1);
}

int FeatureIndex::encode_prev_label(int prev_label) const {
  check_prev_label(prev_label);
  return offsets_[2] + prev_label;
}

int FeatureIndex::encode_obs_label(int obs, int label) const {
  check_obs(obs);
  check_label(label);
  return offsets_[3] + (obs - 1) * num_labels_ + (label - 1);
}

int FeatureIndex::encode_label_bigram(int label, int prev_label) const {
  check_label(label);
  check_prev_label(prev_label);
  return offsets_[4] + (label - 1) * prev_values_ + prev_label;
}

int FeatureIndex::encode_obs_label_bigram(int obs, int label, int prev_label) const {
  check_obs(obs);
  check_label(label);
  check_prev_label(prev_label);
  return offsets_[5] + ((obs - 1) * num_labels_ + (label - 1)) * prev_values_ + prev_label;
}

std::array<int, kNumTemplates> FeatureIndex::position_features(int obs, int label,
                                                               int prev_label) const {
  return {encode_obs(obs),
          encode_label(label),
          encode_prev_label(prev_label),
          encode_obs_label(obs, label),
          encode_label_bigram(label, prev_label),
          encode_obs_label_bigram(obs, label, prev_label)};
}

FeatureIndex::Decoded FeatureIndex::decode(int feature_id) const {
  if (feature_id < 0 || feature_id >= total_) {
    throw std::out_of_range("FeatureIndex: feature id out of range");
  }
  Decoded d;
  if (feature_id < offsets_[1]) {
    d.tmpl = FeatureTemplate::kObs;
    d.obs = feature_id - offsets_[0] + 1;
  } else if (feature_id < offsets_[2]) {
    d.tmpl = FeatureTemplate::kLabel;
    d.label = feature_id - offsets_[1] + 1;
  } else if (feature_id < offsets_[3]) {
    d.tmpl = FeatureTemplate::kPrevLabel;
    d.prev_label = feature_id - offsets_[2];
  } else if (feature_id < offsets_[4]) {
    int r = feature_id - offsets_[3];
    d.tmpl = FeatureTemplate::kObsLabel;
    d.obs = r / num_labels_ + 1;
    d.label = r % num_labels_ + 1;
  } else if (feature_id < offsets_[5]) {
    int r = feature_id - offsets_[4];
    d.tmpl = FeatureTemplate::kLabelBigram;
    d.label = r / prev_values_ + 1;
    d.prev_label = r % prev_values_;
  } else {
    int r = feature_id - offsets_[5];
    d.tmpl = FeatureTemplate::kObsLabelBigram;
    d.prev_label = r % prev_values_;
    int q = r / prev_values_;
    d.obs = q / num_labels_ + 1;
    d.label = q % num_labels_ + 1;
  }
  return d;
}

SparseVector phi(const std::vector<int>& x, const Labeling& y, const FeatureIndex& index) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("phi: observation/label length mismatch");
  }
  if (x.empty()) {
    throw std::invalid_argument("phi: empty sequence");
  }
  SparseVector out;
  int prev = kBoundaryLabel;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (int id : index.position_features(x[i], y[i], prev)) {
      out.add(id, 1.0);
    }
    prev = y[i];
  }
  return out;
}

SparseVector delta_phi(const std::vector<int>& x, const Labeling& y_gold, const Labeling& z,
                       const FeatureIndex& index) {
  if (y_gold.size() != z.size()) {
    throw std::invalid_argument("delta_phi: labeling length mismatch");
  }
  SparseVector out = phi(x, y_gold, index);
  out.add_scaled(phi(x, z, index), -1.0);
  return out;
}

void validate_example(const SequenceExample& example, const FeatureIndex& index) {
  if (example.x.empty() || example.x.size() != example.y.size()) {
    throw std::invalid_argument("SequenceExample: lengths must match and be positive");
  }
  for (int obs : example.x) {
    if (obs < 1 || obs > index.num_obs()) {
      throw std::out_of_range("SequenceExample: observed symbol outside alphabet");
    }
  }
  for (int label : example.y) {
    if (label < 1 || label > index.num_labels()) {
      throw std::out_of_range("SequenceExample: label outside alphabet");
    }
  }
}

}  // namespace swvp
