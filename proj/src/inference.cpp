#include "swvp/inference.hpp"

#include <limits>

namespace swvp {

std::uint64_t LabelSpace::count(std::uint64_t cap) const {
  std::uint64_t n = 1;
  for (int i = 0; i < length; ++i) {
    if (n > cap / static_cast<std::uint64_t>(num_labels)) {
      throw enumeration_cap_error("label space larger than enumeration cap");
    }
    n *= static_cast<std::uint64_t>(num_labels);
  }
  if (n > cap) throw enumeration_cap_error("label space larger than enumeration cap");
  return n;
}

bool LabelSpace::next(Labeling& y) const {
  for (int i = length - 1; i >= 0; --i) {
    if (y[static_cast<std::size_t>(i)] < num_labels) {
      ++y[static_cast<std::size_t>(i)];
      return true;
    }
    y[static_cast<std::size_t>(i)] = 1;
  }
  return false;
}

std::vector<double> densify(const SparseVector& w, const FeatureIndex& index) {
  std::vector<double> dense(static_cast<std::size_t>(index.feature_count()), 0.0);
  for (const auto& [id, value] : w) {
    dense[static_cast<std::size_t>(id)] = value;
  }
  return dense;
}

double position_score(const std::vector<double>& dense_w, const FeatureIndex& index, int obs,
                      int label, int prev_label) {
  double s = 0.0;
  for (int id : index.position_features(obs, label, prev_label)) {
    s += dense_w[static_cast<std::size_t>(id)];
  }
  return s;
}

double chain_score(const std::vector<int>& x, const Labeling& y,
                   const std::vector<double>& dense_w, const FeatureIndex& index) {
  double acc = 0.0;
  for (int i = static_cast<int>(x.size()) - 1; i >= 0; --i) {
    auto ui = static_cast<std::size_t>(i);
    int prev = i > 0 ? y[ui - 1] : kBoundaryLabel;
    acc = position_score(dense_w, index, x[ui], y[ui], prev) + acc;
  }
  return acc;
}

Labeling viterbi_argmax(const std::vector<int>& x, const SparseVector& w,
                        const FeatureIndex& index) {
  if (x.empty()) throw std::invalid_argument("viterbi_argmax: empty sequence");
  const int length = static_cast<int>(x.size());
  const int labels = index.num_labels();
  const std::vector<double> dense = densify(w, index);

  // suffix[p] after processing position i holds the best achievable score of
  // positions i..L-1 given previous label p (p == 0 is the boundary).
  std::vector<double> suffix(static_cast<std::size_t>(labels + 1), 0.0);
  std::vector<double> nextsuf(static_cast<std::size_t>(labels + 1), 0.0);
  // choice[i][p]: smallest label attaining suffix[p] at position i.
  std::vector<std::vector<int>> choice(
      static_cast<std::size_t>(length), std::vector<int>(static_cast<std::size_t>(labels + 1), 1));

  for (int i = length - 1; i >= 0; --i) {
    for (int p = 0; p <= labels; ++p) {
      double best = -std::numeric_limits<double>::infinity();
      int best_label = 1;
      for (int s = 1; s <= labels; ++s) {
        double cand = position_score(dense, index, x[static_cast<std::size_t>(i)], s, p) +
                      suffix[static_cast<std::size_t>(s)];
        if (cand > best) {  // strict: ties keep the smaller label
          best = cand;
          best_label = s;
        }
      }
      nextsuf[static_cast<std::size_t>(p)] = best;
      choice[static_cast<std::size_t>(i)][static_cast<std::size_t>(p)] = best_label;
    }
    suffix.swap(nextsuf);
  }

  Labeling y(static_cast<std::size_t>(length));
  int prev = kBoundaryLabel;
  for (int i = 0; i < length; ++i) {
    prev = choice[static_cast<std::size_t>(i)][static_cast<std::size_t>(prev)];
    y[static_cast<std::size_t>(i)] = prev;
  }
  return y;
}

Labeling enumerate_argmax(const std::vector<int>& x, const SparseVector& w,
                          const FeatureIndex& index, std::uint64_t cap) {
  if (x.empty()) throw std::invalid_argument("enumerate_argmax: empty sequence");
  const LabelSpace space{index.num_labels(), static_cast<int>(x.size())};
  space.count(cap);
  const std::vector<double> dense = densify(w, index);

  Labeling y = space.first();
  Labeling best = y;
  double best_score = chain_score(x, y, dense, index);
  while (space.next(y)) {
    double s = chain_score(x, y, dense, index);
    if (s > best_score) {
      best_score = s;
      best = y;
    }
  }
  return best;
}

}  // namespace swvp
