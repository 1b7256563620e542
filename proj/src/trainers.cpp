#include "swvp/trainers.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "swvp/inference.hpp"
#include "swvp/rng.hpp"

namespace swvp {

std::string model_name(Model model) {
  switch (model) {
    case Model::kCsp: return "CSP";
    case Model::kAggressiveWm: return "A-WM";
    case Model::kBalancedWm: return "B-WM";
    case Model::kAggressiveWmr: return "A-WMR";
    case Model::kBalancedWmr: return "B-WMR";
  }
  throw std::logic_error("model_name: unknown model");
}

Model parse_model(const std::string& token) {
  if (token == "CSP") return Model::kCsp;
  if (token == "A-WM") return Model::kAggressiveWm;
  if (token == "B-WM") return Model::kBalancedWm;
  if (token == "A-WMR") return Model::kAggressiveWmr;
  if (token == "B-WMR") return Model::kBalancedWmr;
  throw std::invalid_argument("unknown model token: " + token);
}

bool model_is_aggressive(Model model) {
  return model == Model::kAggressiveWm || model == Model::kAggressiveWmr;
}

std::optional<GammaScheme> model_scheme(Model model, double beta,
                                        bool enforce_nonpositive_margin) {
  GammaScheme scheme;
  scheme.beta = beta;
  scheme.enforce_nonpositive_margin = enforce_nonpositive_margin;
  switch (model) {
    case Model::kCsp: return std::nullopt;
    case Model::kAggressiveWm:
      scheme.family = GammaFamily::kWeightedMargin;
      scheme.mode = GammaMode::kAggressive;
      return scheme;
    case Model::kBalancedWm:
      scheme.family = GammaFamily::kWeightedMargin;
      scheme.mode = GammaMode::kBalanced;
      return scheme;
    case Model::kAggressiveWmr:
      scheme.family = GammaFamily::kWeightedMarginRank;
      scheme.mode = GammaMode::kAggressive;
      return scheme;
    case Model::kBalancedWmr:
      scheme.family = GammaFamily::kWeightedMarginRank;
      scheme.mode = GammaMode::kBalanced;
      return scheme;
  }
  throw std::logic_error("model_scheme: unknown model");
}

namespace {

constexpr double kJensenRelTol = 1e-9;
constexpr double kDecodeViolationTol = 1e-9;

double entropy(const std::vector<double>& gamma) {
  double h = 0.0;
  for (double g : gamma) {
    if (g > 0.0) h -= g * std::log(g);
  }
  return h;
}

// Lazy accumulator for the mean of the weight vectors in effect as each
// example is visited (the hypothesis sequence of the voted perceptron, with
// the initial zero vector as the first hypothesis). A single update u during
// visit 1 of 4 yields (0 + u + u + u) / 4.
class Averager {
 public:
  void record_update(long visit, const SparseVector& applied_delta) {
    weighted_updates_.add_scaled(applied_delta, static_cast<double>(visit));
  }

  SparseVector mean(const SparseVector& final_weights, long total_visits) const {
    SparseVector avg = final_weights;
    if (total_visits > 0) {
      avg.add_scaled(weighted_updates_, -1.0 / static_cast<double>(total_visits));
    }
    return avg;
  }

 private:
  SparseVector weighted_updates_;
};

void validate_data(const std::vector<SequenceExample>& data, const FeatureIndex& index) {
  if (data.empty()) throw std::invalid_argument("train: empty dataset");
  for (const SequenceExample& ex : data) validate_example(ex, index);
}

std::vector<std::size_t> visit_order(std::size_t n, const TrainConfig& config, int epoch) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (config.shuffle) {
    Rng rng(derive_seed(config.seed, 0x5u, static_cast<std::uint64_t>(epoch)));
    rng.shuffle(order);
  }
  return order;
}

void run_update_checks(TrainResult& result, const std::vector<double>& gamma,
                       const ViolationPartition& partition, const SparseVector& w,
                       const SequenceExample& ex, const FeatureIndex& index, bool aggressive,
                       const SparseVector& applied) {
  ++result.checked_updates;
  GammaConditions cond = check_gamma_conditions(gamma, partition, w, ex.x, ex.y, index);
  if (!cond.sums_to_one) ++result.condition1_failures;
  if (aggressive) {
    if (!cond.nonpositive_margin) ++result.condition2_failures;
    result.worst_weighted_margin = std::max(result.worst_weighted_margin, cond.weighted_margin);
  }
  double lhs = applied.squared_norm();
  double rhs = 0.0;
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    rhs += gamma[i] * partition.member(i).delta.squared_norm();
  }
  if (lhs > rhs * (1.0 + kJensenRelTol)) ++result.jensen_failures;
  if (rhs > 0.0) {
    result.worst_jensen_excess = std::max(result.worst_jensen_excess, (lhs - rhs) / rhs);
  }
}

}  // namespace

TrainResult train_csp(const std::vector<SequenceExample>& data, const FeatureIndex& index,
                      const TrainConfig& config) {
  validate_data(data, index);
  TrainResult result;
  result.model = Model::kCsp;
  result.policy = SubstructureSet::Policy::kFull;
  Averager averager;
  long visits = 0;

  for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
    long updates_this_epoch = 0;
    for (std::size_t i : visit_order(data.size(), config, epoch)) {
      const SequenceExample& ex = data[i];
      ++visits;
      Labeling y_star = viterbi_argmax(ex.x, result.weights, index);
      if (y_star == ex.y) continue;
      ++result.mistakes;
      SparseVector delta = delta_phi(ex.x, ex.y, y_star, index);
      if (delta.empty()) continue;  // identical feature counts; no parameter change
      result.weights.add_scaled(delta, 1.0);
      if (config.averaging) averager.record_update(visits, delta);
      ++result.updates;
      ++updates_this_epoch;
      result.update_log.push_back(
          {static_cast<int>(i), epoch, 1, 0, /*gamma_entropy=*/0.0, /*backed_off=*/false});
    }
    result.epochs_run = epoch;
    if (updates_this_epoch == 0) {
      result.converged = true;
      break;
    }
  }
  if (config.averaging) result.averaged_weights = averager.mean(result.weights, visits);
  return result;
}

TrainResult train_swvp(const std::vector<SequenceExample>& data, const FeatureIndex& index,
                       const TrainConfig& config) {
  validate_data(data, index);
  const bool is_csp = config.model == Model::kCsp;
  const SubstructureSet substructures =
      is_csp ? SubstructureSet::full() : config.substructures;
  const std::optional<GammaScheme> scheme =
      model_scheme(config.model, config.beta, config.enforce_nonpositive_margin);

  TrainResult result;
  result.model = config.model;
  result.policy = substructures.policy();
  Averager averager;
  long visits = 0;

  for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
    long updates_this_epoch = 0;
    for (std::size_t i : visit_order(data.size(), config, epoch)) {
      const SequenceExample& ex = data[i];
      ++visits;
      Labeling y_star = viterbi_argmax(ex.x, result.weights, index);
      if (y_star == ex.y) continue;
      ++result.mistakes;

      SparseVector applied;
      UpdateRecord record{static_cast<int>(i), epoch, 0, 0, 0.0, false};

      if (is_csp) {
        // Single whole-label assignment with unit weight.
        applied = delta_phi(ex.x, ex.y, y_star, index);
        record.num_violating = 1;
      } else {
        ViolationPartition partition = partition_violations(
            ex.x, ex.y, y_star, substructures.members_for(static_cast<int>(ex.x.size())),
            result.weights, index);
        record.num_violating = static_cast<int>(partition.violating.size());
        record.num_non_violating = static_cast<int>(partition.non_violating.size());
        std::optional<std::vector<double>> gamma = set_gamma(*scheme, partition);
        if (!gamma) {
          // Dynamic back-off: no usable gamma, update on the whole label.
          applied = delta_phi(ex.x, ex.y, y_star, index);
          record.backed_off = true;
          ++result.backoffs;
        } else {
          for (std::size_t j = 0; j < gamma->size(); ++j) {
            if ((*gamma)[j] != 0.0) applied.add_scaled(partition.member(j).delta, (*gamma)[j]);
          }
          record.gamma_entropy = entropy(*gamma);
          if (config.validate_updates) {
            run_update_checks(result, *gamma, partition, result.weights, ex, index,
                              model_is_aggressive(config.model), applied);
          }
        }
      }

      if (config.validate_updates) {
        // The decoded label out-scores gold, so its margin cannot be positive.
        double decode_margin = result.weights.dot(delta_phi(ex.x, ex.y, y_star, index));
        if (decode_margin > kDecodeViolationTol) ++result.decode_violation_failures;
      }

      if (applied.empty()) continue;
      result.weights.add_scaled(applied, 1.0);
      if (config.averaging) averager.record_update(visits, applied);
      ++result.updates;
      ++updates_this_epoch;
      result.update_log.push_back(record);
    }
    result.epochs_run = epoch;
    if (updates_this_epoch == 0) {
      result.converged = true;
      break;
    }
  }
  if (config.averaging) result.averaged_weights = averager.mean(result.weights, visits);
  return result;
}

}  // namespace swvp
