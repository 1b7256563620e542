#include "swvp/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "swvp/inference.hpp"

namespace swvp {

namespace {

constexpr double kBoundRelSlack = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Applies fn to every labeling that assigns arbitrary values to the given
// index set and gold values elsewhere -- exactly the mixed assignments this
// substructure can generate, without enumerating the off-set positions.
template <typename Fn>
void for_each_mixed(const Labeling& y_gold, const IndexSet& indices, int num_labels, Fn&& fn) {
  Labeling m = y_gold;
  for (int k : indices) m[static_cast<std::size_t>(k)] = 1;
  while (true) {
    fn(m);
    int pos = static_cast<int>(indices.size()) - 1;
    while (pos >= 0 && m[static_cast<std::size_t>(indices[static_cast<std::size_t>(pos)])] ==
                           num_labels) {
      m[static_cast<std::size_t>(indices[static_cast<std::size_t>(pos)])] = 1;
      --pos;
    }
    if (pos < 0) return;
    ++m[static_cast<std::size_t>(indices[static_cast<std::size_t>(pos)])];
  }
}

void check_enumerable(const std::vector<SequenceExample>& data, const FeatureIndex& index,
                      std::uint64_t cap) {
  for (const SequenceExample& ex : data) {
    LabelSpace{index.num_labels(), static_cast<int>(ex.x.size())}.count(cap);
  }
}

}  // namespace

SeparabilityReport compute_margins(const std::vector<SequenceExample>& data, const SparseVector& u,
                                   const SubstructureSet& substructures, const FeatureIndex& index,
                                   std::uint64_t cap) {
  if (data.empty()) throw std::invalid_argument("compute_margins: empty dataset");
  if (u.empty()) throw std::invalid_argument("compute_margins: witness must be nonzero");
  check_enumerable(data, index, cap);

  SeparabilityReport report;
  report.u = u.normalized();
  report.delta = kInf;
  report.delta_ma = kInf;

  for (const SequenceExample& ex : data) {
    validate_example(ex, index);
    const int length = static_cast<int>(ex.x.size());
    const LabelSpace space{index.num_labels(), length};

    Labeling z = space.first();
    do {
      if (z == ex.y) continue;
      SparseVector diff = delta_phi(ex.x, ex.y, z, index);
      report.delta = std::min(report.delta, report.u.dot(diff));
      report.radius = std::max(report.radius, diff.norm());
    } while (space.next(z));

    for (const IndexSet& indices : substructures.members_for(length)) {
      for_each_mixed(ex.y, indices, index.num_labels(), [&](const Labeling& m) {
        if (m == ex.y) return;
        SparseVector diff = delta_phi(ex.x, ex.y, m, index);
        report.delta_ma = std::min(report.delta_ma, report.u.dot(diff));
        report.radius_ma = std::max(report.radius_ma, diff.norm());
      });
    }
  }

  report.separable = report.delta > 0.0;
  report.csp_bound = report.separable
                         ? (report.radius * report.radius) / (report.delta * report.delta)
                         : kInf;
  report.swvp_bound =
      report.delta_ma > 0.0
          ? (report.radius_ma * report.radius_ma) / (report.delta_ma * report.delta_ma)
          : kInf;
  return report;
}

std::optional<SparseVector> find_separator(const std::vector<SequenceExample>& data,
                                           const FeatureIndex& index, int max_epochs) {
  TrainConfig config;
  config.model = Model::kCsp;
  config.max_epochs = max_epochs;
  TrainResult result = train_csp(data, index, config);
  if (!result.converged || result.weights.empty()) return std::nullopt;
  return result.weights.normalized();
}

bool update_bound_holds(const TrainResult& result, const SeparabilityReport& report) {
  if (!report.separable) {
    throw std::invalid_argument("update_bound_holds: report does not certify separability");
  }
  if (!result.converged) {
    throw std::invalid_argument("update_bound_holds: training run did not converge");
  }
  double bound = result.model == Model::kCsp ? report.csp_bound : report.swvp_bound;
  return static_cast<double>(result.updates) <= bound * (1.0 + kBoundRelSlack);
}

MistakeBoundReport compute_mistake_bound(const std::vector<SequenceExample>& data,
                                         const SparseVector& u, double delta,
                                         const SubstructureSet& substructures,
                                         const FeatureIndex& index, TrainConfig swvp_config,
                                         std::uint64_t cap) {
  if (data.empty()) throw std::invalid_argument("compute_mistake_bound: empty dataset");
  if (delta <= 0.0) throw std::invalid_argument("compute_mistake_bound: delta must be positive");
  if (u.empty()) throw std::invalid_argument("compute_mistake_bound: witness must be nonzero");
  if (index.num_labels() < 2) {
    throw std::invalid_argument("compute_mistake_bound: need at least two labels");
  }
  check_enumerable(data, index, cap);
  const SparseVector unit = u.normalized();

  MistakeBoundReport report;
  report.min_margin_gain = kInf;
  double slack_sq = 0.0;

  for (const SequenceExample& ex : data) {
    validate_example(ex, index);
    const int length = static_cast<int>(ex.x.size());
    const LabelSpace space{index.num_labels(), length};
    const double gold_score = unit.dot(phi(ex.x, ex.y, index));

    double best_rival = -kInf;
    Labeling z = space.first();
    do {
      if (z == ex.y) continue;
      best_rival = std::max(best_rival, unit.dot(phi(ex.x, z, index)));
      SparseVector diff = delta_phi(ex.x, ex.y, z, index);
      report.radius = std::max(report.radius, diff.norm());
    } while (space.next(z));

    double best_rival_ma = -kInf;
    for (const IndexSet& indices : substructures.members_for(length)) {
      for_each_mixed(ex.y, indices, index.num_labels(), [&](const Labeling& m) {
        if (m == ex.y) return;
        best_rival_ma = std::max(best_rival_ma, unit.dot(phi(ex.x, m, index)));
        SparseVector diff = delta_phi(ex.x, ex.y, m, index);
        report.radius_ma = std::max(report.radius_ma, diff.norm());
      });
    }

    double rival_margin = gold_score - best_rival;
    double rival_margin_ma = gold_score - best_rival_ma;
    double slack = std::max(0.0, delta - rival_margin);
    report.rival_margin.push_back(rival_margin);
    report.rival_margin_ma.push_back(rival_margin_ma);
    report.hinge_slack.push_back(slack);
    slack_sq += slack * slack;
    report.min_margin_gain = std::min(report.min_margin_gain, rival_margin_ma - rival_margin);
  }

  report.slack_norm = std::sqrt(slack_sq);
  report.csp_rhs = (report.radius + report.slack_norm) * (report.radius + report.slack_norm) /
                   (delta * delta);
  double denom = delta + report.min_margin_gain;
  report.swvp_rhs = (report.radius_ma + report.slack_norm) *
                    (report.radius_ma + report.slack_norm) / (denom * denom);

  TrainConfig csp_config;
  csp_config.model = Model::kCsp;
  csp_config.max_epochs = 1;
  report.first_pass_mistakes_csp = train_csp(data, index, csp_config).mistakes;

  swvp_config.substructures = substructures;
  swvp_config.max_epochs = 1;
  if (swvp_config.model == Model::kCsp) swvp_config.model = Model::kAggressiveWm;
  report.first_pass_mistakes_swvp = train_swvp(data, index, swvp_config).mistakes;
  return report;
}

}  // namespace swvp
