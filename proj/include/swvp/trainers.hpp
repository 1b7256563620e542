#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "swvp/core.hpp"
#include "swvp/features.hpp"
#include "swvp/gamma.hpp"

namespace swvp {

// Trainable model variants. kCsp updates on the whole predicted label with
// unit weight; the others weight mixed-assignment updates by the named
// gamma scheme (aggressive/balanced x margin/rank families).
enum class Model { kCsp, kAggressiveWm, kBalancedWm, kAggressiveWmr, kBalancedWmr };

// Canonical CLI/config tokens: CSP, A-WM, B-WM, A-WMR, B-WMR.
std::string model_name(Model model);
Model parse_model(const std::string& token);
bool model_is_aggressive(Model model);

// Gamma scheme realizing a model; nullopt for kCsp.
std::optional<GammaScheme> model_scheme(Model model, double beta, bool enforce_nonpositive_margin);

struct TrainConfig {
  Model model = Model::kCsp;
  double beta = 1.0;
  SubstructureSet substructures = SubstructureSet::single();  // forced to full for kCsp
  int max_epochs = 50;
  bool averaging = false;
  bool shuffle = false;  // seeded per-epoch shuffle; fixed dataset order otherwise
  std::uint64_t seed = 1;
  // Debug checks on every update (gamma conditions, Jensen step, violation of
  // the decoded label). Doubles per-update cost; off for timed runs.
  bool validate_updates = false;
  bool enforce_nonpositive_margin = false;
};

struct UpdateRecord {
  int example = 0;
  int epoch = 0;
  int num_violating = 0;
  int num_non_violating = 0;
  double gamma_entropy = 0.0;
  bool backed_off = false;
};

struct TrainResult {
  SparseVector weights;
  std::optional<SparseVector> averaged_weights;  // present iff averaging was on
  long updates = 0;      // parameter-vector changes
  long mistakes = 0;     // visits with a wrong decode (updates <= mistakes)
  long backoffs = 0;     // whole-label fallback updates (no usable gamma)
  int epochs_run = 0;
  bool converged = false;  // an entire epoch passed with zero updates
  Model model = Model::kCsp;
  SubstructureSet::Policy policy = SubstructureSet::Policy::kFull;
  std::vector<UpdateRecord> update_log;

  // Populated when validate_updates is set.
  long checked_updates = 0;
  long condition1_failures = 0;
  long condition2_failures = 0;       // aggressive updates only
  long jensen_failures = 0;           // ||sum g*d||^2 > sum g*||d||^2 beyond tolerance
  long decode_violation_failures = 0; // decoded label not a violation despite mistake
  double worst_weighted_margin = 0.0;
  double worst_jensen_excess = 0.0;   // max relative excess observed
};

// Whole-label perceptron: decode, and on a wrong prediction add the count
// difference against the decoded label. Stops on a zero-update epoch or
// after max_epochs.
TrainResult train_csp(const std::vector<SequenceExample>& data, const FeatureIndex& index,
                      const TrainConfig& config);

// Weighted-violations perceptron: decode, and on a wrong prediction add the
// gamma-weighted sum of count differences over the mixed assignments of the
// configured substructure set. When no gamma is available (aggressive mode
// with no violating assignment) the update backs off to the whole predicted
// label. With model == kCsp this reproduces train_csp exactly, update for
// update.
TrainResult train_swvp(const std::vector<SequenceExample>& data, const FeatureIndex& index,
                       const TrainConfig& config);

}  // namespace swvp
