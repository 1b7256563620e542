#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "swvp/features.hpp"
#include "swvp/hmm.hpp"
#include "swvp/sparse_vector.hpp"
#include "swvp/trainers.hpp"

namespace swvp {

std::vector<double> default_beta_grid();  // 0.5, 1, ..., 5

// Full benchmark protocol: per replica sample a model and a dataset, split
// it, train the chosen variants over the beta grid on the training part,
// select beta on the development part, and score on the test part. The
// whole-label baseline is always trained (no tuning). Scale presets:
//   desk:  5 replicas, 1000/300/200 split      (default)
//   paper: 10 replicas, 7000/2000/1000 split
struct ExperimentConfig {
  int setup_id = 1;
  int replicas = 5;
  int train_n = 1000;
  int dev_n = 300;
  int test_n = 200;
  int sequence_length = 8;
  std::vector<Model> models = {Model::kAggressiveWm, Model::kBalancedWm, Model::kAggressiveWmr,
                               Model::kBalancedWmr};
  std::vector<double> beta_grid = default_beta_grid();
  std::uint64_t seed = 1;
  int epochs = 10;
  bool shuffle = false;
  bool averaging = false;
  bool enforce_nonpositive_margin = false;
  int jobs = 1;  // execution detail; never recorded in reports

  int items_per_dataset() const { return train_n + dev_n + test_n; }
  void apply_scale(const std::string& scale);  // "desk" or "paper"
  void validate() const;
};

// Parses a JSON config file; unknown keys are schema violations. A "scale"
// key applies its preset before the explicit keys override it.
ExperimentConfig load_experiment_config(const std::string& path);

// Fraction of positions whose decoded label matches gold, micro-averaged.
double accuracy(const SparseVector& weights, const std::vector<SequenceExample>& data,
                const FeatureIndex& index);

struct CellResult {
  Model model = Model::kCsp;
  double beta = 0.0;       // unused for the baseline
  double dev_accuracy = 0.0;
  double test_accuracy = 0.0;
  long updates = 0;
  int epochs_run = 0;
  bool converged = false;
  long backoffs = 0;
};

struct VariantResult {
  Model model;
  std::vector<CellResult> cells;  // one per grid beta
  std::size_t selected = 0;       // dev-selected cell (tie: smallest beta)

  const CellResult& chosen() const { return cells[selected]; }
};

struct ReplicaResult {
  std::optional<CellResult> baseline;  // whole-label run, when trained
  std::vector<VariantResult> variants;
  std::size_t best_variant = 0;  // highest dev accuracy among variants
};

struct ModelAggregate {
  Model model;
  double mean_accuracy = 0.0;
  double std_accuracy = 0.0;
  int wins = -1;         // replicas beating the baseline; -1 for the baseline itself
  int generalized = -1;  // replicas where the dev-selected beta carries to test
};

struct ExperimentReport {
  ExperimentConfig config;
  SetupSpec setup;
  std::vector<ReplicaResult> replicas;
  std::vector<ModelAggregate> aggregates;  // config model order, baseline last

  void render_records(std::ostream& out) const;
  void render_table(std::ostream& out) const;
  void write_file(const std::string& path) const;
};

ExperimentReport run_experiment(const ExperimentConfig& config);

// Re-renders the human-readable table from a report file's record lines.
std::string render_table_from_records(std::istream& in);

}  // namespace swvp
