#include "swvp/harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "swvp/inference.hpp"
#include "swvp/rng.hpp"

namespace swvp {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
// Dev-selected beta "carries" to test when its test accuracy is within this
// of the best test accuracy over the grid (0.5 accuracy points).
constexpr double kGeneralizationSlack = 0.005;

std::string fmt_fixed(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
  return buf;
}

std::string fmt_compact(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

std::string fmt_acc(double v) { return std::isnan(v) ? "-" : fmt_fixed(v, 6); }

}  // namespace

std::vector<double> default_beta_grid() {
  std::vector<double> grid;
  for (int i = 1; i <= 10; ++i) grid.push_back(0.5 * i);
  return grid;
}

void ExperimentConfig::apply_scale(const std::string& scale) {
  if (scale == "desk") {
    replicas = 5;
    train_n = 1000;
    dev_n = 300;
    test_n = 200;
    sequence_length = 8;
  } else if (scale == "paper") {
    replicas = 10;
    train_n = 7000;
    dev_n = 2000;
    test_n = 1000;
    sequence_length = 8;
  } else {
    throw std::invalid_argument("scale must be 'desk' or 'paper', got '" + scale + "'");
  }
}

void ExperimentConfig::validate() const {
  if (setup_id < 1 || setup_id > 3) throw std::invalid_argument("config: setup must be 1..3");
  if (replicas < 1) throw std::invalid_argument("config: replicas must be positive");
  if (train_n < 1 || test_n < 1 || dev_n < 0) {
    throw std::invalid_argument("config: split sizes must be positive (dev may be 0)");
  }
  if (!models.empty() && dev_n < 1) {
    throw std::invalid_argument("config: tuned variants need a development split");
  }
  if (sequence_length < 1) throw std::invalid_argument("config: lx must be positive");
  if (epochs < 1) throw std::invalid_argument("config: epochs must be positive");
  if (!models.empty() && beta_grid.empty()) {
    throw std::invalid_argument("config: beta grid must be nonempty");
  }
  for (double beta : beta_grid) {
    if (beta <= 0.0) throw std::invalid_argument("config: beta values must be positive");
  }
  for (Model model : models) {
    if (model == Model::kCsp) {
      throw std::invalid_argument("config: the baseline is implicit; models lists variants");
    }
  }
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error("config: " + std::string(e.what()));
  }
  if (!j.is_object()) throw std::runtime_error("config: top level must be an object");

  static const char* known[] = {"scale",  "setup",   "replicas", "split",
                                "lx",     "models",  "beta_grid", "seed",
                                "epochs", "shuffle", "average",  "enforce_condition2",
                                "jobs"};
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw std::runtime_error("config: unknown key '" + key + "'");
  }

  ExperimentConfig config;
  if (j.contains("scale")) config.apply_scale(j.at("scale").get<std::string>());
  if (j.contains("setup")) config.setup_id = j.at("setup").get<int>();
  if (j.contains("replicas")) config.replicas = j.at("replicas").get<int>();
  if (j.contains("split")) {
    auto split = j.at("split").get<std::vector<int>>();
    if (split.size() != 3) throw std::runtime_error("config: split must be [train, dev, test]");
    config.train_n = split[0];
    config.dev_n = split[1];
    config.test_n = split[2];
  }
  if (j.contains("lx")) config.sequence_length = j.at("lx").get<int>();
  if (j.contains("models")) {
    config.models.clear();
    for (const auto& token : j.at("models")) {
      Model model = parse_model(token.get<std::string>());
      if (model != Model::kCsp) config.models.push_back(model);  // baseline is implicit
    }
  }
  if (j.contains("beta_grid")) config.beta_grid = j.at("beta_grid").get<std::vector<double>>();
  if (j.contains("seed")) config.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("epochs")) config.epochs = j.at("epochs").get<int>();
  if (j.contains("shuffle")) config.shuffle = j.at("shuffle").get<bool>();
  if (j.contains("average")) config.averaging = j.at("average").get<bool>();
  if (j.contains("enforce_condition2")) {
    config.enforce_nonpositive_margin = j.at("enforce_condition2").get<bool>();
  }
  if (j.contains("jobs")) config.jobs = j.at("jobs").get<int>();
  config.validate();
  return config;
}

double accuracy(const SparseVector& weights, const std::vector<SequenceExample>& data,
                const FeatureIndex& index) {
  long correct = 0;
  long total = 0;
  for (const SequenceExample& ex : data) {
    Labeling decoded = viterbi_argmax(ex.x, weights, index);
    for (std::size_t i = 0; i < ex.y.size(); ++i) {
      correct += decoded[i] == ex.y[i] ? 1 : 0;
    }
    total += static_cast<long>(ex.y.size());
  }
  return total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total);
}

namespace {

struct ReplicaData {
  std::vector<SequenceExample> train, dev, test;
};

ReplicaData make_replica_data(const ExperimentConfig& config, const SetupSpec& setup,
                              int replica) {
  HmmParams params = sample_model(setup, derive_seed(config.seed, 11, static_cast<std::uint64_t>(replica)));
  std::vector<SequenceExample> all =
      sample_dataset(params, config.items_per_dataset(), config.sequence_length,
                     derive_seed(config.seed, 13, static_cast<std::uint64_t>(replica)));
  ReplicaData data;
  auto begin = all.begin();
  data.train.assign(begin, begin + config.train_n);
  data.dev.assign(begin + config.train_n, begin + config.train_n + config.dev_n);
  data.test.assign(begin + config.train_n + config.dev_n, all.end());
  return data;
}

CellResult run_cell(const ExperimentConfig& config, const FeatureIndex& index,
                    const ReplicaData& data, int replica, Model model, double beta) {
  TrainConfig train_config;
  train_config.model = model;
  train_config.beta = beta;
  train_config.substructures = SubstructureSet::single();
  train_config.max_epochs = config.epochs;
  train_config.averaging = config.averaging;
  train_config.shuffle = config.shuffle;
  train_config.enforce_nonpositive_margin = config.enforce_nonpositive_margin;
  train_config.seed = derive_seed(config.seed, 17,
                                  (static_cast<std::uint64_t>(replica) << 32) ^
                                      (static_cast<std::uint64_t>(model) << 16) ^
                                      static_cast<std::uint64_t>(beta * 16.0));

  TrainResult result = model == Model::kCsp ? train_csp(data.train, index, train_config)
                                            : train_swvp(data.train, index, train_config);
  const SparseVector& eval_weights =
      config.averaging ? *result.averaged_weights : result.weights;

  CellResult cell;
  cell.model = model;
  cell.beta = model == Model::kCsp ? kNaN : beta;
  cell.dev_accuracy =
      (model == Model::kCsp || data.dev.empty()) ? kNaN : accuracy(eval_weights, data.dev, index);
  cell.test_accuracy = accuracy(eval_weights, data.test, index);
  cell.updates = result.updates;
  cell.epochs_run = result.epochs_run;
  cell.converged = result.converged;
  cell.backoffs = result.backoffs;
  return cell;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& config) {
  config.validate();
  ExperimentReport report;
  report.config = config;
  report.setup = standard_setup(config.setup_id);
  const FeatureIndex index(report.setup.num_obs, report.setup.num_labels);

  std::vector<ReplicaData> data;
  data.reserve(static_cast<std::size_t>(config.replicas));
  for (int r = 0; r < config.replicas; ++r) {
    data.push_back(make_replica_data(config, report.setup, r));
  }

  // One job per (replica, model, beta) cell plus the per-replica baseline;
  // cells are independent, results land in fixed slots, so any worker count
  // produces the same report.
  struct Job {
    int replica;
    int variant;  // -1 for the baseline
    int beta_idx;
  };
  std::vector<Job> jobs;
  for (int r = 0; r < config.replicas; ++r) {
    jobs.push_back({r, -1, 0});
    for (int v = 0; v < static_cast<int>(config.models.size()); ++v) {
      for (int b = 0; b < static_cast<int>(config.beta_grid.size()); ++b) {
        jobs.push_back({r, v, b});
      }
    }
  }
  std::vector<CellResult> cells(jobs.size());
  auto run_job = [&](std::size_t j) {
    const Job& job = jobs[j];
    Model model = job.variant < 0 ? Model::kCsp : config.models[static_cast<std::size_t>(job.variant)];
    double beta = job.variant < 0 ? 1.0 : config.beta_grid[static_cast<std::size_t>(job.beta_idx)];
    cells[j] = run_cell(config, index, data[static_cast<std::size_t>(job.replica)], job.replica,
                        model, beta);
  };

  int workers = std::min<int>(std::max(config.jobs, 1), static_cast<int>(jobs.size()));
  if (workers <= 1) {
    for (std::size_t j = 0; j < jobs.size(); ++j) run_job(j);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) {
      pool.emplace_back([&] {
        for (std::size_t j = next.fetch_add(1); j < jobs.size(); j = next.fetch_add(1)) {
          run_job(j);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  // Reassemble per-replica structures.
  report.replicas.assign(static_cast<std::size_t>(config.replicas), ReplicaResult{});
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    const Job& job = jobs[j];
    ReplicaResult& rep = report.replicas[static_cast<std::size_t>(job.replica)];
    if (job.variant < 0) {
      rep.baseline = cells[j];
    } else {
      if (rep.variants.size() <= static_cast<std::size_t>(job.variant)) {
        rep.variants.resize(config.models.size());
      }
      VariantResult& var = rep.variants[static_cast<std::size_t>(job.variant)];
      var.model = config.models[static_cast<std::size_t>(job.variant)];
      if (var.cells.size() != config.beta_grid.size()) var.cells.resize(config.beta_grid.size());
      var.cells[static_cast<std::size_t>(job.beta_idx)] = cells[j];
    }
  }

  for (ReplicaResult& rep : report.replicas) {
    for (VariantResult& var : rep.variants) {
      std::size_t best = 0;
      for (std::size_t b = 1; b < var.cells.size(); ++b) {
        const CellResult& cand = var.cells[b];
        const CellResult& cur = var.cells[best];
        if (cand.dev_accuracy > cur.dev_accuracy ||
            (cand.dev_accuracy == cur.dev_accuracy && cand.beta < cur.beta)) {
          best = b;
        }
      }
      var.selected = best;
    }
    rep.best_variant = 0;
    for (std::size_t v = 1; v < rep.variants.size(); ++v) {
      if (rep.variants[v].chosen().dev_accuracy >
          rep.variants[rep.best_variant].chosen().dev_accuracy) {
        rep.best_variant = v;
      }
    }
  }

  // Aggregates: variants in config order, baseline last.
  for (std::size_t v = 0; v < config.models.size(); ++v) {
    ModelAggregate agg;
    agg.model = config.models[v];
    agg.wins = 0;
    agg.generalized = 0;
    double sum = 0.0, sum_sq = 0.0;
    for (const ReplicaResult& rep : report.replicas) {
      const VariantResult& var = rep.variants[v];
      double test = var.chosen().test_accuracy;
      sum += test;
      sum_sq += test * test;
      if (rep.baseline && test > rep.baseline->test_accuracy) ++agg.wins;
      std::size_t best_test = 0;
      for (std::size_t b = 1; b < var.cells.size(); ++b) {
        const CellResult& cand = var.cells[b];
        const CellResult& cur = var.cells[best_test];
        if (cand.test_accuracy > cur.test_accuracy ||
            (cand.test_accuracy == cur.test_accuracy && cand.beta < cur.beta)) {
          best_test = b;
        }
      }
      if (best_test == var.selected ||
          test >= var.cells[best_test].test_accuracy - kGeneralizationSlack) {
        ++agg.generalized;
      }
    }
    double n = static_cast<double>(config.replicas);
    agg.mean_accuracy = sum / n;
    agg.std_accuracy = std::sqrt(std::max(0.0, sum_sq / n - agg.mean_accuracy * agg.mean_accuracy));
    report.aggregates.push_back(agg);
  }
  {
    ModelAggregate base;
    base.model = Model::kCsp;
    double sum = 0.0, sum_sq = 0.0;
    for (const ReplicaResult& rep : report.replicas) {
      double test = rep.baseline->test_accuracy;
      sum += test;
      sum_sq += test * test;
    }
    double n = static_cast<double>(config.replicas);
    base.mean_accuracy = sum / n;
    base.std_accuracy = std::sqrt(std::max(0.0, sum_sq / n - base.mean_accuracy * base.mean_accuracy));
    report.aggregates.push_back(base);
  }
  return report;
}

void ExperimentReport::render_records(std::ostream& out) const {
  out << "config setup=" << config.setup_id << " replicas=" << config.replicas
      << " train=" << config.train_n << " dev=" << config.dev_n << " test=" << config.test_n
      << " lx=" << config.sequence_length << " epochs=" << config.epochs
      << " shuffle=" << (config.shuffle ? 1 : 0) << " average=" << (config.averaging ? 1 : 0)
      << " enforce_condition2=" << (config.enforce_nonpositive_margin ? 1 : 0)
      << " seed=" << config.seed << " beta_grid=";
  for (std::size_t b = 0; b < config.beta_grid.size(); ++b) {
    if (b) out << ',';
    out << fmt_compact(config.beta_grid[b]);
  }
  out << " models=";
  for (std::size_t v = 0; v < config.models.size(); ++v) {
    if (v) out << ',';
    out << model_name(config.models[v]);
  }
  out << '\n';

  auto cell_line = [&](int replica, const CellResult& cell) {
    out << "cell replica=" << replica << " model=" << model_name(cell.model)
        << " beta=" << (std::isnan(cell.beta) ? "-" : fmt_compact(cell.beta))
        << " dev_acc=" << fmt_acc(cell.dev_accuracy)
        << " test_acc=" << fmt_acc(cell.test_accuracy) << " updates=" << cell.updates
        << " epochs=" << cell.epochs_run << " converged=" << (cell.converged ? 1 : 0)
        << " backoffs=" << cell.backoffs << '\n';
  };

  for (std::size_t r = 0; r < replicas.size(); ++r) {
    const ReplicaResult& rep = replicas[r];
    if (rep.baseline) cell_line(static_cast<int>(r), *rep.baseline);
    for (const VariantResult& var : rep.variants) {
      for (const CellResult& cell : var.cells) cell_line(static_cast<int>(r), cell);
    }
    for (const VariantResult& var : rep.variants) {
      const CellResult& chosen = var.chosen();
      out << "select replica=" << r << " model=" << model_name(var.model)
          << " beta=" << fmt_compact(chosen.beta) << " dev_acc=" << fmt_acc(chosen.dev_accuracy)
          << " test_acc=" << fmt_acc(chosen.test_accuracy) << '\n';
    }
    if (!rep.variants.empty() && rep.baseline) {
      const VariantResult& best = rep.variants[rep.best_variant];
      const CellResult& chosen = best.chosen();
      out << "replica replica=" << r << " csp_test=" << fmt_acc(rep.baseline->test_accuracy)
          << " best_model=" << model_name(best.model) << " best_beta=" << fmt_compact(chosen.beta)
          << " best_dev=" << fmt_acc(chosen.dev_accuracy)
          << " best_test=" << fmt_acc(chosen.test_accuracy)
          << " win=" << (chosen.test_accuracy > rep.baseline->test_accuracy ? 1 : 0) << '\n';
    }
  }

  for (const ModelAggregate& agg : aggregates) {
    out << "summary model=" << model_name(agg.model)
        << " mean=" << fmt_fixed(agg.mean_accuracy, 6)
        << " std=" << fmt_fixed(agg.std_accuracy, 6);
    if (agg.wins >= 0) {
      out << " wins=" << agg.wins << " gener=" << agg.generalized;
    } else {
      out << " wins=- gener=-";
    }
    out << '\n';
  }
}

namespace {

void render_table_lines(std::ostream& out, const std::vector<ModelAggregate>& aggregates,
                        int replicas) {
  out << "Model   Acc. (std)      # Wins   Gener.\n";
  for (const ModelAggregate& agg : aggregates) {
    char line[128];
    std::string acc = fmt_fixed(agg.mean_accuracy * 100.0, 2) + " (" +
                      fmt_fixed(agg.std_accuracy * 100.0, 2) + ")";
    if (agg.wins >= 0) {
      std::string wins = std::to_string(agg.wins) + "/" + std::to_string(replicas);
      std::string gener = std::to_string(agg.generalized) + "/" + std::to_string(replicas);
      std::snprintf(line, sizeof(line), "%-7s %-15s %-8s %s\n", model_name(agg.model).c_str(),
                    acc.c_str(), wins.c_str(), gener.c_str());
    } else {
      std::snprintf(line, sizeof(line), "%-7s %-15s %-8s %s\n", model_name(agg.model).c_str(),
                    acc.c_str(), "NA", "NA");
    }
    out << line;
  }
}

}  // namespace

void ExperimentReport::render_table(std::ostream& out) const {
  render_table_lines(out, aggregates, config.replicas);
}

void ExperimentReport::write_file(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  render_records(out);
  out << '\n';
  render_table(out);
}

std::string render_table_from_records(std::istream& in) {
  int replicas = 0;
  std::vector<ModelAggregate> aggregates;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string tag;
    fields >> tag;
    if (tag == "config") {
      std::string field;
      while (fields >> field) {
        if (field.rfind("replicas=", 0) == 0) replicas = std::stoi(field.substr(9));
      }
    } else if (tag == "summary") {
      ModelAggregate agg;
      std::string field;
      while (fields >> field) {
        auto eq = field.find('=');
        if (eq == std::string::npos) continue;
        std::string key = field.substr(0, eq);
        std::string value = field.substr(eq + 1);
        if (key == "model") agg.model = parse_model(value);
        else if (key == "mean") agg.mean_accuracy = std::stod(value);
        else if (key == "std") agg.std_accuracy = std::stod(value);
        else if (key == "wins") agg.wins = value == "-" ? -1 : std::stoi(value);
        else if (key == "gener") agg.generalized = value == "-" ? -1 : std::stoi(value);
      }
      aggregates.push_back(agg);
    }
  }
  if (aggregates.empty()) throw std::runtime_error("no summary records found");
  std::ostringstream out;
  render_table_lines(out, aggregates, replicas);
  return out.str();
}

}  // namespace swvp
