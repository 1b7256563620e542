#include "swvp/hmm.hpp"

#include <cmath>
#include <stdexcept>

#include "swvp/rng.hpp"

namespace swvp {

SetupSpec standard_setup(int id) {
  switch (id) {
    case 1:
      return {"setup1", 5, 3, {0.7, 0.2, 0.1}, {0.75, 0.1, 0.05, 0.05, 0.05}};
    case 2:
      return {"setup2", 5, 3, {0.5, 0.3, 0.2}, {0.6, 0.15, 0.1, 0.1, 0.05}};
    case 3: {
      std::vector<double> trans(7, 0.0);
      trans[0] = 0.7;
      trans[1] = 0.2;
      trans[2] = 0.1;
      std::vector<double> emis(20, 0.0);
      emis[0] = 0.4;
      emis[1] = 0.2;
      emis[2] = 0.1;
      emis[3] = 0.1;
      emis[4] = 0.1;
      return {"setup3", 20, 7, std::move(trans), std::move(emis)};
    }
    default:
      throw std::invalid_argument("standard_setup: id must be 1, 2 or 3");
  }
}

HmmParams sample_model(const SetupSpec& spec, std::uint64_t seed) {
  if (static_cast<int>(spec.transition_base.size()) != spec.num_labels ||
      static_cast<int>(spec.emission_base.size()) != spec.num_obs) {
    throw std::invalid_argument("sample_model: base vectors must match alphabet sizes");
  }
  Rng rng(seed);
  HmmParams params;
  params.num_obs = spec.num_obs;
  params.num_labels = spec.num_labels;
  params.transition.assign(static_cast<std::size_t>(spec.num_labels), spec.transition_base);
  params.emission.assign(static_cast<std::size_t>(spec.num_labels), spec.emission_base);
  for (auto& row : params.transition) rng.shuffle(row);
  for (auto& row : params.emission) rng.shuffle(row);
  return params;
}

void validate_params(const HmmParams& params) {
  if (params.num_labels < 1 || params.num_obs < 1) {
    throw std::invalid_argument("HmmParams: alphabet sizes must be positive");
  }
  auto check_rows = [](const std::vector<std::vector<double>>& rows, std::size_t width) {
    for (const auto& row : rows) {
      if (row.size() != width) throw std::invalid_argument("HmmParams: row width mismatch");
      double sum = 0.0;
      for (double p : row) {
        if (p < 0.0) throw std::invalid_argument("HmmParams: negative probability");
        sum += p;
      }
      if (std::abs(sum - 1.0) > 1e-12) {
        throw std::invalid_argument("HmmParams: row does not sum to 1");
      }
    }
  };
  if (params.transition.size() != static_cast<std::size_t>(params.num_labels) ||
      params.emission.size() != static_cast<std::size_t>(params.num_labels)) {
    throw std::invalid_argument("HmmParams: wrong number of rows");
  }
  check_rows(params.transition, static_cast<std::size_t>(params.num_labels));
  check_rows(params.emission, static_cast<std::size_t>(params.num_obs));
}

std::vector<SequenceExample> sample_dataset(const HmmParams& params, int k, int length,
                                            std::uint64_t seed) {
  if (k < 1 || length < 1) {
    throw std::invalid_argument("sample_dataset: k and length must be positive");
  }
  validate_params(params);
  Rng rng(seed);
  std::vector<SequenceExample> data;
  data.reserve(static_cast<std::size_t>(k));
  for (int item = 0; item < k; ++item) {
    SequenceExample ex;
    ex.x.resize(static_cast<std::size_t>(length));
    ex.y.resize(static_cast<std::size_t>(length));
    int state = rng.uniform_int(params.num_labels);  // uniform prior
    for (int i = 0; i < length; ++i) {
      ex.y[static_cast<std::size_t>(i)] = state + 1;
      ex.x[static_cast<std::size_t>(i)] =
          rng.categorical(params.emission[static_cast<std::size_t>(state)]) + 1;
      if (i + 1 < length) {
        state = rng.categorical(params.transition[static_cast<std::size_t>(state)]);
      }
    }
    data.push_back(std::move(ex));
  }
  return data;
}

}  // namespace swvp
