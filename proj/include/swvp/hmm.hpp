#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "swvp/features.hpp"

namespace swvp {

// First-order HMM with a uniform prior over initial hidden states.
// transition[y][y'] = P(y'|y), emission[y][x] = P(x|y); rows are stochastic
// permutations of a setup's base vector.
struct HmmParams {
  int num_obs = 0;
  int num_labels = 0;
  std::vector<std::vector<double>> transition;  // num_labels x num_labels
  std::vector<std::vector<double>> emission;    // num_labels x num_obs
};

// Benchmark setup: alphabets plus the base transition/emission rows whose
// random permutations populate a sampled model.
struct SetupSpec {
  std::string name;
  int num_obs = 0;
  int num_labels = 0;
  std::vector<double> transition_base;
  std::vector<double> emission_base;
};

// The three standard setups:
//   1: num_obs=5,  num_labels=3, trans (0.7,0.2,0.1),        emis (0.75,0.1,0.05,0.05,0.05)
//   2: num_obs=5,  num_labels=3, trans (0.5,0.3,0.2),        emis (0.6,0.15,0.1,0.1,0.05)
//   3: num_obs=20, num_labels=7, trans (0.7,0.2,0.1,0,...),  emis (0.4,0.2,0.1,0.1,0.1,0,...)
SetupSpec standard_setup(int id);

// Each transition row and each emission row is an independently drawn
// uniform-random permutation of the setup's base vector.
HmmParams sample_model(const SetupSpec& spec, std::uint64_t seed);

// Samples k sequences of the given length: hidden start from the uniform
// prior, then alternately an observed symbol from the emission row and the
// next hidden symbol from the transition row.
std::vector<SequenceExample> sample_dataset(const HmmParams& params, int k, int length,
                                            std::uint64_t seed);

// Structural validation (row stochasticity within 1e-12, alphabet shapes).
void validate_params(const HmmParams& params);

}  // namespace swvp
