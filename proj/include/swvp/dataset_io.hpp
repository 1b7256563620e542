#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "swvp/features.hpp"

namespace swvp {

// Dataset file format: one sequence per line,
//   x1 x2 ... xL<TAB>y1 y2 ... yL
// with 1-based integer symbols on both sides.

void write_dataset(std::ostream& out, const std::vector<SequenceExample>& data);
void write_dataset_file(const std::string& path, const std::vector<SequenceExample>& data);

std::vector<SequenceExample> read_dataset(std::istream& in);
std::vector<SequenceExample> read_dataset_file(const std::string& path);

// Smallest alphabet sizes covering every symbol in the data.
struct AlphabetSizes {
  int num_obs = 0;
  int num_labels = 0;
};
AlphabetSizes infer_alphabets(const std::vector<SequenceExample>& data);

}  // namespace swvp
