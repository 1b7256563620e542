#include "swvp/dataset_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace swvp {

namespace {

std::vector<int> parse_ints(const std::string& field, int line_no) {
  std::istringstream in(field);
  std::vector<int> values;
  int v;
  while (in >> v) values.push_back(v);
  if (!in.eof()) {
    throw std::runtime_error("dataset line " + std::to_string(line_no) + ": non-integer symbol");
  }
  return values;
}

}  // namespace

void write_dataset(std::ostream& out, const std::vector<SequenceExample>& data) {
  for (const SequenceExample& ex : data) {
    for (std::size_t i = 0; i < ex.x.size(); ++i) {
      if (i) out << ' ';
      out << ex.x[i];
    }
    out << '\t';
    for (std::size_t i = 0; i < ex.y.size(); ++i) {
      if (i) out << ' ';
      out << ex.y[i];
    }
    out << '\n';
  }
}

void write_dataset_file(const std::string& path, const std::vector<SequenceExample>& data) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  write_dataset(out, data);
}

std::vector<SequenceExample> read_dataset(std::istream& in) {
  std::vector<SequenceExample> data;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw std::runtime_error("dataset line " + std::to_string(line_no) + ": missing tab");
    }
    SequenceExample ex;
    ex.x = parse_ints(line.substr(0, tab), line_no);
    ex.y = parse_ints(line.substr(tab + 1), line_no);
    if (ex.x.empty() || ex.x.size() != ex.y.size()) {
      throw std::runtime_error("dataset line " + std::to_string(line_no) +
                               ": sides must be nonempty and the same length");
    }
    data.push_back(std::move(ex));
  }
  return data;
}

std::vector<SequenceExample> read_dataset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  return read_dataset(in);
}

AlphabetSizes infer_alphabets(const std::vector<SequenceExample>& data) {
  AlphabetSizes sizes;
  for (const SequenceExample& ex : data) {
    for (int v : ex.x) sizes.num_obs = std::max(sizes.num_obs, v);
    for (int v : ex.y) sizes.num_labels = std::max(sizes.num_labels, v);
  }
  return sizes;
}

}  // namespace swvp
