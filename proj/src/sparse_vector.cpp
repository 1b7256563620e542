#include "swvp/sparse_vector.hpp"

#include <cmath>

namespace swvp {

SparseVector& SparseVector::add_scaled(const SparseVector& other, double c) {
  if (c == 0.0) return *this;
  for (const auto& [id, value] : other.entries_) {
    add(id, c * value);
  }
  return *this;
}

void SparseVector::scale(double c) {
  if (c == 0.0) {
    entries_.clear();
    return;
  }
  for (auto it = entries_.begin(); it != entries_.end();) {
    it->second *= c;
    if (it->second == 0.0) {
      it = entries_.erase(it);
    } else {
      ++it;
    }
  }
}

double SparseVector::dot(const SparseVector& other) const {
  // Merge walk over the two ordered maps; accumulation order is the feature
  // id order regardless of operand order, so dot(a,b) == dot(b,a) bitwise.
  double acc = 0.0;
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() && b != other.entries_.end()) {
    if (a->first < b->first) {
      ++a;
    } else if (b->first < a->first) {
      ++b;
    } else {
      acc += a->second * b->second;
      ++a;
      ++b;
    }
  }
  return acc;
}

double SparseVector::squared_norm() const {
  double acc = 0.0;
  for (const auto& [id, value] : entries_) acc += value * value;
  return acc;
}

double SparseVector::norm() const { return std::sqrt(squared_norm()); }

SparseVector SparseVector::normalized() const {
  SparseVector out = *this;
  out.scale(1.0 / norm());
  return out;
}

}  // namespace swvp
