#pragma once

#include <cstddef>
#include <map>

namespace swvp {

// Feature-indexed real vector. Carrier of feature counts, count differences
// and model weights throughout the library.
//
// Canonical form: no explicitly stored zero entries survive any mutating
// operation, so equality of maps is equality of vectors. Entries are kept
// ordered by feature id, which makes merge-based dot products and all
// accumulations deterministic.
class SparseVector {
 public:
  using Map = std::map<int, double>;
  using const_iterator = Map::const_iterator;

  SparseVector() = default;

  double at(int id) const {
    auto it = entries_.find(id);
    return it == entries_.end() ? 0.0 : it->second;
  }

  void set(int id, double value) {
    if (value == 0.0) {
      entries_.erase(id);
    } else {
      entries_[id] = value;
    }
  }

  void add(int id, double value) {
    auto [it, inserted] = entries_.try_emplace(id, value);
    if (!inserted) {
      it->second += value;
      if (it->second == 0.0) entries_.erase(it);
    } else if (value == 0.0) {
      entries_.erase(it);
    }
  }

  // this += c * other
  SparseVector& add_scaled(const SparseVector& other, double c);

  void scale(double c);

  double dot(const SparseVector& other) const;
  double squared_norm() const;
  double norm() const;

  // Unit-norm copy; caller must ensure the vector is nonzero.
  SparseVector normalized() const;

  std::size_t nnz() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  void clear() { entries_.clear(); }

  const_iterator begin() const { return entries_.begin(); }
  const_iterator end() const { return entries_.end(); }

  friend bool operator==(const SparseVector& a, const SparseVector& b) {
    return a.entries_ == b.entries_;
  }

 private:
  Map entries_;
};

}  // namespace swvp
