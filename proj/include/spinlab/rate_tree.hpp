#pragma once

#include <cstddef>
#include <vector>

namespace spinlab {

/// Binary sum tree over non-negative per-item rates. Internal nodes are
/// recomputed from their children on every update, so the total is exactly
/// zero whenever every rate is zero (no drift from incremental deltas).
class RateTree {
 public:
  explicit RateTree(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  double total() const noexcept { return nodes_[1]; }
  double rate(std::size_t i) const { return nodes_[cap_ + i]; }

  void set(std::size_t i, double rate);
  /// Rebuild every internal node after bulk writes through `set_leaf`.
  void set_leaf(std::size_t i, double rate) { nodes_[cap_ + i] = rate; }
  void rebuild();

  /// Index i with probability rate(i)/total(); `u` uniform in [0, 1).
  /// Never returns a zero-rate item while total() > 0.
  std::size_t sample(double u) const;

 private:
  std::size_t n_;
  std::size_t cap_;
  std::vector<double> nodes_;
};

}  // namespace spinlab
