#include "spinlab/rate_tree.hpp"

#include <bit>

namespace spinlab {

RateTree::RateTree(std::size_t n)
    : n_(n), cap_(std::bit_ceil(n < 1 ? std::size_t{1} : n)), nodes_(2 * cap_, 0.0) {}

void RateTree::set(std::size_t i, double rate) {
  std::size_t k = cap_ + i;
  nodes_[k] = rate;
  for (k >>= 1; k >= 1; k >>= 1) nodes_[k] = nodes_[2 * k] + nodes_[2 * k + 1];
}

void RateTree::rebuild() {
  for (std::size_t k = cap_ - 1; k >= 1; --k) nodes_[k] = nodes_[2 * k] + nodes_[2 * k + 1];
}

std::size_t RateTree::sample(double u) const {
  double target = u * nodes_[1];
  std::size_t k = 1;
  while (k < cap_) {
    const double left = nodes_[2 * k];
    const double right = nodes_[2 * k + 1];
    if ((target < left && left > 0.0) || right <= 0.0) {
      k = 2 * k;
    } else {
      target -= left;
      k = 2 * k + 1;
    }
  }
  return k - cap_;
}

}  // namespace spinlab
