#include "spinlab/estimator.hpp"

#include <cmath>

#include "spinlab/errors.hpp"

namespace spinlab {

Estimate bernoulli_estimate(std::uint64_t ones, std::uint64_t n) {
  if (n == 0) throw InvalidParameter("estimate: need at least one observation");
  if (ones > n) throw InvalidParameter("estimate: count exceeds sample size");
  const double mean = static_cast<double>(ones) / static_cast<double>(n);
  return {mean, std::sqrt(mean * (1.0 - mean) / static_cast<double>(n)), n};
}

Estimate estimate_marginal(std::span<const std::uint8_t> observations) {
  std::uint64_t ones = 0;
  for (std::uint8_t o : observations) {
    if (o > 1) throw InvalidParameter("estimate_marginal: observations must be 0 or 1");
    ones += o;
  }
  return bernoulli_estimate(ones, observations.size());
}

Estimate estimate_scaled_mean(std::uint64_t sum, std::uint64_t sum_squares, std::uint64_t n,
                              double scale) {
  if (n == 0) throw InvalidParameter("estimate: need at least one observation");
  if (!(scale > 0.0)) throw InvalidParameter("estimate: scale must be positive");
  const double mean = static_cast<double>(sum) / (static_cast<double>(n) * scale);
  if (n == 1) return {mean, 0.0, n};
  const __int128 spread = static_cast<__int128>(n) * sum_squares -
                          static_cast<__int128>(sum) * static_cast<__int128>(sum);
  const double variance = static_cast<double>(spread) /
                          (static_cast<double>(n) * static_cast<double>(n - 1)) / (scale * scale);
  return {mean, std::sqrt(std::max(variance, 0.0) / static_cast<double>(n)), n};
}

double JointEstimate::cell_error(int a, int b) const {
  const double c = cell(a, b);
  return std::sqrt(c * (1.0 - c) / static_cast<double>(n));
}

JointEstimate joint_from_counts(const std::array<std::uint64_t, 4>& counts) {
  const std::uint64_t n = counts[0] + counts[1] + counts[2] + counts[3];
  if (n == 0) throw InvalidParameter("estimate_joint: need at least one observation");
  JointEstimate j;
  j.n = n;
  for (std::size_t i = 0; i < 4; ++i) {
    j.cells[i] = static_cast<double>(counts[i]) / static_cast<double>(n);
  }
  return j;
}

JointEstimate estimate_joint(std::span<const std::pair<std::uint8_t, std::uint8_t>> pairs) {
  std::array<std::uint64_t, 4> counts{};
  for (auto [a, b] : pairs) {
    if (a > 1 || b > 1) throw InvalidParameter("estimate_joint: observations must be 0 or 1");
    ++counts[static_cast<std::size_t>(2 * a + b)];
  }
  return joint_from_counts(counts);
}

double independence_gap(const JointEstimate& j) {
  return std::abs(j.cell(1, 0) - j.x_one() * j.y_zero());
}

bool upper_bound_check(const Estimate& e, double t, const MeanFieldParams& mp) {
  return e.mean <= f_closed(t, mp) + 3.0 * e.std_error;
}

bool within_combined(const Estimate& a, const Estimate& b, double sigmas) {
  const double combined = std::sqrt(a.std_error * a.std_error + b.std_error * b.std_error);
  const double diff = std::abs(a.mean - b.mean);
  return combined > 0.0 ? diff < sigmas * combined : diff == 0.0;
}

bool radius_stability(const RadiusResult& a, const RadiusResult& b) {
  if (!(a.model == b.model) || a.p != b.p || a.horizon != b.horizon ||
      a.observable != b.observable || a.branching != b.branching) {
    throw InvalidParameter("radius_stability: results come from different experiments");
  }
  return within_combined(a.estimate, b.estimate);
}

std::pair<double, double> discordance_dip(
    std::span<const std::pair<double, JointEstimate>> series) {
  if (series.size() < 2) throw InvalidParameter("discordance_dip: need at least two probes");
  std::pair<double, double> best{series[0].first, series[0].second.cell(1, 0)};
  for (const auto& [t, j] : series.subspan(1)) {
    if (j.cell(1, 0) < best.second) best = {t, j.cell(1, 0)};
  }
  return best;
}

}  // namespace spinlab
