#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "spinlab/meanfield.hpp"
#include "spinlab/model.hpp"

namespace spinlab {

/// Monte Carlo mean with its standard error over n replicas.
struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t n = 0;

  bool operator==(const Estimate&) const = default;
};

/// Bernoulli estimate from a count: stderr = sqrt(mean (1 - mean) / n).
Estimate bernoulli_estimate(std::uint64_t ones, std::uint64_t n);

/// Sample mean of {0,1} observations. Empty input is an InvalidParameter.
Estimate estimate_marginal(std::span<const std::uint8_t> observations);

/// Mean of values c_i / scale from integer sums sum c_i and sum c_i^2, with the
/// sample-variance standard error. Exact integer arithmetic, so any
/// reduction order gives the same bits.
Estimate estimate_scaled_mean(std::uint64_t sum, std::uint64_t sum_squares, std::uint64_t n,
                              double scale);

/// Two-site table of (spin at x, spin at y).
struct JointEstimate {
  std::array<double, 4> cells{};  // index 2 * a + b for (x = a, y = b)
  std::uint64_t n = 0;

  double cell(int a, int b) const { return cells[static_cast<std::size_t>(2 * a + b)]; }
  double x_one() const { return cell(1, 0) + cell(1, 1); }
  double y_zero() const { return cell(0, 0) + cell(1, 0); }
  /// Bernoulli standard error of cell (a, b).
  double cell_error(int a, int b) const;

  bool operator==(const JointEstimate&) const = default;
};

JointEstimate joint_from_counts(const std::array<std::uint64_t, 4>& counts);
JointEstimate estimate_joint(std::span<const std::pair<std::uint8_t, std::uint8_t>> pairs);

/// |P(x=1, y=0) - P(x=1) P(y=0)|.
double independence_gap(const JointEstimate& j);

/// e.mean <= f_closed(t) + 3 e.std_error.
bool upper_bound_check(const Estimate& e, double t, const MeanFieldParams& mp);

/// Root-marginal result on one truncated tree, tagged with what produced it.
struct RadiusResult {
  ModelParams model;
  double p = 0.0;
  double horizon = 0.0;
  std::string observable;
  int branching = 0;
  int radius = 0;
  Estimate estimate;
};

/// True iff the two estimates differ by less than 3 combined standard errors.
/// Results from different models, horizons or observables are rejected.
bool radius_stability(const RadiusResult& a, const RadiusResult& b);

/// Probe time minimizing P(x=1, y=0) and that minimum; ties go to the
/// earliest probe.
std::pair<double, double> discordance_dip(std::span<const std::pair<double, JointEstimate>> series);

/// |a - b| < sigmas * sqrt(se_a^2 + se_b^2).
bool within_combined(const Estimate& a, const Estimate& b, double sigmas = 3.0);

}  // namespace spinlab
