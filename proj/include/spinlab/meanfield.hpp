#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "spinlab/rng.hpp"

namespace spinlab {

/// Inputs of the logistic mean-field limit: 0 < p < 1, lambda >= theta > 0.
struct MeanFieldParams {
  double p;
  double lambda;
  double theta;

  /// Throws InvalidParameter when the invariants fail.
  void validate() const;
  double growth() const noexcept { return lambda - theta; }
};

/// f(t, p) = p e^{(lambda-theta)t} / (1 - p + p e^{(lambda-theta)t}).
double f_closed(double t, const MeanFieldParams& mp);

/// f at t_end from classical RK4 on df/dt = (lambda - theta) f (1 - f),
/// f(0) = p, with fixed step (the final step is shortened to land on t_end).
double f_ode(double t_end, const MeanFieldParams& mp, double step);

/// RK4 values at 0, step, 2 step, ..., t_end (same stepping as f_ode).
std::vector<double> f_ode_path(double t_end, const MeanFieldParams& mp, double step);

/// Birth-death chain of the number of 1-vertices on N sites:
/// up at (lambda/N)(N - k)k, down at (theta/N)(N - k)k.
struct DensityPath {
  std::uint32_t population = 0;
  std::vector<double> times;           // event times, strictly increasing
  std::vector<std::uint32_t> counts;   // counts[0] is the initial count at t = 0
  std::vector<std::uint32_t> probe_counts;
};

double density_up_rate(std::uint32_t population, std::uint32_t count, double lambda);
double density_down_rate(std::uint32_t population, std::uint32_t count, double theta);

/// Initial count ~ Binomial(N, p). `record_path` keeps every event; the
/// probe counts are always filled.
DensityPath run_density_chain(std::uint32_t population, const MeanFieldParams& mp, double t_end,
                              RngStream& rng, std::span<const double> probes,
                              bool record_path = true);

}  // namespace spinlab
