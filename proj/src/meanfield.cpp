#include "spinlab/meanfield.hpp"

#include <cmath>

#include "spinlab/engine.hpp"
#include "spinlab/errors.hpp"

namespace spinlab {

void MeanFieldParams::validate() const {
  if (!(p > 0.0 && p < 1.0)) throw InvalidParameter("mean field: p must lie in (0, 1)");
  if (!std::isfinite(lambda) || !std::isfinite(theta) || !(theta > 0.0) || !(lambda >= theta)) {
    throw InvalidParameter("mean field: requires lambda >= theta > 0");
  }
}

double f_closed(double t, const MeanFieldParams& mp) {
  mp.validate();
  if (t < 0.0) throw InvalidParameter("f_closed: t must be >= 0");
  // p / (p + (1-p) e^{-kt}) never overflows for k t >= 0.
  return mp.p / (mp.p + (1.0 - mp.p) * std::exp(-mp.growth() * t));
}

namespace {

double logistic_rhs(double k, double f) { return k * f * (1.0 - f); }

double rk4_step(double k, double f, double h) {
  const double k1 = logistic_rhs(k, f);
  const double k2 = logistic_rhs(k, f + 0.5 * h * k1);
  const double k3 = logistic_rhs(k, f + 0.5 * h * k2);
  const double k4 = logistic_rhs(k, f + h * k3);
  return f + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

std::vector<double> f_ode_path(double t_end, const MeanFieldParams& mp, double step) {
  mp.validate();
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw InvalidParameter("f_ode: t_end must be >= 0");
  if (!(step > 0.0)) throw InvalidParameter("f_ode: step must be > 0");
  std::vector<double> path{mp.p};
  if (t_end == 0.0) return path;
  if (step > t_end) throw InvalidParameter("f_ode: step must not exceed t_end");

  const double k = mp.growth();
  const auto whole = static_cast<std::size_t>(std::floor(t_end / step + 1e-9));
  path.reserve(whole + 2);
  double f = mp.p;
  for (std::size_t i = 1; i <= whole; ++i) {
    f = rk4_step(k, f, step);
    path.push_back(f);
  }
  const double rest = t_end - static_cast<double>(whole) * step;
  if (rest > 1e-12 * t_end) path.push_back(rk4_step(k, f, rest));
  return path;
}

double f_ode(double t_end, const MeanFieldParams& mp, double step) {
  return f_ode_path(t_end, mp, step).back();
}

double density_up_rate(std::uint32_t population, std::uint32_t count, double lambda) {
  const double n = population;
  return lambda / n * (n - count) * count;
}

double density_down_rate(std::uint32_t population, std::uint32_t count, double theta) {
  const double n = population;
  return theta / n * (n - count) * count;
}

DensityPath run_density_chain(std::uint32_t population, const MeanFieldParams& mp, double t_end,
                              RngStream& rng, std::span<const double> probes, bool record_path) {
  if (population < 2) throw InvalidParameter("density chain: N must be >= 2");
  mp.validate();
  check_probes(probes, t_end);

  DensityPath path;
  path.population = population;
  std::uint32_t count = 0;
  for (std::uint32_t i = 0; i < population; ++i) count += rng.bernoulli(mp.p) ? 1U : 0U;
  path.counts.push_back(count);
  path.times.push_back(0.0);

  std::size_t next_probe = 0;
  double t = 0.0;
  while (true) {
    const double up = density_up_rate(population, count, mp.lambda);
    const double down = density_down_rate(population, count, mp.theta);
    const double total = up + down;
    const double t_next = total > 0.0 ? t + rng.exponential(total) : INFINITY;
    while (next_probe < probes.size() && probes[next_probe] < t_next) {
      path.probe_counts.push_back(count);
      ++next_probe;
    }
    if (t_next > t_end) break;
    count = rng.uniform() * total < up ? count + 1 : count - 1;
    t = t_next;
    if (record_path) {
      path.times.push_back(t);
      path.counts.push_back(count);
    }
  }
  return path;
}

}  // namespace spinlab
