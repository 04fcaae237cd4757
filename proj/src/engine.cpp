#include "spinlab/engine.hpp"

#include <cmath>

#include "spinlab/errors.hpp"
#include "spinlab/rate_tree.hpp"

namespace spinlab {

namespace {

void check_run(const Graph& g, const ModelParams& m, const Configuration& c0, double t_end,
               std::span<const double> probes) {
  if (!c0.belongs_to(g)) throw InvalidParameter("initial configuration is not on this graph");
  if (!(m.lambda > 0.0) || !(m.theta > 0.0)) throw InvalidParameter("rates must be positive");
  check_probes(probes, t_end);
}

double denominator(const Graph& g, VertexId x, Normalization n) {
  return n == Normalization::degree ? static_cast<double>(g.degree(x))
                                    : static_cast<double>(g.size());
}

// Rate of x given its spin and the number of 1-neighbors.
double local_rate(const ModelParams& m, std::uint8_t spin, std::uint32_t ones, std::uint32_t deg,
                  double denom) {
  if (m.dynamics == Dynamics::contact) {
    return spin != 0 ? 1.0 : m.lambda * ones / denom;
  }
  return spin == 0 ? m.lambda * ones / denom : m.theta * (deg - ones) / denom;
}

std::uint32_t ones_around(const Graph& g, const Configuration& c, VertexId x) {
  std::uint32_t ones = 0;
  for (VertexId y : g.neighbors(x)) ones += c[y];
  return ones;
}

}  // namespace

void check_probes(std::span<const double> probes, double t_end) {
  if (!std::isfinite(t_end) || t_end < 0.0) throw InvalidParameter("t_end must be >= 0");
  for (std::size_t i = 0; i < probes.size(); ++i) {
    if (!(probes[i] >= 0.0) || probes[i] > t_end) {
      throw InvalidParameter("probe times must lie in [0, t_end]");
    }
    if (i > 0 && probes[i] < probes[i - 1]) throw InvalidParameter("probe times must be sorted");
  }
}

Configuration sample_initial(const Graph& g, double p, RngStream& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidParameter("density p must lie in [0, 1]");
  std::vector<std::uint8_t> spins(g.size());
  for (auto& s : spins) s = rng.bernoulli(p) ? 1 : 0;
  return Configuration(g, std::move(spins));
}

double flip_rate(const Graph& g, const Configuration& c, VertexId x, const ModelParams& m) {
  if (x >= g.size()) throw InvalidParameter("vertex not in graph");
  return local_rate(m, c[x], ones_around(g, c, x), g.degree(x),
                    denominator(g, x, m.normalization));
}

std::vector<Snapshot> run_gillespie(const Graph& g, const ModelParams& m, const Configuration& c0,
                                    double t_end, RngStream& rng, std::span<const double> probes,
                                    const FlipObserver& on_flip) {
  check_run(g, m, c0, t_end, probes);
  const std::size_t n = g.size();
  Configuration state = c0;
  std::vector<std::uint32_t> ones(n);
  std::vector<double> denom(n);
  RateTree rates(n);
  for (VertexId x = 0; x < n; ++x) {
    ones[x] = ones_around(g, state, x);
    denom[x] = denominator(g, x, m.normalization);
    rates.set_leaf(x, local_rate(m, state[x], ones[x], g.degree(x), denom[x]));
  }
  rates.rebuild();

  std::vector<Snapshot> out;
  out.reserve(probes.size());
  std::size_t next_probe = 0;
  double t = 0.0;
  while (true) {
    const double total = rates.total();
    const double t_next = total > 0.0 ? t + rng.exponential(total) : INFINITY;
    while (next_probe < probes.size() && probes[next_probe] < t_next) {
      out.push_back({probes[next_probe++], state});
    }
    if (t_next > t_end) break;

    const auto x = static_cast<VertexId>(rates.sample(rng.uniform()));
    const std::uint8_t now = state[x] ^ 1U;
    state.set(x, now);
    rates.set(x, local_rate(m, now, ones[x], g.degree(x), denom[x]));
    for (VertexId y : g.neighbors(x)) {
      ones[y] = now != 0 ? ones[y] + 1 : ones[y] - 1;
      rates.set(y, local_rate(m, state[y], ones[y], g.degree(y), denom[y]));
    }
    t = t_next;
    if (on_flip && !on_flip(t, x)) break;
  }
  while (next_probe < probes.size()) out.push_back({probes[next_probe++], state});
  return out;
}

std::vector<Snapshot> run_gillespie_reference(const Graph& g, const ModelParams& m,
                                              const Configuration& c0, double t_end,
                                              RngStream& rng, std::span<const double> probes) {
  check_run(g, m, c0, t_end, probes);
  const std::size_t n = g.size();
  Configuration state = c0;
  std::vector<double> rate(n);
  std::vector<Snapshot> out;
  std::size_t next_probe = 0;
  double t = 0.0;
  while (true) {
    double total = 0.0;
    for (VertexId x = 0; x < n; ++x) {
      rate[x] = flip_rate(g, state, x, m);
      total += rate[x];
    }
    const double t_next = total > 0.0 ? t + rng.exponential(total) : INFINITY;
    while (next_probe < probes.size() && probes[next_probe] < t_next) {
      out.push_back({probes[next_probe++], state});
    }
    if (t_next > t_end) break;

    double target = rng.uniform() * total;
    VertexId chosen = 0;
    for (VertexId x = 0; x < n; ++x) {
      if (rate[x] <= 0.0) continue;
      chosen = x;
      if (target < rate[x]) break;
      target -= rate[x];
    }
    state.set(chosen, state[chosen] ^ 1U);
    t = t_next;
  }
  return out;
}

GraphicalRun run_graphical(const Graph& g, const ModelParams& m, const Configuration& c0,
                           double t_end, RngStream& rng, std::span<const double> probes) {
  check_run(g, m, c0, t_end, probes);
  if (m.dynamics != Dynamics::bias_voter || m.normalization != Normalization::degree) {
    throw InvalidParameter("graphical engine supports the degree-normalized bias voter only");
  }
  // The superposition of all directed clocks is a Poisson process of rate
  // sum_x sum_{y~x} (lambda+theta)/deg(x) = |V|(lambda+theta); each ring
  // lands on a uniform vertex x and then a uniform neighbor of x.
  const std::size_t n = g.size();
  const double total = static_cast<double>(n) * (m.lambda + m.theta);
  const double head_probability = m.lambda / (m.lambda + m.theta);

  GraphicalRun run;
  run.snapshots.reserve(probes.size());
  run.log.reserve(static_cast<std::size_t>(total * t_end * 1.05) + 16);
  Configuration state = c0;
  std::size_t next_probe = 0;
  double t = 0.0;
  while (true) {
    double t_next = t + rng.exponential(total);
    // Exact floating-point ties are broken by generation order; nudge the
    // time so the log stays strictly increasing.
    if (t_next <= t) t_next = std::nextafter(t, INFINITY);
    while (next_probe < probes.size() && probes[next_probe] < t_next) {
      run.snapshots.push_back({probes[next_probe++], state});
    }
    if (t_next > t_end) break;

    const auto x = static_cast<VertexId>(rng.below(n));
    const VertexId y = g.neighbor(x, static_cast<std::uint32_t>(rng.below(g.degree(x))));
    const bool head = rng.bernoulli(head_probability);
    const bool applied = (state[x] == 0) == head;
    if (applied) state.set(x, state[y]);
    run.log.append({t_next, x, y, head, applied});
    t = t_next;
  }
  return run;
}

bool edge_quiet(const Graph& g, const EventLog& log, VertexId x, VertexId y, double T) {
  if (!g.adjacent(x, y)) throw InvalidParameter("edge_quiet: vertices are not adjacent");
  for (const RingEvent& e : log.entries()) {
    if (e.time > T) break;
    if ((e.x == x && e.y == y) || (e.x == y && e.y == x)) return false;
  }
  return true;
}

}  // namespace spinlab
