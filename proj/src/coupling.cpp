#include "spinlab/coupling.hpp"

#include <cmath>
#include <string>

#include "spinlab/engine.hpp"
#include "spinlab/errors.hpp"
#include "spinlab/rate_tree.hpp"

namespace spinlab {

namespace {

struct JointRates {
  double both;        // both components flip together
  double eta_only;
  double zeta_only;
  double total() const { return both + eta_only + zeta_only; }
};

// voter: c(x, eta) with theta = 1; contact: c1(x, zeta). Degree-normalized.
JointRates joint_rates(double lambda, std::uint8_t eta, std::uint8_t zeta, std::uint32_t eta_ones,
                       std::uint32_t zeta_ones, std::uint32_t deg, VertexId x) {
  const double denom = deg;
  if (eta == 0 && zeta == 0) {
    const double voter = lambda * eta_ones / denom;
    const double contact = lambda * zeta_ones / denom;
    if (voter < contact) {
      throw InvariantFailure("coupling: voter up-rate below contact up-rate at vertex " +
                             std::to_string(x));
    }
    return {contact, voter - contact, 0.0};
  }
  if (eta == 1 && zeta == 1) {
    const double voter = 1.0 * (deg - eta_ones) / denom;
    const double contact = 1.0;
    if (voter > contact) {
      throw InvariantFailure("coupling: voter down-rate above recovery rate at vertex " +
                             std::to_string(x));
    }
    return {voter, 0.0, contact - voter};
  }
  if (eta == 1 && zeta == 0) {
    return {0.0, 1.0 * (deg - eta_ones) / denom, lambda * zeta_ones / denom};
  }
  throw InvariantFailure("coupling: domination violated at vertex " + std::to_string(x));
}

}  // namespace

bool check_domination(const CoupledState& s) {
  if (s.eta.graph_fingerprint() != s.zeta.graph_fingerprint() || s.eta.size() != s.zeta.size()) {
    throw InvalidParameter("check_domination: components live on different graphs");
  }
  const auto eta = s.eta.spins();
  const auto zeta = s.zeta.spins();
  for (std::size_t x = 0; x < eta.size(); ++x) {
    if (eta[x] < zeta[x]) return false;
  }
  return true;
}

std::vector<CoupledSnapshot> run_coupled(const Graph& g, double lambda, const Configuration& c0,
                                         double t_end, RngStream& rng,
                                         std::span<const double> probes,
                                         std::size_t* event_count) {
  if (!std::isfinite(lambda) || !(lambda > 1.0)) {
    throw InvalidParameter("run_coupled: lambda must exceed theta = 1");
  }
  if (!c0.belongs_to(g)) throw InvalidParameter("initial configuration is not on this graph");
  check_probes(probes, t_end);

  const std::size_t n = g.size();
  CoupledState state{c0, c0};
  std::vector<std::uint32_t> eta_ones(n);
  std::vector<std::uint32_t> zeta_ones(n);
  std::vector<JointRates> local(n);
  RateTree rates(n);

  auto refresh = [&](VertexId x) {
    local[x] = joint_rates(lambda, state.eta[x], state.zeta[x], eta_ones[x], zeta_ones[x],
                           g.degree(x), x);
    return local[x].total();
  };
  for (VertexId x = 0; x < n; ++x) {
    for (VertexId y : g.neighbors(x)) {
      eta_ones[x] += state.eta[y];
      zeta_ones[x] += state.zeta[y];
    }
    rates.set_leaf(x, refresh(x));
  }
  rates.rebuild();

  auto flip = [&](Configuration& c, std::vector<std::uint32_t>& ones, VertexId x) {
    const std::uint8_t now = c[x] ^ 1U;
    c.set(x, now);
    for (VertexId y : g.neighbors(x)) ones[y] = now != 0 ? ones[y] + 1 : ones[y] - 1;
  };

  std::vector<CoupledSnapshot> out;
  out.reserve(probes.size());
  std::size_t next_probe = 0;
  std::size_t events = 0;
  double t = 0.0;
  while (true) {
    const double total = rates.total();
    const double t_next = total > 0.0 ? t + rng.exponential(total) : INFINITY;
    while (next_probe < probes.size() && probes[next_probe] < t_next) {
      out.push_back({probes[next_probe++], state});
    }
    if (t_next > t_end) break;

    const auto x = static_cast<VertexId>(rates.sample(rng.uniform()));
    const JointRates& r = local[x];
    const double u = rng.uniform() * r.total();
    const bool only_both = r.eta_only <= 0.0 && r.zeta_only <= 0.0;
    if ((u < r.both && r.both > 0.0) || only_both) {
      flip(state.eta, eta_ones, x);
      flip(state.zeta, zeta_ones, x);
    } else if ((u < r.both + r.eta_only && r.eta_only > 0.0) || r.zeta_only <= 0.0) {
      flip(state.eta, eta_ones, x);
    } else {
      flip(state.zeta, zeta_ones, x);
    }
    ++events;
    if (state.eta[x] < state.zeta[x]) {
      throw InvariantFailure("coupling: domination violated at vertex " + std::to_string(x) +
                             " at t=" + std::to_string(t_next));
    }
    rates.set(x, refresh(x));
    for (VertexId y : g.neighbors(x)) rates.set(y, refresh(y));
    t = t_next;
  }
  if (event_count != nullptr) *event_count = events;
  return out;
}

}  // namespace spinlab
