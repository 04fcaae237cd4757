#pragma once

// Localized graphical construction.
//
// The state of a vertex at time t under the graphical representation depends
// only on the clocks and initial spins it can see backwards in time: a ring of
// (x, y) at time s makes x's future depend on y's state at s. Exploring that
// dependency set lazily and then replaying its rings forward yields the exact
// joint law of the target spins on the same finite graph, touching only about
// exp((lambda + theta) t) vertices instead of the whole graph.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "spinlab/errors.hpp"
#include "spinlab/model.hpp"
#include "spinlab/rng.hpp"

namespace spinlab {

/// Anything exposing vertex_type, degree(v) and neighbor(v, j).
template <class T>
concept Topology = requires(const T& t, typename T::vertex_type v, std::uint32_t j) {
  { t.degree(v) } -> std::convertible_to<std::uint32_t>;
  { t.neighbor(v, j) } -> std::convertible_to<typename T::vertex_type>;
};

struct ConeStats {
  std::size_t vertices = 0;
  std::size_t rings = 0;
};

/// Target spins at every probe time; result[k][i] is target i at probes[k].
using ConeSample = std::vector<std::vector<std::uint8_t>>;

/// Hard cap on explored rings; exceeded only for horizons where the
/// dependency set is effectively the whole (huge) graph.
inline constexpr std::size_t kConeRingLimit = 50'000'000;

template <Topology G>
ConeSample sample_cone(const G& graph, const ModelParams& m, double p,
                       std::span<const typename G::vertex_type> targets,
                       std::span<const double> probes, RngStream& rng,
                       ConeStats* stats = nullptr) {
  using V = typename G::vertex_type;
  if (m.dynamics != Dynamics::bias_voter || m.normalization != Normalization::degree) {
    throw InvalidParameter("cone sampler supports the degree-normalized bias voter only");
  }
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidParameter("density p must lie in [0, 1]");
  if (targets.empty() || probes.empty()) throw InvalidParameter("cone sampler needs targets and probes");
  for (std::size_t k = 0; k < probes.size(); ++k) {
    if (!(probes[k] >= 0.0) || (k > 0 && probes[k] < probes[k - 1])) {
      throw InvalidParameter("probe times must be sorted and >= 0");
    }
  }
  const double horizon = probes.back();
  const double ring_rate = m.lambda + m.theta;  // per vertex, summed over its out-clocks
  const double head_probability = m.lambda / ring_rate;

  struct Node {
    V id;
    std::uint32_t degree;
    double generated;  // clocks sampled on [0, generated]
    double horizon;    // state needed on [0, horizon]
    std::uint8_t spin;
  };
  struct Ring {
    double time;
    std::uint32_t x;
    std::uint32_t y;
    bool head;
  };

  std::vector<Node> nodes;
  std::unordered_map<V, std::uint32_t> index;
  std::vector<std::uint32_t> work;
  std::vector<Ring> rings;

  auto request = [&](V v, double h) -> std::uint32_t {
    auto [it, inserted] = index.try_emplace(v, static_cast<std::uint32_t>(nodes.size()));
    if (inserted) {
      const std::uint8_t spin = rng.bernoulli(p) ? 1 : 0;
      nodes.push_back({v, static_cast<std::uint32_t>(graph.degree(v)), 0.0, 0.0, spin});
    }
    Node& node = nodes[it->second];
    if (h > node.horizon) {
      node.horizon = h;
      work.push_back(it->second);
    }
    return it->second;
  };

  std::vector<std::uint32_t> target_index;
  target_index.reserve(targets.size());
  for (V v : targets) target_index.push_back(request(v, horizon));

  while (!work.empty()) {
    const std::uint32_t i = work.back();
    work.pop_back();
    const double h = nodes[i].horizon;
    double s = nodes[i].generated;
    if (s >= h) continue;
    // Memorylessness: restarting the clock at `generated` discards nothing.
    while (true) {
      s += rng.exponential(ring_rate);
      if (s > h) break;
      const auto j = static_cast<std::uint32_t>(rng.below(nodes[i].degree));
      const V y = graph.neighbor(nodes[i].id, j);
      const bool head = rng.bernoulli(head_probability);
      const std::uint32_t yi = request(y, s);
      rings.push_back({s, i, yi, head});
      if (rings.size() > kConeRingLimit) {
        throw InvalidParameter("cone sampler: horizon too long, dependency set exploded");
      }
    }
    nodes[i].generated = h;
  }

  std::stable_sort(rings.begin(), rings.end(),
                   [](const Ring& a, const Ring& b) { return a.time < b.time; });

  ConeSample out(probes.size(), std::vector<std::uint8_t>(targets.size()));
  std::size_t next_probe = 0;
  auto record_until = [&](double t) {
    while (next_probe < probes.size() && probes[next_probe] < t) {
      for (std::size_t k = 0; k < target_index.size(); ++k) {
        out[next_probe][k] = nodes[target_index[k]].spin;
      }
      ++next_probe;
    }
  };
  for (const Ring& r : rings) {
    record_until(r.time);
    Node& x = nodes[r.x];
    if ((x.spin == 0) == r.head) x.spin = nodes[r.y].spin;
  }
  record_until(INFINITY);

  if (stats != nullptr) {
    stats->vertices = nodes.size();
    stats->rings = rings.size();
  }
  return out;
}

}  // namespace spinlab
