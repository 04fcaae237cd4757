#pragma once

#include <span>
#include <vector>

#include "spinlab/graph.hpp"
#include "spinlab/model.hpp"
#include "spinlab/rng.hpp"

namespace spinlab {

/// Bias voter component `eta` (theta = 1) and contact component `zeta`
/// driven by shared randomness.
struct CoupledState {
  Configuration eta;
  Configuration zeta;
};

struct CoupledSnapshot {
  double time;
  CoupledState state;
};

/// eta(x) >= zeta(x) everywhere. Throws InvalidParameter if the two
/// components live on different graphs.
bool check_domination(const CoupledState& s);

/// Basic coupling of BiasVoter(lambda, 1) and Contact(lambda), both started
/// from c0. Per vertex, with a = voter rate and b = contact rate:
///   (0,0): both up at b, eta alone up at a - b
///   (1,1): both down at a, zeta alone down at b - a
///   (1,0): eta down at a, zeta up at b, independently
/// Domination is asserted after every event; a violation throws
/// InvariantFailure. `event_count`, when given, receives the number of events.
std::vector<CoupledSnapshot> run_coupled(const Graph& g, double lambda, const Configuration& c0,
                                         double t_end, RngStream& rng,
                                         std::span<const double> probes,
                                         std::size_t* event_count = nullptr);

}  // namespace spinlab
