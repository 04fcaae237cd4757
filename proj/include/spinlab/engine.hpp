#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "spinlab/graph.hpp"
#include "spinlab/model.hpp"
#include "spinlab/rng.hpp"

namespace spinlab {

/// State of the whole system at one probe time.
struct Snapshot {
  double time;
  Configuration state;
};

/// Each spin independently 1 with probability p (product measure).
Configuration sample_initial(const Graph& g, double p, RngStream& rng);

/// Rate at which x flips in configuration c.
double flip_rate(const Graph& g, const Configuration& c, VertexId x, const ModelParams& m);

/// Called after every flip with (time, vertex); returning false stops the run
/// (remaining probes then see the current state).
using FlipObserver = std::function<bool(double, VertexId)>;

/// Exact continuous-time simulation: exponential holding times at the total
/// flip rate, flipping vertex x with probability rate(x)/total. Probe times
/// must be sorted and lie in [0, t_end]. An absorbed trajectory freezes and
/// the remaining probes see the frozen state.
std::vector<Snapshot> run_gillespie(const Graph& g, const ModelParams& m, const Configuration& c0,
                                    double t_end, RngStream& rng, std::span<const double> probes,
                                    const FlipObserver& on_flip = {});

/// Same law as run_gillespie, recomputing every rate and scanning linearly
/// at each event. Kept as the serial reference for tests and benchmarks.
std::vector<Snapshot> run_gillespie_reference(const Graph& g, const ModelParams& m,
                                              const Configuration& c0, double t_end,
                                              RngStream& rng, std::span<const double> probes);

/// One ring of the directed clock (x, y): x looks at y.
struct RingEvent {
  double time;
  VertexId x;
  VertexId y;
  bool head;
  bool applied;
};

/// Every ring of a graphical-representation run, applied or not, in strictly
/// increasing time order.
class EventLog {
 public:
  void append(const RingEvent& e) { entries_.push_back(e); }
  std::span<const RingEvent> entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  void reserve(std::size_t n) { entries_.reserve(n); }

 private:
  std::vector<RingEvent> entries_;
};

struct GraphicalRun {
  std::vector<Snapshot> snapshots;
  EventLog log;
};

/// Trajectory built from independent Poisson clocks on directed edges, rate
/// (lambda + theta)/deg(x) on (x, y), plus one coin per ring with head
/// probability lambda/(lambda + theta). At a ring x copies y when x is 0 and
/// the coin is head, or x is 1 and the coin is tail. Bias voter only.
GraphicalRun run_graphical(const Graph& g, const ModelParams& m, const Configuration& c0,
                           double t_end, RngStream& rng, std::span<const double> probes);

/// True iff neither (x, y) nor (y, x) rang at a time <= T.
bool edge_quiet(const Graph& g, const EventLog& log, VertexId x, VertexId y, double T);

/// Validates probe ordering and range; shared by every engine.
void check_probes(std::span<const double> probes, double t_end);

}  // namespace spinlab
