#include "spinlab/experiment.hpp"

#include <chrono>
#include <cmath>

#include "spinlab/cone.hpp"
#include "spinlab/coupling.hpp"
#include "spinlab/engine.hpp"
#include "spinlab/errors.hpp"
#include "spinlab/meanfield.hpp"

namespace spinlab {

namespace {

using Clock = std::chrono::steady_clock;

Observation measured(std::string name, Estimate e) { return {std::move(name), e}; }

Observation exact(std::string name, double value, std::uint64_t n) {
  return {std::move(name), {value, 0.0, n}};
}

Observation flag(std::string name, bool ok, std::uint64_t n) {
  return exact(std::move(name), ok ? 1.0 : 0.0, n);
}

ModelParams voter_model(const ExperimentConfig& cfg) {
  return cfg.lambda == cfg.theta ? ModelParams::classic_voter(cfg.lambda)
                                 : ModelParams::bias_voter(cfg.lambda, cfg.theta);
}

MeanFieldParams meanfield_params(const ExperimentConfig& cfg) {
  return {cfg.p, cfg.lambda, cfg.theta};
}

std::string label(const ExperimentConfig& cfg, std::string_view purpose) {
  return std::string(experiment_name(cfg.kind)) + "/" + cfg.graph.describe() + "/" +
         std::string(purpose);
}

ResultRecord start_record(const ExperimentConfig& cfg) {
  ResultRecord r;
  r.experiment = std::string(experiment_name(cfg.kind));
  r.graph = cfg.graph.describe();
  r.params = config_to_json(cfg);
  r.seed = cfg.seed;
  return r;
}

void push_joint(std::vector<Observation>& out, const std::array<std::uint64_t, 4>& counts) {
  const JointEstimate j = joint_from_counts(counts);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      out.push_back(measured("joint_" + std::to_string(a) + std::to_string(b),
                             {j.cell(a, b), j.cell_error(a, b), j.n}));
    }
  }
  out.push_back(exact("independence_gap", independence_gap(j), j.n));
}

std::array<std::uint64_t, 4> slice4(const Counters& c, std::size_t at) {
  return {c[at], c[at + 1], c[at + 2], c[at + 3]};
}

double t_end_of(const ExperimentConfig& cfg) { return cfg.probes.back(); }

// ---------------------------------------------------------------------------

ResultRecord run_meanfield_complete(const ExperimentConfig& cfg, FanOut fan) {
  ResultRecord rec = start_record(cfg);
  const MeanFieldParams mp = meanfield_params(cfg);
  const auto population = static_cast<std::uint32_t>(cfg.graph.n);
  const std::size_t k = cfg.probes.size();
  const std::string purpose = label(cfg, "chain");

  const Counters total = run_replicas(
      cfg.replicas, cfg.seed,
      [&](std::uint64_t r) {
        RngStream rng(cfg.seed, r, purpose);
        const DensityPath path =
            run_density_chain(population, mp, t_end_of(cfg), rng, cfg.probes, false);
        Counters out(2 * k);
        for (std::size_t i = 0; i < k; ++i) {
          const std::uint64_t c = path.probe_counts[i];
          out[2 * i] = c;
          out[2 * i + 1] = c * c;
        }
        return out;
      },
      fan);

  for (std::size_t i = 0; i < k; ++i) {
    const double t = cfg.probes[i];
    const Estimate density =
        estimate_scaled_mean(total[2 * i], total[2 * i + 1], cfg.replicas, population);
    const double f = f_closed(t, mp);
    rec.probes.push_back({t,
                          {measured("density", density), exact("f_closed", f, cfg.replicas),
                           exact("abs_gap", std::abs(density.mean - f), cfg.replicas)}});
  }
  return rec;
}

ResultRecord run_tree_point(const ExperimentConfig& cfg, FanOut fan) {
  ResultRecord rec = start_record(cfg);
  const ModelParams m = voter_model(cfg);
  const MeanFieldParams mp = meanfield_params(cfg);
  const TreeBallLayout ball(cfg.graph.branching, cfg.graph.radius);
  const TreeBallLayout wider(cfg.graph.branching, cfg.graph.radius + 1);
  const std::array<std::uint64_t, 2> pair{ball.root(), ball.neighbor(ball.root(), 0)};
  const std::array<std::uint64_t, 1> root{wider.root()};
  const std::size_t k = cfg.probes.size();
  constexpr std::size_t kPer = 6;  // root, four joint cells, root at radius + 1
  const std::string purpose = label(cfg, "cone");
  const std::string purpose_wide = label(cfg, "cone/radius+1");

  const Counters total = run_replicas(
      cfg.replicas, cfg.seed,
      [&](std::uint64_t r) {
        Counters out(kPer * k + 1);
        RngStream rng(cfg.seed, r, purpose);
        ConeStats stats;
        const ConeSample s = sample_cone(ball, m, cfg.p, std::span(pair), cfg.probes, rng, &stats);
        RngStream rng_wide(cfg.seed, r, purpose_wide);
        const ConeSample w = sample_cone(wider, m, cfg.p, std::span(root), cfg.probes, rng_wide);
        for (std::size_t i = 0; i < k; ++i) {
          out[kPer * i] = s[i][0];
          out[kPer * i + 1 + 2 * s[i][0] + s[i][1]] = 1;
          out[kPer * i + 5] = w[i][0];
        }
        out[kPer * k] = stats.vertices;
        return out;
      },
      fan);

  const std::uint64_t n = cfg.replicas;
  for (std::size_t i = 0; i < k; ++i) {
    const double t = cfg.probes[i];
    const std::size_t at = kPer * i;
    const Estimate root_est = bernoulli_estimate(total[at], n);
    const Estimate wide_est = bernoulli_estimate(total[at + 5], n);
    RadiusResult a{m, cfg.p, t, "root", cfg.graph.branching, cfg.graph.radius, root_est};
    RadiusResult b = a;
    b.radius += 1;
    b.estimate = wide_est;

    ProbeResult probe{t, {measured("root", root_est)}};
    push_joint(probe.observables, slice4(total, at + 1));
    probe.observables.push_back(exact("f_closed", f_closed(t, mp), n));
    probe.observables.push_back(flag("upper_bound_ok", upper_bound_check(root_est, t, mp), n));
    probe.observables.push_back(measured("root_radius_plus_1", wide_est));
    probe.observables.push_back(flag("radius_stable", radius_stability(a, b), n));
    rec.probes.push_back(std::move(probe));
  }
  rec.diagnostics.push_back(
      exact("cone_vertices_mean", static_cast<double>(total[kPer * k]) / static_cast<double>(n), n));
  return rec;
}

ResultRecord run_quiet_edge(const ExperimentConfig& cfg, FanOut fan) {
  ResultRecord rec = start_record(cfg);
  const Graph g = Graph::from_spec(cfg.graph);
  const ModelParams m = voter_model(cfg);
  const Edge e = reference_edge(g);
  const std::size_t k = cfg.probes.size();
  const std::string init = label(cfg, "init");
  const std::string dynamics = label(cfg, "dynamics");

  const Counters total = run_replicas(
      cfg.replicas, cfg.seed,
      [&](std::uint64_t r) {
        RngStream init_rng(cfg.seed, r, init);
        const Configuration c0 = sample_initial(g, cfg.p, init_rng);
        RngStream rng(cfg.seed, r, dynamics);
        const GraphicalRun run = run_graphical(g, m, c0, t_end_of(cfg), rng, {});
        Counters out(k);
        for (std::size_t i = 0; i < k; ++i) {
          out[i] = edge_quiet(g, run.log, e.x, e.y, cfg.probes[i]) ? 1 : 0;
        }
        return out;
      },
      fan);

  const double inverse_degrees = 1.0 / g.degree(e.x) + 1.0 / g.degree(e.y);
  for (std::size_t i = 0; i < k; ++i) {
    const double t = cfg.probes[i];
    const Estimate quiet = bernoulli_estimate(total[i], cfg.replicas);
    const double expected = std::exp(-(cfg.lambda + cfg.theta) * t * inverse_degrees);
    const Estimate exact_est{expected, 0.0, cfg.replicas};
    rec.probes.push_back({t,
                          {measured("quiet", quiet), exact("quiet_exact", expected, cfg.replicas),
                           flag("quiet_within_3se", within_combined(quiet, exact_est), cfg.replicas)}});
  }
  return rec;
}

ResultRecord run_coupling(const ExperimentConfig& cfg, FanOut fan) {
  ResultRecord rec = start_record(cfg);
  const Graph g = Graph::from_spec(cfg.graph);
  const Edge e = reference_edge(g);
  const std::size_t k = cfg.probes.size();
  constexpr std::size_t kPer = 10;
  const std::string init = label(cfg, "init");
  const std::string dynamics = label(cfg, "dynamics");

  const Counters total = run_replicas(
      cfg.replicas, cfg.seed,
      [&](std::uint64_t r) {
        RngStream init_rng(cfg.seed, r, init);
        const Configuration c0 = sample_initial(g, cfg.p, init_rng);
        RngStream rng(cfg.seed, r, dynamics);
        std::size_t events = 0;
        const auto snaps = run_coupled(g, cfg.lambda, c0, t_end_of(cfg), rng, cfg.probes, &events);
        Counters out(kPer * k + 1);
        for (std::size_t i = 0; i < k; ++i) {
          const CoupledState& s = snaps[i].state;
          const std::uint64_t eta = s.eta.count_ones();
          const std::uint64_t zeta = s.zeta.count_ones();
          std::uint64_t* row = out.data() + kPer * i;
          row[0] = s.eta[e.x];
          row[1] = s.zeta[e.x];
          row[2] = eta;
          row[3] = eta * eta;
          row[4] = zeta;
          row[5] = zeta * zeta;
          row[6] = (s.eta[e.x] == 0 && s.eta[e.y] == 0) ? 1 : 0;
          row[7] = (s.zeta[e.x] == 0 && s.zeta[e.y] == 0) ? 1 : 0;
          row[8] = check_domination(s) ? 1 : 0;
          row[9] = eta >= zeta ? 1 : 0;
        }
        out[kPer * k] = events;
        return out;
      },
      fan);

  const std::uint64_t n = cfg.replicas;
  const double size = static_cast<double>(g.size());
  std::uint64_t violations = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const std::uint64_t* row = total.data() + kPer * i;
    const Estimate eta_zero = bernoulli_estimate(row[6], n);
    const Estimate zeta_zero = bernoulli_estimate(row[7], n);
    const double slack = 3.0 * std::hypot(eta_zero.std_error, zeta_zero.std_error);
    violations += n - row[8];
    rec.probes.push_back(
        {cfg.probes[i],
         {measured("eta_root", bernoulli_estimate(row[0], n)),
          measured("zeta_root", bernoulli_estimate(row[1], n)),
          measured("eta_density", estimate_scaled_mean(row[2], row[3], n, size)),
          measured("zeta_density", estimate_scaled_mean(row[4], row[5], n, size)),
          measured("eta_zero_on_edge", eta_zero), measured("zeta_zero_on_edge", zeta_zero),
          flag("monotone_ok", eta_zero.mean <= zeta_zero.mean + slack, n),
          measured("dominated", bernoulli_estimate(row[8], n)),
          measured("aggregate_dominated", bernoulli_estimate(row[9], n))}});
  }
  rec.diagnostics.push_back(exact("violations", static_cast<double>(violations), n));
  rec.diagnostics.push_back(
      exact("events_mean", static_cast<double>(total[kPer * k]) / static_cast<double>(n), n));
  return rec;
}

ResultRecord run_equivalence(const ExperimentConfig& cfg, FanOut fan) {
  ResultRecord rec = start_record(cfg);
  const Graph g = Graph::from_spec(cfg.graph);
  const ModelParams m = voter_model(cfg);
  const VertexId x = reference_edge(g).x;
  const std::array<VertexId, 1> target{x};
  const std::size_t k = cfg.probes.size();
  const std::string labels[] = {label(cfg, "gillespie/init"), label(cfg, "gillespie/dynamics"),
                                label(cfg, "graphical/init"), label(cfg, "graphical/dynamics"),
                                label(cfg, "cone")};

  const Counters total = run_replicas(
      cfg.replicas, cfg.seed,
      [&](std::uint64_t r) {
        Counters out(3 * k);
        RngStream gi(cfg.seed, r, labels[0]);
        RngStream gd(cfg.seed, r, labels[1]);
        const auto a = run_gillespie(g, m, sample_initial(g, cfg.p, gi), t_end_of(cfg), gd, cfg.probes);
        RngStream hi(cfg.seed, r, labels[2]);
        RngStream hd(cfg.seed, r, labels[3]);
        const auto b = run_graphical(g, m, sample_initial(g, cfg.p, hi), t_end_of(cfg), hd, cfg.probes);
        RngStream cr(cfg.seed, r, labels[4]);
        const ConeSample c = sample_cone(g, m, cfg.p, std::span(target), cfg.probes, cr);
        for (std::size_t i = 0; i < k; ++i) {
          out[3 * i] = a[i].state[x];
          out[3 * i + 1] = b.snapshots[i].state[x];
          out[3 * i + 2] = c[i][0];
        }
        return out;
      },
      fan);

  const std::uint64_t n = cfg.replicas;
  for (std::size_t i = 0; i < k; ++i) {
    const Estimate gil = bernoulli_estimate(total[3 * i], n);
    const Estimate gra = bernoulli_estimate(total[3 * i + 1], n);
    const Estimate cone = bernoulli_estimate(total[3 * i + 2], n);
    rec.probes.push_back({cfg.probes[i],
                          {measured("gillespie_root", gil), measured("graphical_root", gra),
                           measured("cone_root", cone),
                           flag("graphical_agrees", within_combined(gil, gra), n),
                           flag("cone_agrees", within_combined(gil, cone), n)}});
  }
  return rec;
}

ResultRecord run_martingale(const ExperimentConfig& cfg, FanOut fan) {
  ResultRecord rec = start_record(cfg);
  const Graph g = Graph::from_spec(cfg.graph);
  const ModelParams m = voter_model(cfg);
  const std::size_t k = cfg.probes.size();
  const std::string init = label(cfg, "init");
  const std::string dynamics = label(cfg, "dynamics");

  const Counters total = run_replicas(
      cfg.replicas, cfg.seed,
      [&](std::uint64_t r) {
        RngStream init_rng(cfg.seed, r, init);
        RngStream rng(cfg.seed, r, dynamics);
        const auto snaps =
            run_gillespie(g, m, sample_initial(g, cfg.p, init_rng), t_end_of(cfg), rng, cfg.probes);
        Counters out(2 * k);
        for (std::size_t i = 0; i < k; ++i) {
          const std::uint64_t c = snaps[i].state.count_ones();
          out[2 * i] = c;
          out[2 * i + 1] = c * c;
        }
        return out;
      },
      fan);

  for (std::size_t i = 0; i < k; ++i) {
    const Estimate density =
        estimate_scaled_mean(total[2 * i], total[2 * i + 1], cfg.replicas, static_cast<double>(g.size()));
    const bool held = std::abs(density.mean - cfg.p) <= 3.0 * density.std_error;
    rec.probes.push_back({cfg.probes[i],
                          {measured("density", density),
                           flag("density_within_3se_of_p", held, cfg.replicas)}});
  }
  return rec;
}

ResultRecord run_drift(const ExperimentConfig& cfg, FanOut fan) {
  ResultRecord rec = start_record(cfg);
  const Graph g = Graph::from_spec(cfg.graph);
  const ModelParams m = voter_model(cfg);
  const Edge e = reference_edge(g);
  const std::size_t k = cfg.probes.size();
  constexpr std::size_t kPer = 8;  // ones, ones^2, root, four joint cells, all-one
  const std::string init = label(cfg, "init");
  const std::string dynamics = label(cfg, "dynamics");

  const Counters total = run_replicas(
      cfg.replicas, cfg.seed,
      [&](std::uint64_t r) {
        RngStream init_rng(cfg.seed, r, init);
        RngStream rng(cfg.seed, r, dynamics);
        const auto snaps =
            run_gillespie(g, m, sample_initial(g, cfg.p, init_rng), t_end_of(cfg), rng, cfg.probes);
        Counters out(kPer * k);
        for (std::size_t i = 0; i < k; ++i) {
          const Configuration& s = snaps[i].state;
          const std::uint64_t c = s.count_ones();
          std::uint64_t* row = out.data() + kPer * i;
          row[0] = c;
          row[1] = c * c;
          row[2] = s[e.x];
          row[3 + 2 * s[e.x] + s[e.y]] = 1;
          row[7] = c == s.size() ? 1 : 0;
        }
        return out;
      },
      fan);

  const std::uint64_t n = cfg.replicas;
  std::vector<std::pair<double, JointEstimate>> series;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t at = kPer * i;
    ProbeResult probe{cfg.probes[i],
                      {measured("density", estimate_scaled_mean(total[at], total[at + 1], n,
                                                                static_cast<double>(g.size()))),
                       measured("root", bernoulli_estimate(total[at + 2], n))}};
    push_joint(probe.observables, slice4(total, at + 3));
    probe.observables.push_back(measured("all_one", bernoulli_estimate(total[at + 7], n)));
    series.emplace_back(cfg.probes[i], joint_from_counts(slice4(total, at + 3)));
    rec.probes.push_back(std::move(probe));
  }
  if (series.size() >= 2) {
    const auto [when, value] = discordance_dip(series);
    rec.diagnostics.push_back(exact("dip_time", when, n));
    rec.diagnostics.push_back(exact("dip_value", value, n));
  }
  return rec;
}

ResultRecord run_conjecture_point(const ExperimentConfig& cfg, FanOut fan) {
  ResultRecord rec = start_record(cfg);
  const Graph g = Graph::from_spec(cfg.graph);
  const ModelParams m = voter_model(cfg);
  const MeanFieldParams mp = meanfield_params(cfg);
  const Edge e = reference_edge(g);
  const std::size_t k = cfg.probes.size();
  const std::string init = label(cfg, "init");
  const std::string dynamics = label(cfg, "dynamics");

  const Counters total = run_replicas(
      cfg.replicas, cfg.seed,
      [&](std::uint64_t r) {
        RngStream init_rng(cfg.seed, r, init);
        RngStream rng(cfg.seed, r, dynamics);
        const auto snaps =
            run_gillespie(g, m, sample_initial(g, cfg.p, init_rng), t_end_of(cfg), rng, cfg.probes);
        Counters out(5 * k);
        for (std::size_t i = 0; i < k; ++i) {
          const Configuration& s = snaps[i].state;
          out[5 * i] = s[e.x];
          out[5 * i + 1 + 2 * s[e.x] + s[e.y]] = 1;
        }
        return out;
      },
      fan);

  const std::uint64_t n = cfg.replicas;
  for (std::size_t i = 0; i < k; ++i) {
    ProbeResult probe{cfg.probes[i], {measured("root", bernoulli_estimate(total[5 * i], n))}};
    push_joint(probe.observables, slice4(total, 5 * i + 1));
    probe.observables.push_back(exact("f_closed", f_closed(cfg.probes[i], mp), n));
    rec.probes.push_back(std::move(probe));
  }
  rec.diagnostics.push_back(exact("exploratory", 1.0, n));
  return rec;
}

template <class F>
ResultRecord timed(F&& f) {
  const auto start = Clock::now();
  ResultRecord r = f();
  r.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return r;
}

}  // namespace

std::vector<ResultRecord> run_experiment(const ExperimentConfig& cfg, FanOut fan) {
  validate_config(cfg);
  std::vector<ResultRecord> out;
  switch (cfg.kind) {
    case ExperimentKind::meanfield_complete:
      out.push_back(timed([&] { return run_meanfield_complete(cfg, fan); }));
      break;
    case ExperimentKind::meanfield_tree_sweep: {
      std::vector<int> sweep = cfg.branching_sweep;
      if (sweep.empty()) sweep.push_back(cfg.graph.branching);
      for (int branching : sweep) {
        ExperimentConfig point = cfg;
        point.graph.branching = branching;
        point.branching_sweep.clear();
        out.push_back(timed([&] { return run_tree_point(point, fan); }));
      }
      break;
    }
    case ExperimentKind::quiet_edge:
      out.push_back(timed([&] { return run_quiet_edge(cfg, fan); }));
      break;
    case ExperimentKind::coupling_domination:
      out.push_back(timed([&] { return run_coupling(cfg, fan); }));
      break;
    case ExperimentKind::engine_equivalence:
      out.push_back(timed([&] { return run_equivalence(cfg, fan); }));
      break;
    case ExperimentKind::martingale_classic:
      out.push_back(timed([&] { return run_martingale(cfg, fan); }));
      break;
    case ExperimentKind::delta1_drift:
      out.push_back(timed([&] { return run_drift(cfg, fan); }));
      break;
    case ExperimentKind::conjecture_probe: {
      std::vector<int> sweep = cfg.dimension_sweep;
      if (sweep.empty()) sweep.push_back(cfg.graph.dimension);
      for (int dimension : sweep) {
        ExperimentConfig point = cfg;
        point.graph.dimension = dimension;
        point.dimension_sweep.clear();
        out.push_back(timed([&] { return run_conjecture_point(point, fan); }));
      }
      break;
    }
  }
  return out;
}

const Observation& ProbeResult::at(std::string_view name) const {
  for (const auto& o : observables) {
    if (o.name == name) return o;
  }
  throw InvalidParameter("no observable named " + std::string(name));
}

const ProbeResult& ResultRecord::probe(double t) const {
  for (const auto& p : probes) {
    if (p.t == t) return p;
  }
  throw InvalidParameter("no probe at t=" + std::to_string(t));
}

const Observation& ResultRecord::diagnostic(std::string_view name) const {
  for (const auto& o : diagnostics) {
    if (o.name == name) return o;
  }
  throw InvalidParameter("no diagnostic named " + std::string(name));
}

}  // namespace spinlab
