#include <algorithm>
#include <cmath>
#include <set>

#include "spinlab/errors.hpp"
#include "spinlab/experiment.hpp"

namespace spinlab {

using nlohmann::json;

namespace {

const std::vector<ExperimentInfo> kCatalog = {
    {ExperimentKind::meanfield_complete, "meanfield_complete",
     "density chain on the complete graph vs the logistic limit"},
    {ExperimentKind::meanfield_tree_sweep, "meanfield_tree_sweep",
     "root marginal on truncated trees over a branching sweep, with upper-bound and radius checks"},
    {ExperimentKind::quiet_edge, "quiet_edge",
     "frequency of an edge whose two clocks stay silent up to T (graphical engine)"},
    {ExperimentKind::coupling_domination, "coupling_domination",
     "coupled bias voter and contact process; pointwise domination"},
    {ExperimentKind::engine_equivalence, "engine_equivalence",
     "Gillespie vs graphical (and localized graphical on trees) marginals"},
    {ExperimentKind::martingale_classic, "martingale_classic",
     "unbiased voter: global density stays at p in mean"},
    {ExperimentKind::delta1_drift, "delta1_drift",
     "density drift toward all-one and the discordance dip"},
    {ExperimentKind::conjecture_probe, "conjecture_probe",
     "exploratory: lattice marginal and independence gap over a dimension sweep"},
};

const std::set<std::string> kTopLevelKeys = {
    "experiment", "graph",   "model", "p",      "probes",         "replicas",
    "seed",       "output", "branching_sweep", "dimension_sweep"};

[[noreturn]] void fail(const std::string& field, const std::string& message) {
  throw ValidationError(field, message);
}

const json& require(const json& j, const char* key, const std::string& field) {
  if (!j.contains(key)) fail(field, "missing");
  return j.at(key);
}

double number(const json& j, const std::string& field) {
  if (!j.is_number()) fail(field, "must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(field, "must be finite");
  return v;
}

int integer(const json& j, const std::string& field) {
  if (!j.is_number_integer()) fail(field, "must be an integer");
  const auto v = j.get<std::int64_t>();
  if (v < -1'000'000'000 || v > 1'000'000'000) fail(field, "out of range");
  return static_cast<int>(v);
}

std::uint64_t unsigned_integer(const json& j, const std::string& field) {
  if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() && j.get<std::int64_t>() < 0)) {
    fail(field, "must be a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

std::vector<int> int_list(const json& j, const std::string& field) {
  if (!j.is_array()) fail(field, "must be an array of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(integer(j[i], field + "[" + std::to_string(i) + "]"));
  }
  return out;
}

GraphSpec parse_graph(const json& j) {
  if (!j.is_object()) fail("graph", "must be an object");
  const json& kind = require(j, "kind", "graph.kind");
  if (!kind.is_string()) fail("graph.kind", "must be a string");
  const auto name = kind.get<std::string>();
  GraphSpec g;
  auto allow = [&](std::initializer_list<const char*> keys) {
    for (const auto& [key, value] : j.items()) {
      if (key == "kind") continue;
      if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return key == k; })) {
        fail("graph." + key, "unknown field for graph kind " + name);
      }
    }
  };
  if (name == "complete") {
    allow({"n"});
    g.kind = GraphKind::complete;
    g.n = integer(require(j, "n", "graph.n"), "graph.n");
  } else if (name == "tree_ball") {
    allow({"branching", "radius"});
    g.kind = GraphKind::tree_ball;
    g.branching = integer(require(j, "branching", "graph.branching"), "graph.branching");
    g.radius = integer(require(j, "radius", "graph.radius"), "graph.radius");
  } else if (name == "torus") {
    allow({"dimension", "side"});
    g.kind = GraphKind::torus;
    g.dimension = integer(require(j, "dimension", "graph.dimension"), "graph.dimension");
    g.side = integer(require(j, "side", "graph.side"), "graph.side");
  } else {
    fail("graph.kind", "unknown graph kind '" + name + "'");
  }
  return g;
}

json graph_to_json(const GraphSpec& g) {
  switch (g.kind) {
    case GraphKind::complete:
      return {{"kind", "complete"}, {"n", g.n}};
    case GraphKind::tree_ball:
      return {{"kind", "tree_ball"}, {"branching", g.branching}, {"radius", g.radius}};
    case GraphKind::torus:
      return {{"kind", "torus"}, {"dimension", g.dimension}, {"side", g.side}};
  }
  return {};
}

void check_graph(const GraphSpec& g, const std::string& field) {
  switch (g.kind) {
    case GraphKind::complete:
      if (g.n < 2) fail(field + ".n", "must be >= 2");
      break;
    case GraphKind::tree_ball:
      if (g.branching < 2) fail(field + ".branching", "must be >= 2");
      if (g.radius < 1) fail(field + ".radius", "must be >= 1");
      if (TreeBallLayout::closed_form_size(g.branching, g.radius + 1) == 0) {
        fail(field, "tree ball too large to address");
      }
      break;
    case GraphKind::torus:
      if (g.dimension < 1) fail(field + ".dimension", "must be >= 1");
      if (g.side < 3) fail(field + ".side", "must be >= 3");
      if (std::pow(static_cast<double>(g.side), g.dimension) > double(1 << 26)) {
        fail(field, "torus too large to materialize");
      }
      break;
  }
}

void check_materializable(const GraphSpec& g) {
  try {
    if (g.kind == GraphKind::tree_ball) {
      if (TreeBallLayout::closed_form_size(g.branching, g.radius) > (std::uint64_t{1} << 26)) {
        fail("graph", "tree ball too large to materialize for this experiment");
      }
    } else if (g.kind == GraphKind::complete) {
      if (static_cast<double>(g.n) * (g.n - 1) > double(std::uint64_t{1} << 28)) {
        fail("graph.n", "complete graph too large to materialize");
      }
    }
  } catch (const InvalidParameter& e) {
    fail("graph", e.what());
  }
}

}  // namespace

const std::vector<ExperimentInfo>& experiment_catalog() { return kCatalog; }

std::string_view experiment_name(ExperimentKind kind) {
  for (const auto& info : kCatalog) {
    if (info.kind == kind) return info.name;
  }
  return "unknown";
}

std::optional<ExperimentKind> parse_experiment_kind(std::string_view name) {
  for (const auto& info : kCatalog) {
    if (info.name == name) return info.kind;
  }
  return std::nullopt;
}

void validate_config(const ExperimentConfig& cfg) {
  check_graph(cfg.graph, "graph");
  if (cfg.replicas < 1) fail("replicas", "must be >= 1");
  if (cfg.probes.empty()) fail("probes", "must be nonempty");
  for (std::size_t i = 0; i < cfg.probes.size(); ++i) {
    const double t = cfg.probes[i];
    if (!std::isfinite(t) || t < 0.0) fail("probes", "times must be finite and >= 0");
    if (i > 0 && t < cfg.probes[i - 1]) fail("probes", "times must be sorted");
  }
  if (!std::isfinite(cfg.lambda) || !(cfg.lambda > 0.0)) fail("model.lambda", "must be > 0");
  if (!std::isfinite(cfg.theta) || !(cfg.theta > 0.0)) fail("model.theta", "must be > 0");
  if (!(cfg.p >= 0.0 && cfg.p <= 1.0)) fail("p", "must lie in [0, 1]");

  auto need_graph = [&](GraphKind kind, const char* what) {
    if (cfg.graph.kind != kind) fail("graph.kind", std::string("this experiment needs a ") + what);
  };
  auto need_bias = [&]() {
    if (!(cfg.lambda > cfg.theta)) fail("model.lambda", "bias voter requires lambda > theta");
  };
  auto need_open_p = [&]() {
    if (!(cfg.p > 0.0 && cfg.p < 1.0)) fail("p", "must lie in (0, 1) for mean-field comparisons");
  };
  if (!cfg.branching_sweep.empty() && cfg.kind != ExperimentKind::meanfield_tree_sweep) {
    fail("branching_sweep", "only meanfield_tree_sweep sweeps the branching number");
  }
  if (!cfg.dimension_sweep.empty() && cfg.kind != ExperimentKind::conjecture_probe) {
    fail("dimension_sweep", "only conjecture_probe sweeps the dimension");
  }

  switch (cfg.kind) {
    case ExperimentKind::meanfield_complete:
      need_graph(GraphKind::complete, "complete graph");
      need_open_p();
      if (!(cfg.lambda >= cfg.theta)) fail("model.lambda", "requires lambda >= theta");
      break;
    case ExperimentKind::meanfield_tree_sweep:
      need_graph(GraphKind::tree_ball, "tree_ball graph");
      need_bias();
      need_open_p();
      for (std::size_t i = 0; i < cfg.branching_sweep.size(); ++i) {
        GraphSpec g = cfg.graph;
        g.branching = cfg.branching_sweep[i];
        check_graph(g, "branching_sweep[" + std::to_string(i) + "]");
      }
      break;
    case ExperimentKind::quiet_edge:
    case ExperimentKind::engine_equivalence:
    case ExperimentKind::delta1_drift:
      need_bias();
      check_materializable(cfg.graph);
      break;
    case ExperimentKind::coupling_domination:
      if (cfg.theta != 1.0) fail("model.theta", "the coupled voter runs with theta = 1");
      if (!(cfg.lambda > 1.0)) fail("model.lambda", "must exceed theta = 1");
      check_materializable(cfg.graph);
      break;
    case ExperimentKind::martingale_classic:
      if (cfg.lambda != cfg.theta) fail("model.theta", "classic voter requires lambda == theta");
      check_materializable(cfg.graph);
      break;
    case ExperimentKind::conjecture_probe:
      need_graph(GraphKind::torus, "torus graph");
      need_bias();
      need_open_p();
      for (std::size_t i = 0; i < cfg.dimension_sweep.size(); ++i) {
        GraphSpec g = cfg.graph;
        g.dimension = cfg.dimension_sweep[i];
        check_graph(g, "dimension_sweep[" + std::to_string(i) + "]");
      }
      break;
  }
}

ExperimentConfig parse_config(const json& j) {
  if (!j.is_object()) fail("<root>", "config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!kTopLevelKeys.contains(key)) fail(key, "unknown field");
  }
  ExperimentConfig cfg;
  const json& kind = require(j, "experiment", "experiment");
  if (!kind.is_string()) fail("experiment", "must be a string");
  const auto parsed = parse_experiment_kind(kind.get<std::string>());
  if (!parsed) fail("experiment", "unknown experiment '" + kind.get<std::string>() + "'");
  cfg.kind = *parsed;

  cfg.graph = parse_graph(require(j, "graph", "graph"));

  const json& model = require(j, "model", "model");
  if (!model.is_object()) fail("model", "must be an object");
  for (const auto& [key, value] : model.items()) {
    if (key != "lambda" && key != "theta") fail("model." + key, "unknown field");
  }
  cfg.lambda = number(require(model, "lambda", "model.lambda"), "model.lambda");
  if (model.contains("theta")) {
    cfg.theta = number(model.at("theta"), "model.theta");
  } else if (cfg.kind == ExperimentKind::coupling_domination) {
    cfg.theta = 1.0;
  } else {
    fail("model.theta", "missing");
  }

  cfg.p = number(require(j, "p", "p"), "p");
  const json& probes = require(j, "probes", "probes");
  if (!probes.is_array()) fail("probes", "must be an array of times");
  for (std::size_t i = 0; i < probes.size(); ++i) {
    cfg.probes.push_back(number(probes[i], "probes[" + std::to_string(i) + "]"));
  }
  cfg.replicas = unsigned_integer(require(j, "replicas", "replicas"), "replicas");
  cfg.seed = unsigned_integer(require(j, "seed", "seed"), "seed");
  if (j.contains("output")) {
    if (!j.at("output").is_string()) fail("output", "must be a string");
    cfg.output = j.at("output").get<std::string>();
  }
  if (j.contains("branching_sweep")) cfg.branching_sweep = int_list(j.at("branching_sweep"), "branching_sweep");
  if (j.contains("dimension_sweep")) cfg.dimension_sweep = int_list(j.at("dimension_sweep"), "dimension_sweep");

  validate_config(cfg);
  return cfg;
}

ExperimentConfig parse_config_text(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail("<root>", std::string("malformed JSON: ") + e.what());
  }
  return parse_config(j);
}

json config_to_json(const ExperimentConfig& cfg) {
  json j = {
      {"experiment", std::string(experiment_name(cfg.kind))},
      {"graph", graph_to_json(cfg.graph)},
      {"model", {{"lambda", cfg.lambda}, {"theta", cfg.theta}}},
      {"p", cfg.p},
      {"probes", cfg.probes},
      {"replicas", cfg.replicas},
      {"seed", cfg.seed},
  };
  if (!cfg.output.empty()) j["output"] = cfg.output;
  if (!cfg.branching_sweep.empty()) j["branching_sweep"] = cfg.branching_sweep;
  if (!cfg.dimension_sweep.empty()) j["dimension_sweep"] = cfg.dimension_sweep;
  return j;
}

}  // namespace spinlab
