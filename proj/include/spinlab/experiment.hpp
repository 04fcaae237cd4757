#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "spinlab/estimator.hpp"
#include "spinlab/graph.hpp"
#include "spinlab/replicas.hpp"

namespace spinlab {

enum class ExperimentKind {
  meanfield_complete,
  meanfield_tree_sweep,
  quiet_edge,
  coupling_domination,
  engine_equivalence,
  martingale_classic,
  delta1_drift,
  conjecture_probe,
};

struct ExperimentInfo {
  ExperimentKind kind;
  std::string_view name;
  std::string_view summary;
};

const std::vector<ExperimentInfo>& experiment_catalog();
std::string_view experiment_name(ExperimentKind kind);
std::optional<ExperimentKind> parse_experiment_kind(std::string_view name);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::meanfield_complete;
  GraphSpec graph;
  double lambda = 0.0;
  double theta = 0.0;
  double p = 0.0;
  std::vector<double> probes;
  std::uint64_t replicas = 0;
  std::uint64_t seed = 0;
  std::string output;
  std::vector<int> branching_sweep;  // meanfield_tree_sweep
  std::vector<int> dimension_sweep;  // conjecture_probe

  bool operator==(const ExperimentConfig&) const = default;
};

/// Parses and validates. Throws ValidationError naming the offending field.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig parse_config_text(std::string_view text);
/// Throws ValidationError if `cfg` violates any invariant.
void validate_config(const ExperimentConfig& cfg);
nlohmann::json config_to_json(const ExperimentConfig& cfg);

struct Observation {
  std::string name;
  Estimate value;

  bool operator==(const Observation&) const = default;
};

struct ProbeResult {
  double t = 0.0;
  std::vector<Observation> observables;

  bool operator==(const ProbeResult&) const = default;
  const Observation& at(std::string_view name) const;
};

struct ResultRecord {
  std::string experiment;
  std::string graph;
  nlohmann::json params;  // a config that reruns exactly this record
  std::vector<ProbeResult> probes;
  std::vector<Observation> diagnostics;
  double wall_seconds = 0.0;
  std::uint64_t seed = 0;

  bool operator==(const ResultRecord&) const = default;
  const ProbeResult& probe(double t) const;
  const Observation& diagnostic(std::string_view name) const;
};

/// Runs every replica (and every sweep point) of the experiment.
std::vector<ResultRecord> run_experiment(const ExperimentConfig& cfg, FanOut fan = {});

/// One row per (probe, observable) and per diagnostic (empty probe_t).
std::string emit_csv(const std::vector<ResultRecord>& records);
/// One JSON object per line.
std::string emit_json(const std::vector<ResultRecord>& records);

nlohmann::json record_to_json(const ResultRecord& r);
ResultRecord record_from_json(const nlohmann::json& j);
std::vector<ResultRecord> parse_json_lines(std::string_view text);

/// Writes `text` to `path`; throws std::runtime_error naming the path on failure.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace spinlab
