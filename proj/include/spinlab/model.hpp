#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "spinlab/graph.hpp"

namespace spinlab {

enum class Dynamics { bias_voter, contact };

/// Denominator of the neighbor-driven rates: the local degree, or |V|
/// (the complete-graph density chain convention, K_N only in practice).
enum class Normalization { degree, vertex_count };

/// Rates of a two-state spin system. Contact recovery is fixed at 1 and
/// stored in `theta` so both dynamics share one layout.
struct ModelParams {
  Dynamics dynamics = Dynamics::bias_voter;
  double lambda = 0.0;
  double theta = 0.0;
  Normalization normalization = Normalization::degree;

  /// lambda > theta > 0.
  static ModelParams bias_voter(double lambda, double theta);
  /// lambda == theta; the unbiased voter model.
  static ModelParams classic_voter(double rate);
  /// lambda > 0, recovery 1.
  static ModelParams contact(double lambda);

  ModelParams with_normalization(Normalization n) const {
    ModelParams out = *this;
    out.normalization = n;
    return out;
  }

  std::string describe() const;
  bool operator==(const ModelParams&) const = default;
};

/// {0,1} spins on the vertex set of one graph.
class Configuration {
 public:
  Configuration() = default;
  explicit Configuration(const Graph& g, std::uint8_t fill = 0);
  Configuration(const Graph& g, std::vector<std::uint8_t> spins);

  std::size_t size() const noexcept { return spins_.size(); }
  std::uint8_t operator[](VertexId x) const { return spins_[x]; }
  void set(VertexId x, std::uint8_t value) { spins_[x] = value; }
  std::span<const std::uint8_t> spins() const noexcept { return spins_; }
  std::uint64_t graph_fingerprint() const noexcept { return fingerprint_; }

  std::uint64_t count_ones() const;
  bool is_uniform(std::uint8_t value) const;
  bool belongs_to(const Graph& g) const noexcept {
    return fingerprint_ == g.fingerprint() && spins_.size() == g.size();
  }

  bool operator==(const Configuration&) const = default;

 private:
  std::vector<std::uint8_t> spins_;
  std::uint64_t fingerprint_ = 0;
};

}  // namespace spinlab
