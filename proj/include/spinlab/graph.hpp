#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace spinlab {

using VertexId = std::uint32_t;

enum class GraphKind { complete, tree_ball, torus };

/// Parameters that fully determine a graph. Only the fields of `kind` are used.
struct GraphSpec {
  GraphKind kind = GraphKind::complete;
  int n = 0;          // complete
  int branching = 0;  // tree_ball: every vertex has `branching` children, root has branching + 1
  int radius = 0;     // tree_ball
  int dimension = 0;  // torus
  int side = 0;       // torus

  std::string describe() const;
  bool operator==(const GraphSpec&) const = default;
};

/// Implicit addressing of the radius-R ball around a root of the (N+1)-regular
/// tree. Vertices are numbered level by level: the root is 0, level k occupies
/// [level_offset(k), level_offset(k + 1)). The neighbor order is parent first,
/// then children in index order; the root lists its N + 1 children.
///
/// Nothing is materialized, so balls far too large to store (N = 80, R = 6)
/// can still be addressed.
class TreeBallLayout {
 public:
  using vertex_type = std::uint64_t;

  TreeBallLayout(int branching, int radius);

  int branching() const noexcept { return branching_; }
  int radius() const noexcept { return radius_; }
  std::uint64_t size() const noexcept { return offsets_.back(); }
  std::uint64_t level_offset(int depth) const { return offsets_.at(static_cast<std::size_t>(depth)); }

  vertex_type root() const noexcept { return 0; }
  int depth(vertex_type v) const;
  std::uint32_t degree(vertex_type v) const;
  vertex_type neighbor(vertex_type v, std::uint32_t j) const;

  /// 1 + (N+1)(N^R - 1)/(N - 1), or 0 if it does not fit in 62 bits.
  static std::uint64_t closed_form_size(int branching, int radius) noexcept;

 private:
  int branching_;
  int radius_;
  std::vector<std::uint64_t> offsets_;  // radius + 2 entries
};

/// Finite simple graph with compressed adjacency. Immutable once built.
class Graph {
 public:
  using vertex_type = VertexId;

  static Graph complete(int n);
  static Graph tree_ball(int branching, int radius);
  static Graph torus(int dimension, int side);
  static Graph from_spec(const GraphSpec& spec);

  const GraphSpec& spec() const noexcept { return spec_; }
  GraphKind kind() const noexcept { return spec_.kind; }
  std::size_t size() const noexcept { return offsets_.size() - 1; }
  std::size_t directed_edge_count() const noexcept { return targets_.size(); }

  std::span<const VertexId> neighbors(VertexId x) const {
    return {targets_.data() + offsets_[x], targets_.data() + offsets_[x + 1]};
  }
  std::uint32_t degree(VertexId x) const { return offsets_[x + 1] - offsets_[x]; }
  VertexId neighbor(VertexId x, std::uint32_t j) const { return targets_[offsets_[x] + j]; }
  bool adjacent(VertexId x, VertexId y) const;

  /// Tree balls only.
  VertexId root() const;
  int depth(VertexId x) const;
  std::vector<VertexId> boundary() const;

  /// Identity used to tie configurations to the graph they live on.
  std::uint64_t fingerprint() const noexcept { return fingerprint_; }

  /// Exhaustive check of symmetry, loop-freeness and neighbor uniqueness.
  /// Throws InvariantFailure on the first violation.
  void check_invariants() const;

 private:
  Graph(GraphSpec spec, std::vector<std::uint32_t> offsets, std::vector<VertexId> targets,
        std::vector<int> depths);

  GraphSpec spec_;
  std::vector<std::uint32_t> offsets_;
  std::vector<VertexId> targets_;
  std::vector<int> depths_;
  std::uint64_t fingerprint_;
};

/// Tree-ball vertices at depth <= R - margin. Empty when margin > R.
std::vector<VertexId> interior_vertices(const Graph& g, int margin);

/// Vertex pair used for joint observables: (root, first child) on trees,
/// (0, first neighbor of 0) elsewhere.
struct Edge {
  VertexId x;
  VertexId y;
};
Edge reference_edge(const Graph& g);

}  // namespace spinlab
