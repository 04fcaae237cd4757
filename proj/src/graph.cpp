#include "spinlab/graph.hpp"

#include <algorithm>
#include <limits>

#include "spinlab/errors.hpp"
#include "spinlab/rng.hpp"

namespace spinlab {

namespace {

constexpr std::uint64_t kMaxImplicitSize = std::uint64_t{1} << 62;
constexpr std::uint64_t kMaxExplicitSize = std::uint64_t{1} << 26;

std::uint64_t spec_fingerprint(const GraphSpec& s) {
  std::uint64_t h = mix64(static_cast<std::uint64_t>(s.kind));
  for (int v : {s.n, s.branching, s.radius, s.dimension, s.side}) {
    h = mix64(h ^ static_cast<std::uint64_t>(static_cast<std::uint32_t>(v)));
  }
  return h;
}

}  // namespace

std::string GraphSpec::describe() const {
  switch (kind) {
    case GraphKind::complete:
      return "complete(n=" + std::to_string(n) + ")";
    case GraphKind::tree_ball:
      return "tree_ball(N=" + std::to_string(branching) + ",R=" + std::to_string(radius) + ")";
    case GraphKind::torus:
      return "torus(d=" + std::to_string(dimension) + ",L=" + std::to_string(side) + ")";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// TreeBallLayout

std::uint64_t TreeBallLayout::closed_form_size(int branching, int radius) noexcept {
  if (branching < 2 || radius < 1) return 0;
  // (N^R - 1)/(N - 1) = 1 + N + ... + N^(R-1)
  std::uint64_t geometric = 0;
  std::uint64_t power = 1;
  const auto n = static_cast<std::uint64_t>(branching);
  for (int k = 0; k < radius; ++k) {
    geometric += power;
    if (geometric >= kMaxImplicitSize) return 0;
    if (k + 1 < radius) {
      if (power > kMaxImplicitSize / n) return 0;
      power *= n;
    }
  }
  if (geometric > (kMaxImplicitSize - 1) / (n + 1)) return 0;
  return 1 + (n + 1) * geometric;
}

TreeBallLayout::TreeBallLayout(int branching, int radius)
    : branching_(branching), radius_(radius) {
  if (branching < 2) throw InvalidParameter("tree_ball: branching must be >= 2");
  if (radius < 1) throw InvalidParameter("tree_ball: radius must be >= 1");
  if (closed_form_size(branching, radius) == 0) {
    throw InvalidParameter("tree_ball: ball too large to address");
  }
  offsets_.reserve(static_cast<std::size_t>(radius) + 2);
  offsets_.push_back(0);
  offsets_.push_back(1);
  std::uint64_t level = static_cast<std::uint64_t>(branching) + 1;
  for (int k = 1; k <= radius; ++k) {
    offsets_.push_back(offsets_.back() + level);
    level *= static_cast<std::uint64_t>(branching);
  }
}

int TreeBallLayout::depth(vertex_type v) const {
  if (v >= size()) throw InvalidParameter("tree_ball: vertex out of range");
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), v);
  return static_cast<int>(it - offsets_.begin()) - 1;
}

std::uint32_t TreeBallLayout::degree(vertex_type v) const {
  const int d = depth(v);
  return d == radius_ ? 1U : static_cast<std::uint32_t>(branching_) + 1U;
}

TreeBallLayout::vertex_type TreeBallLayout::neighbor(vertex_type v, std::uint32_t j) const {
  const int d = depth(v);
  const auto n = static_cast<std::uint64_t>(branching_);
  if (d == 0) {
    if (j > n) throw InvalidParameter("tree_ball: neighbor index out of range");
    return offsets_[1] + j;
  }
  const std::uint64_t i = v - offsets_[static_cast<std::size_t>(d)];
  if (j == 0) {
    return d == 1 ? 0 : offsets_[static_cast<std::size_t>(d) - 1] + i / n;
  }
  if (d == radius_ || j > n) throw InvalidParameter("tree_ball: neighbor index out of range");
  return offsets_[static_cast<std::size_t>(d) + 1] + i * n + (j - 1);
}

// ---------------------------------------------------------------------------
// Graph

Graph::Graph(GraphSpec spec, std::vector<std::uint32_t> offsets, std::vector<VertexId> targets,
             std::vector<int> depths)
    : spec_(spec),
      offsets_(std::move(offsets)),
      targets_(std::move(targets)),
      depths_(std::move(depths)),
      fingerprint_(spec_fingerprint(spec_)) {
  if (size() <= 10'000) check_invariants();
}

Graph Graph::complete(int n) {
  if (n < 2) throw InvalidParameter("complete: n must be >= 2");
  if (static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n - 1) > kMaxExplicitSize * 4) {
    throw InvalidParameter("complete: graph too large to materialize");
  }
  const auto size = static_cast<std::uint32_t>(n);
  std::vector<std::uint32_t> offsets(size + 1);
  std::vector<VertexId> targets;
  targets.reserve(static_cast<std::size_t>(size) * (size - 1));
  for (VertexId x = 0; x < size; ++x) {
    offsets[x] = static_cast<std::uint32_t>(targets.size());
    for (VertexId y = 0; y < size; ++y) {
      if (y != x) targets.push_back(y);
    }
  }
  offsets[size] = static_cast<std::uint32_t>(targets.size());
  return Graph({.kind = GraphKind::complete, .n = n}, std::move(offsets), std::move(targets), {});
}

Graph Graph::tree_ball(int branching, int radius) {
  const TreeBallLayout layout(branching, radius);
  if (layout.size() > kMaxExplicitSize) {
    throw InvalidParameter("tree_ball: graph too large to materialize (" +
                           std::to_string(layout.size()) + " vertices)");
  }
  const auto size = static_cast<std::uint32_t>(layout.size());
  std::vector<std::uint32_t> offsets(size + 1);
  std::vector<VertexId> targets;
  std::vector<int> depths(size);
  targets.reserve(2 * (static_cast<std::size_t>(size) - 1));
  for (VertexId x = 0; x < size; ++x) {
    offsets[x] = static_cast<std::uint32_t>(targets.size());
    depths[x] = layout.depth(x);
    const std::uint32_t deg = layout.degree(x);
    for (std::uint32_t j = 0; j < deg; ++j) {
      targets.push_back(static_cast<VertexId>(layout.neighbor(x, j)));
    }
  }
  offsets[size] = static_cast<std::uint32_t>(targets.size());
  return Graph({.kind = GraphKind::tree_ball, .branching = branching, .radius = radius},
               std::move(offsets), std::move(targets), std::move(depths));
}

Graph Graph::torus(int dimension, int side) {
  if (dimension < 1) throw InvalidParameter("torus: dimension must be >= 1");
  if (side < 3) throw InvalidParameter("torus: side must be >= 3 (neighbors must be distinct)");
  std::uint64_t count = 1;
  for (int i = 0; i < dimension; ++i) {
    count *= static_cast<std::uint64_t>(side);
    if (count > kMaxExplicitSize) throw InvalidParameter("torus: graph too large to materialize");
  }
  const auto size = static_cast<std::uint32_t>(count);
  const auto deg = static_cast<std::uint32_t>(2 * dimension);
  std::vector<std::uint32_t> offsets(size + 1);
  std::vector<VertexId> targets(static_cast<std::size_t>(size) * deg);
  for (VertexId x = 0; x < size; ++x) {
    offsets[x] = x * deg;
    std::uint32_t stride = 1;
    for (int i = 0; i < dimension; ++i) {
      const std::uint32_t coord = (x / stride) % static_cast<std::uint32_t>(side);
      const std::uint32_t up = (coord + 1) % static_cast<std::uint32_t>(side);
      const std::uint32_t down = (coord + static_cast<std::uint32_t>(side) - 1) % static_cast<std::uint32_t>(side);
      const VertexId base = x - coord * stride;
      targets[x * deg + 2 * static_cast<std::uint32_t>(i)] = base + up * stride;
      targets[x * deg + 2 * static_cast<std::uint32_t>(i) + 1] = base + down * stride;
      stride *= static_cast<std::uint32_t>(side);
    }
  }
  offsets[size] = size * deg;
  return Graph({.kind = GraphKind::torus, .dimension = dimension, .side = side},
               std::move(offsets), std::move(targets), {});
}

Graph Graph::from_spec(const GraphSpec& spec) {
  switch (spec.kind) {
    case GraphKind::complete:
      return complete(spec.n);
    case GraphKind::tree_ball:
      return tree_ball(spec.branching, spec.radius);
    case GraphKind::torus:
      return torus(spec.dimension, spec.side);
  }
  throw InvalidParameter("unknown graph kind");
}

bool Graph::adjacent(VertexId x, VertexId y) const {
  if (x >= size() || y >= size()) return false;
  const auto nb = neighbors(x);
  return std::find(nb.begin(), nb.end(), y) != nb.end();
}

VertexId Graph::root() const {
  if (kind() != GraphKind::tree_ball) throw InvalidParameter("root: graph is not a tree ball");
  return 0;
}

int Graph::depth(VertexId x) const {
  if (kind() != GraphKind::tree_ball) throw InvalidParameter("depth: graph is not a tree ball");
  return depths_.at(x);
}

std::vector<VertexId> Graph::boundary() const {
  if (kind() != GraphKind::tree_ball) throw InvalidParameter("boundary: graph is not a tree ball");
  std::vector<VertexId> out;
  for (VertexId x = 0; x < size(); ++x) {
    if (depths_[x] == spec_.radius) out.push_back(x);
  }
  return out;
}

void Graph::check_invariants() const {
  std::vector<VertexId> sorted;
  for (VertexId x = 0; x < size(); ++x) {
    const auto nb = neighbors(x);
    sorted.assign(nb.begin(), nb.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw InvariantFailure("graph: duplicate neighbor at vertex " + std::to_string(x));
    }
    for (VertexId y : nb) {
      if (y == x) throw InvariantFailure("graph: self-loop at vertex " + std::to_string(x));
      if (y >= size()) throw InvariantFailure("graph: neighbor out of range");
      const auto back = neighbors(y);
      if (std::find(back.begin(), back.end(), x) == back.end()) {
        throw InvariantFailure("graph: asymmetric edge " + std::to_string(x) + "-" +
                               std::to_string(y));
      }
    }
  }
}

std::vector<VertexId> interior_vertices(const Graph& g, int margin) {
  if (g.kind() != GraphKind::tree_ball) {
    throw InvalidParameter("interior_vertices: graph is not a tree ball");
  }
  if (margin < 0) throw InvalidParameter("interior_vertices: margin must be >= 0");
  std::vector<VertexId> out;
  const int limit = g.spec().radius - margin;
  for (VertexId x = 0; x < g.size(); ++x) {
    if (g.depth(x) <= limit) out.push_back(x);
  }
  return out;
}

Edge reference_edge(const Graph& g) {
  const VertexId x = g.kind() == GraphKind::tree_ball ? g.root() : 0;
  return {x, g.neighbor(x, 0)};
}

}  // namespace spinlab
