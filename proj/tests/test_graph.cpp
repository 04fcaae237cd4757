#include <algorithm>
#include <map>
#include <queue>
#include <set>

#include "doctest.h"
#include "spinlab/errors.hpp"
#include "spinlab/graph.hpp"

using namespace spinlab;

namespace {

// Depth of every vertex reached from `root` by BFS over the adjacency.
std::vector<int> bfs_depths(const Graph& g, VertexId root) {
  std::vector<int> depth(g.size(), -1);
  std::queue<VertexId> q;
  depth[root] = 0;
  q.push(root);
  while (!q.empty()) {
    const VertexId x = q.front();
    q.pop();
    for (VertexId y : g.neighbors(x)) {
      if (depth[y] < 0) {
        depth[y] = depth[x] + 1;
        q.push(y);
      }
    }
  }
  return depth;
}

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

TEST_CASE("complete graph") {
  SUBCASE("n=2 is a single edge") {
    const Graph g = Graph::complete(2);
    CHECK(g.size() == 2);
    CHECK(g.degree(0) == 1);
    CHECK(g.neighbor(0, 0) == 1);
    CHECK(g.neighbor(1, 0) == 0);
  }
  SUBCASE("n=5 has degree 4 everywhere") {
    const Graph g = Graph::complete(5);
    for (VertexId x = 0; x < 5; ++x) CHECK(g.degree(x) == 4);
  }
  SUBCASE("n=1 is rejected") { CHECK_THROWS_AS(Graph::complete(1), InvalidParameter); }
}

TEST_CASE("tree ball shape") {
  SUBCASE("branching 2, radius 1") {
    const Graph g = Graph::tree_ball(2, 1);
    CHECK(g.size() == 4);
    CHECK(g.degree(g.root()) == 3);
    for (VertexId x = 1; x < 4; ++x) CHECK(g.degree(x) == 1);
    CHECK(g.boundary().size() == 3);
  }
  SUBCASE("branching 2, radius 2 has 10 vertices by BFS enumeration") {
    const Graph g = Graph::tree_ball(2, 2);
    const auto depth = bfs_depths(g, g.root());
    CHECK(std::count_if(depth.begin(), depth.end(), [](int d) { return d >= 0 && d <= 2; }) == 10);
    CHECK(g.size() == 10);
  }
  SUBCASE("branching 5, radius 3 degrees") {
    const Graph g = Graph::tree_ball(5, 3);
    for (VertexId x = 0; x < g.size(); ++x) {
      CHECK(g.degree(x) == (g.depth(x) == 3 ? 1U : 6U));
    }
  }
  SUBCASE("invalid parameters") {
    CHECK_THROWS_AS(Graph::tree_ball(1, 3), InvalidParameter);
    CHECK_THROWS_AS(Graph::tree_ball(2, 0), InvalidParameter);
  }
}

TEST_CASE("tree ball count matches closed form and BFS depths for all sizes up to 1e5") {
  for (int n = 2; n <= 60; ++n) {
    for (int r = 1; r <= 16; ++r) {
      const std::uint64_t expected = 1 + (n + 1) * ((ipow(n, r) - 1) / (n - 1));
      if (expected > 100'000) break;
      const Graph g = Graph::tree_ball(n, r);
      REQUIRE(g.size() == expected);
      CHECK(TreeBallLayout::closed_form_size(n, r) == expected);
      const auto depth = bfs_depths(g, g.root());
      for (VertexId x = 0; x < g.size(); ++x) {
        REQUIRE(depth[x] == g.depth(x));
        const std::uint32_t want = depth[x] == r ? 1U : static_cast<std::uint32_t>(n + 1);
        REQUIRE(g.degree(x) == want);
      }
      if (g.size() <= 10'000) g.check_invariants();
    }
  }
}

TEST_CASE("implicit layout agrees with the materialized tree") {
  const TreeBallLayout layout(3, 4);
  const Graph g = Graph::tree_ball(3, 4);
  REQUIRE(layout.size() == g.size());
  for (VertexId x = 0; x < g.size(); ++x) {
    REQUIRE(layout.degree(x) == g.degree(x));
    for (std::uint32_t j = 0; j < g.degree(x); ++j) REQUIRE(layout.neighbor(x, j) == g.neighbor(x, j));
  }
}

TEST_CASE("implicit layout addresses balls too large to materialize") {
  const TreeBallLayout layout(80, 6);
  CHECK(layout.size() == 1 + 81 * ((ipow(80, 6) - 1) / 79));
  CHECK_THROWS_AS(Graph::tree_ball(80, 6), InvalidParameter);
  // Walk down to a leaf and back up.
  std::uint64_t v = layout.root();
  std::vector<std::uint64_t> path{v};
  for (int d = 0; d < 6; ++d) {
    v = layout.neighbor(v, d == 0 ? 79 : 80);
    path.push_back(v);
    CHECK(layout.depth(v) == d + 1);
  }
  CHECK(layout.degree(v) == 1);
  for (int d = 6; d > 0; --d) {
    v = layout.neighbor(v, 0);
    CHECK(v == path[static_cast<std::size_t>(d) - 1]);
  }
}

TEST_CASE("torus") {
  SUBCASE("d=1, L=5 is a 5-cycle") {
    const Graph g = Graph::torus(1, 5);
    CHECK(g.size() == 5);
    for (VertexId x = 0; x < 5; ++x) {
      CHECK(g.degree(x) == 2);
      CHECK(g.adjacent(x, (x + 1) % 5));
      CHECK(g.adjacent(x, (x + 4) % 5));
    }
  }
  SUBCASE("d=2, L=3") {
    const Graph g = Graph::torus(2, 3);
    CHECK(g.size() == 9);
    for (VertexId x = 0; x < 9; ++x) CHECK(g.degree(x) == 4);
  }
  SUBCASE("L=2 would duplicate neighbors") { CHECK_THROWS_AS(Graph::torus(2, 2), InvalidParameter); }
  SUBCASE("d=0 is rejected") { CHECK_THROWS_AS(Graph::torus(0, 5), InvalidParameter); }
  SUBCASE("larger tori pass the exhaustive check") {
    for (int d = 1; d <= 4; ++d) {
      const Graph g = Graph::torus(d, 5);
      g.check_invariants();
      for (VertexId x = 0; x < g.size(); ++x) REQUIRE(g.degree(x) == static_cast<std::uint32_t>(2 * d));
    }
  }
}

TEST_CASE("adjacency symmetry on every constructed graph") {
  for (const Graph& g : {Graph::complete(40), Graph::tree_ball(4, 4), Graph::torus(3, 7)}) {
    for (VertexId x = 0; x < g.size(); ++x) {
      std::set<VertexId> seen;
      for (VertexId y : g.neighbors(x)) {
        REQUIRE(y != x);
        REQUIRE(seen.insert(y).second);
        REQUIRE(g.adjacent(y, x));
      }
    }
  }
}

TEST_CASE("interior vertices") {
  const Graph g = Graph::tree_ball(2, 2);
  CHECK(interior_vertices(g, 0).size() == g.size());
  CHECK(interior_vertices(g, 2) == std::vector<VertexId>{0});
  const auto inner = interior_vertices(g, 1);
  CHECK(inner.size() == 4);
  for (VertexId x : inner) CHECK(g.depth(x) <= 1);
  CHECK(interior_vertices(g, 3).empty());
  CHECK_THROWS_AS(interior_vertices(Graph::torus(1, 5), 0), InvalidParameter);
}

TEST_CASE("reference edge and fingerprints") {
  const Graph t = Graph::tree_ball(3, 2);
  const Edge e = reference_edge(t);
  CHECK(e.x == t.root());
  CHECK(t.depth(e.y) == 1);
  CHECK(Graph::torus(2, 4).fingerprint() == Graph::torus(2, 4).fingerprint());
  CHECK(Graph::torus(2, 4).fingerprint() != Graph::torus(2, 5).fingerprint());
  CHECK(Graph::tree_ball(2, 3).spec().describe() == "tree_ball(N=2,R=3)");
}
