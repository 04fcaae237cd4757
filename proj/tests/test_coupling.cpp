#include <cmath>

#include "doctest.h"
#include "spinlab/coupling.hpp"
#include "spinlab/engine.hpp"
#include "spinlab/errors.hpp"

using namespace spinlab;

namespace {

double se_diff(double a, double b, double n) { return std::sqrt(a * (1 - a) / n + b * (1 - b) / n); }

}  // namespace

TEST_CASE("check_domination") {
  const Graph g = Graph::torus(1, 4);
  const Configuration a(g, std::vector<std::uint8_t>{1, 0, 1, 0});
  CHECK(check_domination({a, a}));
  CHECK(check_domination({Configuration(g, 1), a}));
  CHECK_FALSE(check_domination({Configuration(g, std::vector<std::uint8_t>{1, 0, 0, 0}), a}));
  const Graph h = Graph::torus(1, 5);
  CHECK_THROWS_AS(check_domination({Configuration(g), Configuration(h)}), InvalidParameter);
}

TEST_CASE("coupled run basics") {
  const Graph g = Graph::tree_ball(2, 3);
  const std::vector<double> probes{0.0, 1.0, 5.0};
  RngStream rng(3);
  for (const auto& s : run_coupled(g, 3.0, Configuration(g), 5.0, rng, probes)) {
    CHECK(s.state.eta.is_uniform(0));
    CHECK(s.state.zeta.is_uniform(0));
  }
  RngStream init(4);
  const Configuration c0 = sample_initial(g, 0.5, init);
  const auto snaps = run_coupled(g, 3.0, c0, 5.0, rng, probes);
  CHECK(snaps[0].state.eta == c0);
  CHECK(snaps[0].state.zeta == c0);
  CHECK_THROWS_AS(run_coupled(g, 1.0, c0, 1.0, rng, {}), InvalidParameter);
  CHECK_THROWS_AS(run_coupled(g, 0.5, c0, 1.0, rng, {}), InvalidParameter);
}

TEST_CASE("domination on a ring, pointwise and in aggregate") {
  const Graph g = Graph::torus(1, 20);
  std::vector<double> probes;
  for (int i = 0; i <= 50; ++i) probes.push_back(0.1 * i);
  for (std::uint64_t r = 0; r < 100; ++r) {
    RngStream init(5, r, "init"), rng(5, r, "dyn");
    const auto snaps = run_coupled(g, 3.0, sample_initial(g, 0.5, init), 5.0, rng, probes);
    for (const auto& s : snaps) {
      REQUIRE(check_domination(s.state));
      REQUIRE(s.state.eta.count_ones() >= s.state.zeta.count_ones());
    }
  }
}

TEST_CASE("coupling rate ordering holds for dominated pairs") {
  const Graph g = Graph::tree_ball(3, 3);
  const auto voter = ModelParams::bias_voter(3.0, 1.0);
  const auto contact = ModelParams::contact(3.0);
  RngStream rng(9);
  for (int trial = 0; trial < 500; ++trial) {
    const Configuration zeta = sample_initial(g, 0.4, rng);
    std::vector<std::uint8_t> eta(zeta.spins().begin(), zeta.spins().end());
    for (auto& s : eta) s = s != 0 || rng.bernoulli(0.4) ? 1 : 0;
    const Configuration e(g, eta);
    for (VertexId x = 0; x < g.size(); ++x) {
      if (e[x] == 0 && zeta[x] == 0) {
        REQUIRE(flip_rate(g, e, x, voter) >= flip_rate(g, zeta, x, contact));
      } else if (e[x] == 1 && zeta[x] == 1) {
        REQUIRE(flip_rate(g, e, x, voter) <= flip_rate(g, zeta, x, contact));
      }
    }
  }
}

TEST_CASE("coupled marginals match the uncoupled engines") {
  const Graph g = Graph::tree_ball(2, 3);
  const std::vector<double> probes{1.0, 2.0};
  constexpr std::uint64_t n = 10'000;
  std::uint64_t eta[2] = {}, zeta[2] = {}, voter[2] = {}, contact[2] = {};
  std::uint64_t eta_zero[2] = {}, zeta_zero[2] = {};
  const auto vm = ModelParams::bias_voter(3.0, 1.0);
  const auto cm = ModelParams::contact(3.0);
  for (std::uint64_t r = 0; r < n; ++r) {
    RngStream i1(71, r, "ci"), d1(71, r, "cd");
    const auto c = run_coupled(g, 3.0, sample_initial(g, 0.5, i1), 2.0, d1, probes);
    RngStream i2(72, r, "vi"), d2(72, r, "vd");
    const auto v = run_gillespie(g, vm, sample_initial(g, 0.5, i2), 2.0, d2, probes);
    RngStream i3(73, r, "pi"), d3(73, r, "pd");
    const auto p = run_gillespie(g, cm, sample_initial(g, 0.5, i3), 2.0, d3, probes);
    for (int k = 0; k < 2; ++k) {
      eta[k] += c[k].state.eta[0];
      zeta[k] += c[k].state.zeta[0];
      voter[k] += v[k].state[0];
      contact[k] += p[k].state[0];
      bool ez = true, zz = true;
      for (VertexId x = 0; x < 4; ++x) {
        ez = ez && c[k].state.eta[x] == 0;
        zz = zz && c[k].state.zeta[x] == 0;
      }
      eta_zero[k] += ez ? 1 : 0;
      zeta_zero[k] += zz ? 1 : 0;
    }
  }
  for (int k = 0; k < 2; ++k) {
    const double a = eta[k] / double(n), b = voter[k] / double(n);
    CHECK(std::abs(a - b) < 3 * se_diff(a, b, n));
    const double c = zeta[k] / double(n), d = contact[k] / double(n);
    CHECK(std::abs(c - d) < 3 * se_diff(c, d, n));
    const double ez = eta_zero[k] / double(n), zz = zeta_zero[k] / double(n);
    CHECK(ez <= zz + 3 * se_diff(ez, zz, n));
  }
}
