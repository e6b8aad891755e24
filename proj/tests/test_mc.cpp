#include "percsym/graph.hpp"
#include "percsym/monte_carlo.hpp"
#include "percsym/philox.hpp"
#include "percsym/stats.hpp"

#include <doctest.h>

#include <cmath>

using namespace percsym;

namespace {

VertexSetPair layers(std::size_t base) {
  std::vector<Vertex> lo, hi;
  for (Vertex i = 0; i < base; ++i) {
    lo.push_back(2 * i);
    hi.push_back(2 * i + 1);
  }
  return {VertexSet(lo), VertexSet(hi), 0};
}

SeedSpec seeded(std::uint64_t seed, std::uint64_t chunk = 4096, unsigned threads = 0) {
  SeedSpec s;
  s.master_seed = seed;
  s.samples_per_chunk = chunk;
  s.threads = threads;
  return s;
}

}  // namespace

TEST_SUITE("mc") {

TEST_CASE("philox known answers") {
  using C = Philox4x32::Counter;
  CHECK(Philox4x32(0)(C{0, 0, 0, 0}) == C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(Philox4x32(0xffffffffffffffffull)(C{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}) ==
        C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(Philox4x32(0x299f31d0a4093822ull)(C{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}) ==
        C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
  CHECK(to_unit_interval(0) == 0.0);
  CHECK(to_unit_interval(~std::uint64_t{0}) < 1.0);
}

TEST_CASE("edge states are pure functions of the key") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    CHECK(edge_open(7, s, 3, 0.5) == edge_open(7, s, 3, 0.5));
    CHECK_FALSE(edge_open(7, s, 3, 0.0));
    CHECK(edge_open(7, s, 3, 1.0));
  }
  // an open edge stays open at a larger p (monotone coupling)
  for (std::uint64_t s = 0; s < 200; ++s)
    if (edge_open(1, s, 0, 0.3)) CHECK(edge_open(1, s, 0, 0.6));
}

TEST_CASE("extreme p") {
  Graph c4 = build_graph(GraphSpec::cycle(4));
  int single = 0, full = 0;
  for (std::uint64_t s = 0; s < 1000; ++s) {
    if (sample_cluster(c4, 0, 1e-4, 9, s).size() == 1) ++single;
    if (sample_cluster(c4, 0, 1 - 1e-4, 9, s).size() == 4) ++full;
  }
  CHECK(single >= 990);
  CHECK(full >= 990);
}

TEST_CASE("lazy and eager sampling agree sample by sample") {
  for (const GraphSpec& spec :
       {GraphSpec::path(5), GraphSpec::cycle(8), GraphSpec::complete(6), GraphSpec::hypercube(3),
        GraphSpec::torus(3, 3), GraphSpec::bunkbed(GraphSpec::cycle(5)), GraphSpec::cylinder(GraphSpec::path(2), 5)}) {
    Graph g = build_graph(spec);
    REQUIRE(g.n_edges() <= 20);
    for (double p : {0.1, 0.35, 0.5, 0.8})
      for (std::uint64_t s = 0; s < 300; ++s) {
        Vertex o = static_cast<Vertex>(s % g.n_vertices());
        CHECK(sample_cluster(g, o, p, 42, s) == sample_cluster_eager(g, o, p, 42, s));
      }
  }
}

TEST_CASE("estimate_joint is reproducible and layout independent") {
  Graph g = build_graph(GraphSpec::bunkbed(GraphSpec::cycle(5)));
  VertexSetPair pair = layers(5);
  EmpiricalJoint base = estimate_joint(g, pair, 0.5, 20000, seeded(11));
  CHECK(estimate_joint(g, pair, 0.5, 20000, seeded(11)) == base);
  CHECK(estimate_joint(g, pair, 0.5, 20000, seeded(11, 1, 1)) == base);
  CHECK(estimate_joint(g, pair, 0.5, 20000, seeded(11, 777, 3)) == base);
  CHECK(estimate_joint(g, pair, 0.5, 20000, seeded(11, 100000, 2)) == base);
  CHECK_FALSE(estimate_joint(g, pair, 0.5, 20000, seeded(12)) == base);

  std::uint64_t total = 0;
  for (const auto& [o, c] : base.counts) {
    CHECK(o.a >= 1);
    CHECK(o.a <= 5);
    CHECK(o.b <= 5);
    total += c;
  }
  CHECK(total == 20000);
  CHECK(base.n_samples == 20000);

  EmpiricalJoint one = estimate_joint(g, pair, 0.5, 1, seeded(11));
  CHECK(one.counts.size() == 1);
  CHECK(one.counts.begin()->second == 1);
}

TEST_CASE("connection patterns are layout independent") {
  Graph g = build_graph(GraphSpec::torus(5, 5));
  std::vector<Vertex> targets{1, 2, 6, 12};
  auto a = estimate_connection_patterns(g, 0, targets, 0.4, 10000, seeded(5));
  CHECK(estimate_connection_patterns(g, 0, targets, 0.4, 10000, seeded(5, 333, 2)) == a);
  std::uint64_t total = 0;
  for (const auto& [m, c] : a.counts) total += c;
  CHECK(total == 10000);
}

TEST_CASE("estimate_connection") {
  Graph c4 = build_graph(GraphSpec::bunkbed(GraphSpec::path(2)));
  McEstimate self = estimate_connection(c4, 0, 0, 0.5, 1000, seeded(1));
  CHECK(self.estimate == 1.0);
  CHECK(self.lo == 1.0);
  CHECK(self.hi == 1.0);

  McEstimate adj = estimate_connection(c4, 0, 1, 0.5, 100000, seeded(20240607), 0.99);
  CHECK(adj.lo <= 9.0 / 16);
  CHECK(adj.hi >= 9.0 / 16);
  CHECK(adj.lo <= adj.estimate);
  CHECK(adj.estimate <= adj.hi);
  McEstimate opp = estimate_connection(c4, 0, 3, 0.5, 100000, seeded(20240607), 0.99);
  CHECK(opp.lo <= 7.0 / 16);
  CHECK(opp.hi >= 7.0 / 16);
}

TEST_CASE("torus(7,7) at p = 1/10 separates c(1,0) and c(2,0)") {
  Graph t = build_graph(GraphSpec::torus(7, 7));
  Vertex o = *t.find_label({0, 0});
  McEstimate c10 = estimate_connection(t, o, *t.find_label({1, 0}), 0.1, 100000, seeded(20240607), 0.95);
  McEstimate c20 = estimate_connection(t, o, *t.find_label({2, 0}), 0.1, 100000, seeded(20240607), 0.95);
  CHECK(c10.estimate > c20.estimate);
  CHECK(c10.lo > c20.hi);
}

TEST_CASE("means and linear combinations") {
  Graph c4 = build_graph(GraphSpec::bunkbed(GraphSpec::path(2)));
  EmpiricalJoint emp = estimate_joint(c4, layers(2), 0.5, 100000, seeded(3));
  McEstimate plus = mean_plus(emp, 0.99);
  CHECK(std::abs(plus.estimate - 25.0 / 16) <= 3 * plus.std_error);
  McEstimate minus = mean_minus(emp, 0.99);
  CHECK(std::abs(minus.estimate - 1.0) <= 3 * minus.std_error);
  McEstimate diff = mean_difference(emp, 0.99);
  CHECK(diff.estimate == doctest::Approx(plus.estimate - minus.estimate));
  CHECK(diff.lo <= diff.estimate);

  std::vector<Vertex> targets{1, 3};
  auto pat = estimate_connection_patterns(c4, 0, targets, 0.5, 100000, seeded(3));
  std::vector<double> coef{1.0, -1.0};
  McEstimate lin = estimate_linear(pat, coef, 0.99);
  CHECK(lin.lo <= 2.0 / 16);
  CHECK(lin.hi >= 2.0 / 16);
  McEstimate single = connection_from_patterns(pat, 1, 0.99);
  CHECK(single.lo <= 7.0 / 16);
  CHECK(single.hi >= 7.0 / 16);
}

TEST_CASE("interval helpers") {
  CHECK(normal_two_sided_quantile(0.95) == doctest::Approx(1.959963985).epsilon(1e-9));
  CHECK(normal_two_sided_quantile(0.99) == doctest::Approx(2.575829304).epsilon(1e-9));
  Interval w = wilson_interval(5, 10, 0.95);
  CHECK(w.lo == doctest::Approx(0.236593).epsilon(1e-5));
  CHECK(w.hi == doctest::Approx(0.763407).epsilon(1e-5));
  Interval z = wilson_interval(0, 10, 0.95);
  CHECK(z.lo == doctest::Approx(0.0));
  CHECK(z.hi == doctest::Approx(0.277533).epsilon(1e-5));
  Interval n = normal_interval(1.0, 0.5, 0.95);
  CHECK(n.lo == doctest::Approx(1.0 - 0.5 * 1.959963985));
  CHECK(n.contains(1.0));
}

TEST_CASE("verdict classification") {
  CHECK(classify_nonnegative({0.01, 0.02}, 1000) == Verdict::consistent);
  CHECK(classify_nonnegative({-0.01, 0.02}, 1000) == Verdict::consistent);
  CHECK(classify_nonnegative({-0.02, -0.01}, 1000) == Verdict::violation);
  CHECK(classify_nonnegative({-0.3, 0.3}, 1000) == Verdict::inconclusive);
  CHECK(classify_nonnegative({0.01, 0.02}, 10) == Verdict::inconclusive);
  CHECK(combine(Verdict::consistent, Verdict::inconclusive) == Verdict::inconclusive);
  CHECK(combine(Verdict::inconclusive, Verdict::violation) == Verdict::violation);
  CHECK(combine(Verdict::consistent, Verdict::consistent) == Verdict::consistent);
  CHECK(to_string(Verdict::violation) == "VIOLATION");
}

TEST_CASE("domination verdicts") {
  Graph c4 = build_graph(GraphSpec::bunkbed(GraphSpec::path(2)));
  SUBCASE("symmetric pair at large n") {
    McDomination d = mc_domination_verdict(estimate_joint(c4, layers(2), 0.5, 100000, seeded(8)), 0.99);
    CHECK(d.overall == Verdict::consistent);
    CHECK(d.thresholds.size() == 2);
    CHECK(d.per_threshold_level == doctest::Approx(0.995));
    for (const auto& t : d.thresholds) CHECK(t.verdict == Verdict::consistent);
  }
  SUBCASE("n = 10") {
    McDomination d = mc_domination_verdict(estimate_joint(c4, layers(2), 0.5, 10, seeded(8)), 0.99);
    CHECK(d.overall == Verdict::inconclusive);
  }
  SUBCASE("asymmetric pair") {
    // path 0-1-2-3, V+ = {0, 3}, V- = {1, 2}: margin(2) = p^3 - p^2 = -1/8 at p = 1/2
    Graph p4 = build_graph(GraphSpec::path(4));
    McDomination d = mc_domination_verdict(estimate_joint(p4, {{0, 3}, {1, 2}, 0}, 0.5, 100000, seeded(8)), 0.99);
    CHECK(d.overall == Verdict::violation);
    REQUIRE(d.thresholds.size() == 2);
    CHECK(d.thresholds[0].verdict == Verdict::consistent);
    CHECK(d.thresholds[1].verdict == Verdict::violation);
    CHECK(d.thresholds[1].margin.estimate == doctest::Approx(-0.125).epsilon(0.05));
  }
}

TEST_CASE("95% intervals for the opposite corner are calibrated") {
  Graph c4 = build_graph(GraphSpec::bunkbed(GraphSpec::path(2)));
  int covered = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    McEstimate e = estimate_connection(c4, 0, 3, 0.5, 2000, seeded(seed * 7919), 0.95);
    if (e.lo <= 7.0 / 16 && 7.0 / 16 <= e.hi) ++covered;
  }
  // Binomial(200, 0.95) falls below 180 with probability under 1e-3
  CHECK(covered >= 180);
}

}
