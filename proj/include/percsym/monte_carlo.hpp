#pragma once

#include "percsym/exact.hpp"
#include "percsym/graph.hpp"
#include "percsym/stats.hpp"
#include "percsym/symmetry.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace percsym {

// Every random decision is keyed on (master_seed, sample index, edge index);
// the chunk layout only affects scheduling, never results.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t samples_per_chunk = 4096;
  unsigned threads = 0;  // 0: hardware concurrency

  std::uint64_t chunk_count(std::uint64_t n_samples) const;
};

struct McEstimate {
  std::uint64_t n_samples = 0;
  double estimate = 0;
  double std_error = 0;
  double level = 0.95;
  double lo = 0;
  double hi = 0;
};

struct EmpiricalJoint {
  std::map<Outcome, std::uint64_t> counts;
  std::uint64_t n_samples = 0;
  unsigned n_plus = 0;
  unsigned n_minus = 0;

  friend bool operator==(const EmpiricalJoint&, const EmpiricalJoint&) = default;
};

// Edge state as a pure function of the key: open iff uniform < p.
bool edge_open(std::uint64_t seed, std::uint64_t sample, std::uint32_t edge, double p);

// C_o for one sample, revealing edges lazily during a breadth-first search;
// each edge is drawn at most once. Requires 0 < p < 1.
VertexSet sample_cluster(const Graph& g, Vertex o, double p, std::uint64_t seed, std::uint64_t sample);

// Same sample with the whole configuration drawn up front.
VertexSet sample_cluster_eager(const Graph& g, Vertex o, double p, std::uint64_t seed, std::uint64_t sample);

// n cluster samples binned by (|C+|, |C-|). Requires n >= 1.
EmpiricalJoint estimate_joint(const Graph& g, const VertexSetPair& pair, double p, std::uint64_t n,
                              const SeedSpec& seed);

// Wilson interval for P(o <-> v); v == o gives exactly 1 with [1, 1].
McEstimate estimate_connection(const Graph& g, Vertex o, Vertex v, double p, std::uint64_t n,
                               const SeedSpec& seed, double level = 0.95);

// Counts of the patterns of 1{o <-> targets[i]} (bit i), for paired
// estimates of linear combinations of connection probabilities.
struct ConnectionPatterns {
  std::map<std::uint64_t, std::uint64_t> counts;
  std::uint64_t n_samples = 0;
  std::size_t n_targets = 0;

  friend bool operator==(const ConnectionPatterns&, const ConnectionPatterns&) = default;
};

ConnectionPatterns estimate_connection_patterns(const Graph& g, Vertex o, std::span<const Vertex> targets,
                                                double p, std::uint64_t n, const SeedSpec& seed);

// Per-sample linear combination sum_i coef[i] 1{o <-> targets[i]};
// normal interval at `level`.
McEstimate estimate_linear(const ConnectionPatterns& patterns, std::span<const double> coef, double level);

// Wilson interval for a single target's connection probability.
McEstimate connection_from_patterns(const ConnectionPatterns& patterns, std::size_t target, double level);

// Normal intervals for E|C+|, E|C-| and E(|C+| - |C-|).
McEstimate mean_plus(const EmpiricalJoint& emp, double level);
McEstimate mean_minus(const EmpiricalJoint& emp, double level);
McEstimate mean_difference(const EmpiricalJoint& emp, double level);

struct ThresholdVerdict {
  unsigned threshold = 0;
  McEstimate margin;  // paired estimate of P(|C+| >= t) - P(|C-| >= t)
  Verdict verdict = Verdict::inconclusive;
};

struct McDomination {
  double level = 0.99;
  double per_threshold_level = 0.99;  // after the union bound
  std::vector<ThresholdVerdict> thresholds;
  Verdict overall = Verdict::inconclusive;
};

// Per threshold t: margin from paired differences 1{a >= t} - 1{b >= t}
// within each sample; intervals at level 1 - (1 - level) / T so that all T
// hold jointly.
McDomination mc_domination_verdict(const EmpiricalJoint& emp, double level, const VerdictPolicy& policy = {});

}  // namespace percsym
