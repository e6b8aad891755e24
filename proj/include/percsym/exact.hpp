#pragma once

#include "percsym/graph.hpp"
#include "percsym/rational.hpp"
#include "percsym/symmetry.hpp"

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace percsym {

// Configuration over the canonical edge order: bit k set means edge k open.
// Site law configurations use bit v for vertex v.
using EdgeConfig = std::uint64_t;

struct PartitionLaw {
  enum class Kind { bond, site, random_cluster };
  Kind kind = Kind::bond;
  Rational q{1};  // random-cluster weight per cluster

  static PartitionLaw bond() { return {}; }
  static PartitionLaw site() { return {Kind::site, Rational(1)}; }
  // Throws InvalidArgument unless q > 0.
  static PartitionLaw random_cluster(Rational q);

  std::string name() const;
  friend bool operator==(const PartitionLaw&, const PartitionLaw&) = default;
};

// (|C+|, |C-|)
struct Outcome {
  unsigned a = 0;
  unsigned b = 0;
  friend auto operator<=>(const Outcome&, const Outcome&) = default;
};

// Exact joint law of (|C+|, |C-|) as integer counts of configurations,
// indexed by the number of open units (edges, or vertices for the site law)
// and, for the random-cluster law, by the number of clusters of the whole
// graph. Evaluating at p turns the counts into probabilities.
struct JointOutcomePolynomial {
  PartitionLaw law;
  unsigned units = 0;
  unsigned n_plus = 0;
  unsigned n_minus = 0;
  unsigned cluster_slots = 1;  // 1, or |V| + 1 for random-cluster
  std::map<Outcome, std::vector<std::uint64_t>> counts;  // index k * cluster_slots + c

  std::uint64_t count(const Outcome& o, unsigned k) const;
  // Sum over outcomes of the configurations with k open units, for each k.
  std::vector<std::uint64_t> totals_by_open_units() const;
  // True iff the totals equal C(units, k) for every k.
  bool counts_conserved() const;

  friend bool operator==(const JointOutcomePolynomial&, const JointOutcomePolynomial&) = default;
};

struct EnumerationOptions {
  unsigned cap_bits = 26;  // at most 2^cap_bits configurations
  unsigned threads = 0;    // 0: hardware concurrency
};

// Sweeps every configuration; C_o by search from o over open edges (bond,
// random-cluster) or open vertices (site; a closed o is its own cell).
// Throws CapExceeded when the unit count exceeds cap_bits. The sweep is split
// into disjoint mask ranges; the result does not depend on `threads`.
JointOutcomePolynomial enumerate_joint(const Graph& g, const VertexSetPair& pair, const PartitionLaw& law,
                                       const EnumerationOptions& opts = {});

struct JointPmf {
  unsigned n_plus = 0;
  unsigned n_minus = 0;
  std::map<Outcome, Rational> prob;

  Rational total() const;
};

// Throws InvalidArgument unless 0 < p < 1.
JointPmf eval_joint(const JointOutcomePolynomial& poly, const Rational& p);

// p^k (1 - p)^(units - k) for k = 0..units
std::vector<Rational> binomial_weights(unsigned units, const Rational& p);

struct ExpectedSizes {
  Rational e_plus;
  Rational e_minus;
};
ExpectedSizes expected_sizes(const JointPmf& pmf);

struct DominationReport {
  // margins[t - 1] = P(|C+| >= t) - P(|C-| >= t), t = 1..max(|V+|, |V-|)
  std::vector<Rational> margins;
  bool passed = true;
  bool minus_empty = false;  // V- = {}: the pass is trivial
  std::optional<unsigned> first_negative;
};
DominationReport check_domination(const JointPmf& pmf);

struct TestFunction {
  std::string name;
  std::function<Rational(unsigned)> f;
};

// 1{n >= t} for t = 1..max_size, then n and n^2.
std::vector<TestFunction> default_test_functions(unsigned max_size);

struct IdentityResidual {
  std::string name;
  Rational lhs;  // E(f(|C+|) - f(|C-|))
  Rational rhs;  // E((|C+| - |C-|)(f(|C+|) - f(|C-|)) / (|C+| + |C-|))
  Rational residual;
};
std::vector<IdentityResidual> check_partition_identity(const JointPmf& pmf, std::span<const TestFunction> fs);

struct RatioIdentity {
  Rational lhs;  // E(|C-| / |C+|)
  Rational rhs;  // P(|C-| > 0)
  bool equal() const { return lhs == rhs; }
};
RatioIdentity check_ratio_identity(const JointPmf& pmf);

// Per-vertex counts of configurations (by open-edge number) with o <-> v.
struct ConnectionPolynomial {
  unsigned edges = 0;
  Vertex origin = 0;
  std::vector<std::vector<std::uint64_t>> counts;  // [v][k]
};

ConnectionPolynomial enumerate_connections(const Graph& g, Vertex o, const EnumerationOptions& opts = {});
Rational eval_connection(const ConnectionPolynomial& poly, Vertex v, const Rational& p);

// Exact P_p(o <-> v).
Rational connection_probability(const Graph& g, Vertex o, Vertex v, const Rational& p,
                                const EnumerationOptions& opts = {});

}  // namespace percsym
