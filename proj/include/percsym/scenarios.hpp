#pragma once

#include "percsym/exact.hpp"
#include "percsym/graph.hpp"
#include "percsym/monte_carlo.hpp"
#include "percsym/permutation.hpp"
#include "percsym/rational.hpp"
#include "percsym/stats.hpp"
#include "percsym/symmetry.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace percsym {

enum class Mode { exact, mc };
std::string to_string(Mode m);  // "EXACT" / "MC"
Mode parse_mode(const std::string& text);

struct McParams {
  std::uint64_t n = 100000;
  std::uint64_t seed = 1;
  std::uint64_t samples_per_chunk = 4096;
  double level = 0.99;
};

struct RunOptions {
  Mode mode = Mode::exact;
  unsigned cap_bits = 26;
  unsigned threads = 0;
  McParams mc;
  VerdictPolicy policy;
};

// Outcome of a whole run; maps one-to-one onto process exit codes.
enum class Status { pass, violation, inconclusive, precondition_failed, usage_error };
int exit_code(Status s);
std::string to_string(Status s);

// One reported quantity. Exact claims carry a Rational, MC claims an
// estimate with its interval. `passed` / `verdict` are set only for
// quantities that are checked (inequalities, identities); plain data rows
// leave both empty.
struct Claim {
  std::string quantity;
  std::string p;  // "" when the quantity does not depend on p
  Mode mode = Mode::exact;
  std::optional<Rational> exact;
  std::optional<McEstimate> mc;
  std::optional<bool> passed;
  std::optional<Verdict> verdict;
  std::optional<std::uint64_t> seed;  // MC claims
  std::vector<std::pair<std::string, std::string>> extra;
};

struct LabelledConditions {
  std::string label;
  VertexSetPair pair;
  ConditionReport report;
};

struct SuiteReport {
  std::string name;
  std::string kind;
  std::vector<LabelledConditions> conditions;
  std::vector<Claim> claims;
  std::vector<std::string> notes;
  bool precondition_failed = false;

  // precondition failure, then any failed exact check or MC violation, then
  // any inconclusive verdict.
  Status status() const;
};

// A concrete symmetric instance: graph, sets, group generators, law and the
// p-grid to evaluate on.
struct Scenario {
  std::string name = "scenario";
  GraphSpec graph;
  VertexSetPair pair;
  std::vector<Permutation> generators;
  bool restrict = false;  // use only the elements that preserve or swap the sets
  PartitionLaw law;
  std::vector<Rational> p_grid;
  Mode mode = Mode::exact;
  McParams mc;
};

// Names accepted by builtin_scenario().
std::vector<std::string> builtin_scenario_names();
// Throws InvalidArgument for an unknown name.
Scenario builtin_scenario(const std::string& name);

// Symmetry check only. NonAutomorphismElement and ClosureCapExceeded are
// reported as precondition failures.
SuiteReport check_scenario_symmetry(const Scenario& sc);

// Symmetry check, then the exact or MC pipeline on every p of the grid:
// expectations, domination margins, identity residuals and the ratio
// identity (exact) or estimates with verdicts (MC). Nothing past the
// symmetry check runs if it fails.
SuiteReport run_scenario(const Scenario& sc, const RunOptions& opts);

// ---- hypercube ----------------------------------------------------------

// c_0..c_d at one p. Exact mode also compares every vertex at distance i
// with the representative (1,..,1,0,..,0).
struct CValues {
  Mode mode = Mode::exact;
  std::vector<Rational> exact;
  std::vector<McEstimate> mc;
  bool invariant = true;
  std::vector<std::string> diagnostics;
};

CValues hypercube_c_values(int d, const Rational& p, const RunOptions& opts);

// Delta^k[c](l) = sum_i (-1)^(k-i) C(k,i) c_(l+i). Throws InvalidArgument
// if l + k is past the end of c.
Rational discrete_derivative(const std::vector<Rational>& c, unsigned k, unsigned l);
// The same sum as coefficients on c_0..c_d.
std::vector<Rational> discrete_derivative_coefficients(int d, unsigned k, unsigned l);
// sum_i sum_j c_(i+j) (-1)^i C(k,i) C(l,j) as coefficients on c_0..c_d.
std::vector<Rational> double_sum_coefficients(int d, unsigned k, unsigned l);

// Sets V+- on L2^d whose expectation gap E|C+| - E|C-| equals the double
// sum (relation "double-sum") or A -+ B with A = (-1)^k Delta^k[c](0),
// B = (-1)^k Delta^k[c](l) ("difference" / "sum").
struct HypercubeRelation {
  std::string label;
  unsigned k = 0;
  unsigned l = 0;
  VertexSetPair pair;
  std::vector<Permutation> generators;
  std::vector<Rational> coefficients;  // gap as a combination of c_0..c_d
};
std::vector<HypercubeRelation> hypercube_relations(int d);

SuiteReport hypercube_inequality_report(int d, const std::vector<Rational>& p_grid, const RunOptions& opts);

// ---- torus, bunkbed, layered ------------------------------------------

enum class Z2Relation { diagonal, straight, line };  // relations 1, 2 and the axis line
struct Z2Options {
  Z2Relation relation = Z2Relation::diagonal;
  int period = 1;                               // line: step along the first axis
  std::pair<int, int> offset{0, 1};             // line: V- = offset + V+
};
Scenario z2_scenario(int n, const Z2Options& z);
SuiteReport z2_relation_report(int n, const Z2Options& z, const std::vector<Rational>& p_grid,
                               const RunOptions& opts);

Scenario bunkbed_scenario(const GraphSpec& base);
SuiteReport bunkbed_report(const GraphSpec& base, const std::vector<Rational>& p_grid, const RunOptions& opts);

enum class LayerChoice { a, b, c };
struct LayerParams {
  LayerChoice choice = LayerChoice::a;
  int k = 1;
  int period = 1;  // the residue period n of choices (b) and (c)
};
// Throws InvalidArgument when the divisibility or range conditions fail.
Scenario layered_scenario(const GraphSpec& base, int m, const LayerParams& params);
SuiteReport layered_report(const GraphSpec& base, int m, const LayerParams& params,
                           const std::vector<Rational>& p_grid, const RunOptions& opts);

// ---- group identities ---------------------------------------------------

std::vector<std::string> group_case_names();  // "d4-on-c4", "bunkbed-c3"
// Orbit-product identity for all pairs, double counting for `trials`
// random family pairs, equal-size transitive sets and swapped stabilizers
// exhaustively. Throws InvalidArgument for an unknown case.
SuiteReport group_theorem_report(const std::string& group_case, unsigned trials, std::uint64_t seed);

}  // namespace percsym
