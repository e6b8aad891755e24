#pragma once

#include "percsym/exact.hpp"
#include "percsym/graph.hpp"
#include "percsym/monte_carlo.hpp"
#include "percsym/permutation.hpp"
#include "percsym/scenarios.hpp"
#include "percsym/symmetry.hpp"

#include <json.hpp>

#include <string>

namespace percsym {

using Json = nlohmann::ordered_json;

// Schema violations throw InvalidArgument with the offending field named.

Json to_json(const GraphSpec& spec);
GraphSpec graph_spec_from_json(const Json& j);
// "path:4", "cycle:5", "complete:4", "hypercube:3", "torus:5x5", "point",
// or a GraphSpec JSON object.
GraphSpec parse_graph_spec_text(const std::string& text);

Json to_json(const Permutation& p);
Permutation permutation_from_json(const Json& j);

Json to_json(const PartitionLaw& law);
PartitionLaw law_from_json(const Json& j);

// Canonical form: vertices and generators as plain indices.
Json to_json(const Scenario& sc);
// Vertices may be indices or coordinate labels; generator entries may be
// image arrays, "builtin", or {"affine": {"matrix": [[..]], "offset": [..]}};
// "generators": "builtin" is also accepted.
Scenario scenario_from_json(const Json& j);
// Reads and parses a scenario file; "builtin:NAME" selects a builtin scenario.
Scenario load_scenario(const std::string& path_or_builtin);

// {"edges": E, "outcomes": [{"a":.., "b":.., "counts": [n_0, ...]}], ...}.
// "edges" becomes "vertices" for the site law; random-cluster counts are
// [k][c] arrays.
Json to_json(const JointOutcomePolynomial& poly);
JointOutcomePolynomial polynomial_from_json(const Json& j);

// {"quantity", "n", "estimate", "ci": [lo, hi], "level", "seed"}
Json estimate_record(const std::string& quantity, const McEstimate& est, std::uint64_t seed);

Json to_json(const VertexSetPair& pair);
Json to_json(const ConditionReport& report);

}  // namespace percsym
