#include "percsym/json_io.hpp"

#include "percsym/error.hpp"
#include "percsym/generators.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace percsym {

namespace {

[[noreturn]] void schema(const std::string& what) { throw InvalidArgument("schema: " + what); }

void allow_keys(const Json& j, const std::set<std::string>& keys, const std::string& where) {
  if (!j.is_object()) schema(where + " must be an object");
  for (const auto& [k, v] : j.items())
    if (!keys.count(k)) schema("unknown field '" + k + "' in " + where);
}

const Json& field(const Json& j, const std::string& key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) schema(where + " needs '" + key + "'");
  return *it;
}

int get_int(const Json& j, const std::string& key, const std::string& where) {
  const Json& v = field(j, key, where);
  if (!v.is_number_integer()) schema("'" + key + "' in " + where + " must be an integer");
  return v.get<int>();
}

std::uint64_t get_u64(const Json& v, const std::string& what) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    schema(what + " must be a non-negative integer");
  return v.get<std::uint64_t>();
}

Rational rational_from_json(const Json& v, const std::string& what) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_number_float()) return parse_rational(v.dump());
  schema(what + " must be a rational string such as \"1/2\"");
}

Vertex vertex_from_json(const Graph& g, const Json& v, const std::string& what) {
  if (v.is_number_integer()) {
    const long long x = v.get<long long>();
    if (x < 0 || std::size_t(x) >= g.n_vertices()) schema(what + " index out of range");
    return static_cast<Vertex>(x);
  }
  if (v.is_array()) {
    Label l;
    for (const Json& c : v) {
      if (!c.is_number_integer()) schema(what + " label must hold integers");
      l.push_back(c.get<int>());
    }
    auto found = g.find_label(l);
    if (!found) schema(what + " label " + v.dump() + " does not exist");
    return *found;
  }
  schema(what + " must be an index or a label array");
}

VertexSet vertex_set_from_json(const Graph& g, const Json& v, const std::string& what) {
  if (!v.is_array()) schema(what + " must be an array");
  std::vector<Vertex> out;
  for (const Json& x : v) out.push_back(vertex_from_json(g, x, what));
  try {
    return VertexSet(std::move(out));
  } catch (const InvalidArgument&) {
    schema(what + " lists a vertex twice");
  }
}

Json vertex_list(const VertexSet& s) {
  Json a = Json::array();
  for (Vertex v : s) a.push_back(v);
  return a;
}

std::string builder_name(GraphSpec::Builder b) {
  using B = GraphSpec::Builder;
  switch (b) {
    case B::path: return "path";
    case B::cycle: return "cycle";
    case B::complete: return "complete";
    case B::hypercube: return "hypercube";
    case B::torus: return "torus";
    case B::bunkbed: return "bunkbed";
    case B::cylinder: return "cylinder";
    case B::explicit_edges: return "explicit";
  }
  return "explicit";
}

std::vector<Permutation> generators_from_json(const Graph& g, const GraphSpec& spec, const Json& j) {
  std::vector<Permutation> out;
  auto add_builtin = [&] {
    for (Permutation& p : builtin_generators(spec)) out.push_back(std::move(p));
  };
  if (j.is_string()) {
    if (j.get<std::string>() != "builtin") schema("generator set name must be \"builtin\"");
    add_builtin();
    return out;
  }
  if (!j.is_array()) schema("generators must be an array or \"builtin\"");
  for (const Json& e : j) {
    if (e.is_string()) {
      if (e.get<std::string>() != "builtin") schema("generator name must be \"builtin\"");
      add_builtin();
    } else if (e.is_array()) {
      Permutation p = permutation_from_json(e);
      if (p.size() != g.n_vertices()) schema("generator length does not match the vertex count");
      out.push_back(std::move(p));
    } else if (e.is_object()) {
      allow_keys(e, {"affine"}, "generator");
      const Json& a = field(e, "affine", "generator");
      allow_keys(a, {"matrix", "offset"}, "affine generator");
      std::vector<std::vector<int>> matrix;
      std::vector<int> offset;
      try {
        matrix = field(a, "matrix", "affine generator").get<std::vector<std::vector<int>>>();
        offset = field(a, "offset", "affine generator").get<std::vector<int>>();
      } catch (const nlohmann::json::exception&) {
        schema("affine matrix and offset must hold integers");
      }
      out.push_back(affine_map(g, matrix, offset));
    } else {
      schema("generator entries must be arrays, objects or \"builtin\"");
    }
  }
  return out;
}

}  // namespace

Json to_json(const GraphSpec& spec) {
  using B = GraphSpec::Builder;
  Json j;
  j["builder"] = builder_name(spec.builder);
  switch (spec.builder) {
    case B::path:
    case B::cycle:
    case B::complete: j["n"] = spec.n; break;
    case B::hypercube: j["d"] = spec.d; break;
    case B::torus:
      j["n"] = spec.n;
      j["m"] = spec.m;
      break;
    case B::bunkbed: j["base"] = to_json(*spec.base); break;
    case B::cylinder:
      j["base"] = to_json(*spec.base);
      j["m"] = spec.m;
      break;
    case B::explicit_edges: {
      j["vertices"] = spec.vertices;
      Json edges = Json::array();
      for (const auto& [u, v] : spec.edge_list) edges.push_back(Json::array({u, v}));
      j["edges"] = edges;
      break;
    }
  }
  return j;
}

GraphSpec graph_spec_from_json(const Json& j) {
  if (!j.is_object()) schema("graph must be an object");
  const Json& b = field(j, "builder", "graph");
  if (!b.is_string()) schema("graph builder must be a string");
  const std::string name = b.get<std::string>();
  if (name == "path" || name == "cycle" || name == "complete") {
    allow_keys(j, {"builder", "n"}, name + " graph");
    const int n = get_int(j, "n", name + " graph");
    return name == "path" ? GraphSpec::path(n) : name == "cycle" ? GraphSpec::cycle(n) : GraphSpec::complete(n);
  }
  if (name == "hypercube") {
    allow_keys(j, {"builder", "d"}, "hypercube graph");
    return GraphSpec::hypercube(get_int(j, "d", "hypercube graph"));
  }
  if (name == "torus") {
    allow_keys(j, {"builder", "n", "m"}, "torus graph");
    return GraphSpec::torus(get_int(j, "n", "torus graph"), get_int(j, "m", "torus graph"));
  }
  if (name == "bunkbed") {
    allow_keys(j, {"builder", "base"}, "bunkbed graph");
    return GraphSpec::bunkbed(graph_spec_from_json(field(j, "base", "bunkbed graph")));
  }
  if (name == "cylinder") {
    allow_keys(j, {"builder", "base", "m"}, "cylinder graph");
    return GraphSpec::cylinder(graph_spec_from_json(field(j, "base", "cylinder graph")),
                               get_int(j, "m", "cylinder graph"));
  }
  if (name == "explicit") {
    allow_keys(j, {"builder", "vertices", "edges"}, "explicit graph");
    const std::uint64_t n = get_u64(field(j, "vertices", "explicit graph"), "vertices");
    const Json& edges = field(j, "edges", "explicit graph");
    if (!edges.is_array()) schema("explicit edges must be an array");
    std::vector<std::pair<Vertex, Vertex>> list;
    for (const Json& e : edges) {
      if (!e.is_array() || e.size() != 2) schema("each edge must be a [u, v] pair");
      list.emplace_back(static_cast<Vertex>(get_u64(e[0], "edge endpoint")),
                        static_cast<Vertex>(get_u64(e[1], "edge endpoint")));
    }
    return GraphSpec::explicit_graph(n, std::move(list));
  }
  schema("unknown graph builder '" + name + "'");
}

GraphSpec parse_graph_spec_text(const std::string& text) {
  if (!text.empty() && text.front() == '{') {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      schema(std::string("graph JSON does not parse: ") + e.what());
    }
    return graph_spec_from_json(j);
  }
  if (text == "point") return GraphSpec::path(1);
  const auto colon = text.find(':');
  if (colon == std::string::npos) schema("graph text must look like cycle:5, torus:5x5 or point");
  const std::string name = text.substr(0, colon);
  const std::string args = text.substr(colon + 1);
  auto num = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) schema("bad number '" + s + "' in graph text");
    return v;
  };
  if (name == "path") return GraphSpec::path(num(args));
  if (name == "cycle") return GraphSpec::cycle(num(args));
  if (name == "complete") return GraphSpec::complete(num(args));
  if (name == "hypercube") return GraphSpec::hypercube(num(args));
  if (name == "torus") {
    const auto x = args.find('x');
    if (x == std::string::npos) schema("torus text must be torus:NxM");
    return GraphSpec::torus(num(args.substr(0, x)), num(args.substr(x + 1)));
  }
  schema("unknown graph builder '" + name + "'");
}

Json to_json(const Permutation& p) {
  Json a = Json::array();
  for (Vertex v : p.image()) a.push_back(v);
  return a;
}

Permutation permutation_from_json(const Json& j) {
  if (!j.is_array()) schema("permutation must be an integer array");
  std::vector<Vertex> image;
  for (const Json& x : j) image.push_back(static_cast<Vertex>(get_u64(x, "permutation entry")));
  try {
    return Permutation(std::move(image));
  } catch (const InvalidArgument& e) {
    schema(std::string("permutation: ") + e.what());
  }
}

Json to_json(const PartitionLaw& law) {
  switch (law.kind) {
    case PartitionLaw::Kind::bond: return "bond";
    case PartitionLaw::Kind::site: return "site";
    case PartitionLaw::Kind::random_cluster: {
      Json j;
      j["type"] = "random-cluster";
      j["q"] = to_string(law.q);
      return j;
    }
  }
  return "bond";
}

PartitionLaw law_from_json(const Json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "bond") return PartitionLaw::bond();
    if (s == "site") return PartitionLaw::site();
    schema("law must be \"bond\", \"site\" or a random-cluster object");
  }
  allow_keys(j, {"type", "q"}, "law");
  const Json& t = field(j, "type", "law");
  if (!t.is_string() || t.get<std::string>() != "random-cluster") schema("law type must be \"random-cluster\"");
  return PartitionLaw::random_cluster(rational_from_json(field(j, "q", "law"), "q"));
}

Json to_json(const Scenario& sc) {
  Json j;
  j["name"] = sc.name;
  j["graph"] = to_json(sc.graph);
  j["v_plus"] = vertex_list(sc.pair.v_plus);
  j["v_minus"] = vertex_list(sc.pair.v_minus);
  j["origin"] = sc.pair.origin;
  Json gens = Json::array();
  for (const Permutation& p : sc.generators) gens.push_back(to_json(p));
  j["generators"] = gens;
  j["restrict"] = sc.restrict;
  j["law"] = to_json(sc.law);
  Json grid = Json::array();
  for (const Rational& p : sc.p_grid) grid.push_back(to_string(p));
  j["p_grid"] = grid;
  j["mode"] = sc.mode == Mode::exact ? "exact" : "mc";
  Json mc;
  mc["n"] = sc.mc.n;
  mc["seed"] = sc.mc.seed;
  mc["level"] = sc.mc.level;
  mc["samples_per_chunk"] = sc.mc.samples_per_chunk;
  j["mc"] = mc;
  return j;
}

Scenario scenario_from_json(const Json& j) {
  allow_keys(j, {"name", "graph", "v_plus", "v_minus", "origin", "generators", "restrict", "law", "p_grid", "mode", "mc"},
             "scenario");
  Scenario sc;
  if (j.contains("name")) {
    if (!j["name"].is_string()) schema("name must be a string");
    sc.name = j["name"].get<std::string>();
  }
  sc.graph = graph_spec_from_json(field(j, "graph", "scenario"));
  const Graph g = build_graph(sc.graph);
  sc.pair.v_plus = vertex_set_from_json(g, field(j, "v_plus", "scenario"), "v_plus");
  sc.pair.v_minus = j.contains("v_minus") ? vertex_set_from_json(g, j["v_minus"], "v_minus") : VertexSet{};
  if (j.contains("origin")) {
    sc.pair.origin = vertex_from_json(g, j["origin"], "origin");
  } else {
    if (sc.pair.v_plus.empty()) schema("v_plus must not be empty");
    sc.pair.origin = sc.pair.v_plus[0];
  }
  try {
    sc.pair.validate(g.n_vertices());
  } catch (const InvalidArgument& e) {
    schema(e.what());
  }
  if (j.contains("generators")) sc.generators = generators_from_json(g, sc.graph, j["generators"]);
  if (j.contains("restrict")) {
    if (!j["restrict"].is_boolean()) schema("restrict must be a boolean");
    sc.restrict = j["restrict"].get<bool>();
  }
  if (j.contains("law")) sc.law = law_from_json(j["law"]);
  if (j.contains("p_grid")) {
    if (!j["p_grid"].is_array()) schema("p_grid must be an array");
    for (const Json& p : j["p_grid"]) {
      Rational r = rational_from_json(p, "p_grid entry");
      if (!(r > 0 && r < 1)) schema("p_grid entries must lie strictly between 0 and 1");
      sc.p_grid.push_back(r);
    }
  }
  if (j.contains("mode")) {
    if (!j["mode"].is_string()) schema("mode must be \"exact\" or \"mc\"");
    try {
      sc.mode = parse_mode(j["mode"].get<std::string>());
    } catch (const InvalidArgument& e) {
      schema(e.what());
    }
  }
  if (j.contains("mc")) {
    const Json& mc = j["mc"];
    allow_keys(mc, {"n", "seed", "level", "samples_per_chunk"}, "mc");
    if (mc.contains("n")) sc.mc.n = get_u64(mc["n"], "mc.n");
    if (mc.contains("seed")) sc.mc.seed = get_u64(mc["seed"], "mc.seed");
    if (mc.contains("samples_per_chunk")) sc.mc.samples_per_chunk = get_u64(mc["samples_per_chunk"], "mc.samples_per_chunk");
    if (mc.contains("level")) {
      if (!mc["level"].is_number()) schema("mc.level must be 0.95 or 0.99");
      sc.mc.level = mc["level"].get<double>();
    }
    if (sc.mc.n < 1) schema("mc.n must be >= 1");
    if (sc.mc.samples_per_chunk < 1) schema("mc.samples_per_chunk must be >= 1");
    if (sc.mc.level != 0.95 && sc.mc.level != 0.99) schema("mc.level must be 0.95 or 0.99");
  }
  return sc;
}

Scenario load_scenario(const std::string& path_or_builtin) {
  const std::string prefix = "builtin:";
  if (path_or_builtin.rfind(prefix, 0) == 0) return builtin_scenario(path_or_builtin.substr(prefix.size()));
  std::ifstream in(path_or_builtin);
  if (!in) throw InvalidArgument("cannot read scenario file '" + path_or_builtin + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument("scenario file '" + path_or_builtin + "' is not valid JSON: " + e.what());
  }
  Scenario sc = scenario_from_json(j);
  if (!j.contains("name")) {
    const auto slash = path_or_builtin.find_last_of('/');
    sc.name = path_or_builtin.substr(slash == std::string::npos ? 0 : slash + 1);
  }
  return sc;
}

Json to_json(const JointOutcomePolynomial& poly) {
  Json j;
  j[poly.law.kind == PartitionLaw::Kind::site ? "vertices" : "edges"] = poly.units;
  j["law"] = to_json(poly.law);
  j["n_plus"] = poly.n_plus;
  j["n_minus"] = poly.n_minus;
  Json outcomes = Json::array();
  for (const auto& [o, counts] : poly.counts) {
    Json e;
    e["a"] = o.a;
    e["b"] = o.b;
    Json c = Json::array();
    if (poly.cluster_slots == 1) {
      for (std::uint64_t x : counts) c.push_back(x);
    } else {
      for (unsigned k = 0; k <= poly.units; ++k) {
        Json row = Json::array();
        for (unsigned s = 0; s < poly.cluster_slots; ++s) row.push_back(counts[k * poly.cluster_slots + s]);
        c.push_back(row);
      }
    }
    e["counts"] = c;
    outcomes.push_back(e);
  }
  j["outcomes"] = outcomes;
  return j;
}

JointOutcomePolynomial polynomial_from_json(const Json& j) {
  allow_keys(j, {"edges", "vertices", "law", "n_plus", "n_minus", "outcomes"}, "polynomial");
  JointOutcomePolynomial poly;
  poly.law = j.contains("law") ? law_from_json(j["law"]) : PartitionLaw::bond();
  const bool site = poly.law.kind == PartitionLaw::Kind::site;
  poly.units = static_cast<unsigned>(get_u64(field(j, site ? "vertices" : "edges", "polynomial"), "unit count"));
  if (poly.units > 63) schema("unit count too large");
  const Json& outcomes = field(j, "outcomes", "polynomial");
  if (!outcomes.is_array()) schema("outcomes must be an array");
  unsigned max_a = 0, max_b = 0;
  bool first = true;
  for (const Json& e : outcomes) {
    allow_keys(e, {"a", "b", "counts"}, "outcome");
    Outcome o{static_cast<unsigned>(get_u64(field(e, "a", "outcome"), "a")),
              static_cast<unsigned>(get_u64(field(e, "b", "outcome"), "b"))};
    max_a = std::max(max_a, o.a);
    max_b = std::max(max_b, o.b);
    const Json& c = field(e, "counts", "outcome");
    if (!c.is_array() || c.size() != poly.units + 1) schema("counts must have units + 1 entries");
    std::vector<std::uint64_t> flat;
    if (poly.law.kind == PartitionLaw::Kind::random_cluster) {
      const std::size_t slots = c[0].is_array() ? c[0].size() : 0;
      if (slots == 0) schema("random-cluster counts must be [k][c] arrays");
      if (first) poly.cluster_slots = static_cast<unsigned>(slots);
      if (slots != poly.cluster_slots) schema("random-cluster rows must share one length");
      for (const Json& row : c) {
        if (!row.is_array() || row.size() != slots) schema("random-cluster rows must share one length");
        for (const Json& x : row) flat.push_back(get_u64(x, "count"));
      }
    } else {
      for (const Json& x : c) flat.push_back(get_u64(x, "count"));
    }
    if (!poly.counts.emplace(o, std::move(flat)).second) schema("outcome listed twice");
    first = false;
  }
  poly.n_plus = j.contains("n_plus") ? static_cast<unsigned>(get_u64(j["n_plus"], "n_plus")) : max_a;
  poly.n_minus = j.contains("n_minus") ? static_cast<unsigned>(get_u64(j["n_minus"], "n_minus")) : max_b;
  return poly;
}

Json estimate_record(const std::string& quantity, const McEstimate& est, std::uint64_t seed) {
  Json j;
  j["quantity"] = quantity;
  j["n"] = est.n_samples;
  j["estimate"] = est.estimate;
  j["ci"] = Json::array({est.lo, est.hi});
  j["level"] = est.level;
  j["seed"] = seed;
  return j;
}

Json to_json(const VertexSetPair& pair) {
  Json j;
  j["v_plus"] = vertex_list(pair.v_plus);
  j["v_minus"] = vertex_list(pair.v_minus);
  j["origin"] = pair.origin;
  return j;
}

Json to_json(const ConditionReport& r) {
  Json j;
  j["passed"] = r.passed();
  j["group_order"] = r.group_order;
  j["automorphisms_verified"] = r.automorphisms_verified;
  j["gamma1"] = r.gamma1;
  j["gamma2"] = r.gamma2;
  j["gamma3"] = r.gamma3;
  j["swap_transitive"] = r.swap_transitive;
  j["finite"] = r.finite;
  j["preservers"] = r.preservers;
  j["swappers"] = r.swappers;
  j["diagnostics"] = r.diagnostics;
  return j;
}

}  // namespace percsym
