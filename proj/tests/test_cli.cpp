#include "percsym/cli.hpp"
#include "percsym/error.hpp"
#include "percsym/exact.hpp"
#include "percsym/json_io.hpp"
#include "percsym/report.hpp"
#include "percsym/scenarios.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace percsym;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "percsym");
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "percsym-tests";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("hypercube with a JSON report") {
  fs::path json = scratch("cube.json");
  Run r = cli({"hypercube", "--d", "3", "--p", "1/2", "--mode", "exact", "--json", json.string()});
  CHECK(r.code == 0);
  Json j = Json::parse(slurp(json));
  CHECK(j["schema_version"] == 1);
  CHECK(j["command"] == "hypercube");
  CHECK(j["status"] == "PASS");
  CHECK(j["exit_code"] == 0);
  CHECK(j["run"]["mode"] == "EXACT");
  for (const Json& c : j["claims"]) {
    CHECK(c["mode"] == "EXACT");
    CHECK(c["value"].is_string());
  }
}

TEST_CASE("check-symmetry on the path(3) bunkbed") {
  Run r = cli({"check-symmetry", "--scenario", "builtin:bunkbed-path3"});
  CHECK(r.code == 3);
  CHECK(r.out.find("PRECONDITION") != std::string::npos);
  CHECK(cli({"check-symmetry", "--scenario", "builtin:bunkbed-cycle3"}).code == 0);
}

TEST_CASE("verify-group-theorem") {
  fs::path json = scratch("group.json");
  Run r = cli({"verify-group-theorem", "--group", "d4-on-c4", "--trials", "100", "--seed", "7", "--json",
               json.string()});
  CHECK(r.code == 0);
  Json j = Json::parse(slurp(json));
  int identities = 0;
  for (const Json& c : j["claims"]) {
    std::string q = c["quantity"];
    if (q.rfind("double-counting[", 0) == 0) {
      ++identities;
      CHECK(c["verdict"] == "PASS");
    }
  }
  CHECK(identities == 100);
  CHECK(cli({"verify-group-theorem", "--group", "bunkbed-c3"}).code == 0);
}

TEST_CASE("usage errors exit 4") {
  CHECK(cli({}).code == 4);
  CHECK(cli({"frobnicate"}).code == 4);
  CHECK(cli({"hypercube"}).code == 4);
  CHECK(cli({"hypercube", "--d", "0"}).code == 4);
  CHECK(cli({"hypercube", "--d", "3", "--p", "3/2"}).code == 4);
  CHECK(cli({"hypercube", "--d", "3", "--p", "banana"}).code == 4);
  CHECK(cli({"hypercube", "--d", "3", "--level", "0.9"}).code == 4);
  CHECK(cli({"hypercube", "--d", "3", "--mode", "sideways"}).code == 4);
  CHECK(cli({"verify-identity", "--scenario", "/nonexistent/file.json"}).code == 4);
  CHECK(cli({"verify-identity", "--scenario", "builtin:nope"}).code == 4);
  CHECK(cli({"layered", "--m", "8", "--choice", "b", "--period", "3"}).code == 4);
  CHECK(cli({"z2", "--relation", "7"}).code == 4);
  CHECK(cli({"bunkbed", "--base", "wheel:5"}).code == 4);
  CHECK(cli({"mc", "--scenario", "builtin:site-bunkbed-cycle3"}).code == 4);
  fs::path bad = scratch("bad.json");
  spit(bad, "{\"graph\": {\"builder\": \"cycle\", \"n\": 4}, \"v_plus\": [0], \"colour\": 1}");
  Run r = cli({"verify-identity", "--scenario", bad.string()});
  CHECK(r.code == 4);
  CHECK(r.err.find("colour") != std::string::npos);
  spit(bad, "{ not json");
  CHECK(cli({"verify-identity", "--scenario", bad.string()}).code == 4);
}

TEST_CASE("help exits 0") {
  Run r = cli({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("hypercube") != std::string::npos);
  CHECK(cli({"z2", "--help"}).code == 0);
}

TEST_CASE("inconclusive and pass exit codes") {
  CHECK(cli({"mc", "--scenario", "builtin:bunkbed-path2", "--n", "10"}).code == 2);
  CHECK(cli({"mc", "--scenario", "builtin:bunkbed-path2", "--n", "20000", "--seed", "3"}).code == 0);
  CHECK(cli({"verify-identity", "--scenario", "builtin:bunkbed-path2"}).code == 0);
  CHECK(cli({"verify-identity", "--scenario", "builtin:bunkbed-path2", "--mode", "mc", "--n", "20000"}).code == 0);
  CHECK(cli({"bunkbed", "--base", "path:3"}).code == 3);
  CHECK(cli({"bunkbed", "--base", "cycle:5", "--p", "1/2"}).code == 0);
  CHECK(cli({"layered", "--m", "8", "--choice", "b", "--period", "2", "--k", "1"}).code == 0);
  CHECK(cli({"z2", "--side", "3", "--relation", "2", "--p", "1/2"}).code == 0);
  CHECK(cli({"z2", "--side", "3", "--relation", "line", "--offset", "0,1", "--p", "1/2"}).code == 0);
  CHECK(cli({"hypercube", "--d", "4", "--cap", "20"}).code == 3);
  CHECK(cli({"hypercube", "--d", "4", "--mode", "mc", "--n", "20000"}).code == 0);
}

TEST_CASE("exit code matches the report status") {
  fs::path json = scratch("mc.json");
  for (const char* n : {"10", "50000"}) {
    Run r = cli({"mc", "--scenario", "builtin:bunkbed-path2", "--n", n, "--json", json.string()});
    Json j = Json::parse(slurp(json));
    CHECK(j["exit_code"] == r.code);
  }
}

TEST_CASE("JSON reports round-trip byte for byte") {
  fs::path json = scratch("rt.json");
  for (std::vector<std::string> args :
       {std::vector<std::string>{"verify-identity", "--scenario", "builtin:rc-bunkbed-path2-q1/2"},
        std::vector<std::string>{"mc", "--scenario", "builtin:bunkbed-path2", "--n", "5000"},
        std::vector<std::string>{"enumerate", "--scenario", "builtin:site-bunkbed-cycle3"},
        std::vector<std::string>{"check-symmetry", "--scenario", "builtin:bunkbed-path3"},
        std::vector<std::string>{"hypercube", "--d", "2", "--mode", "mc", "--n", "1000"}}) {
    args.push_back("--json");
    args.push_back(json.string());
    cli(args);
    std::string text = slurp(json);
    REQUIRE_FALSE(text.empty());
    CHECK(dump_report(Json::parse(text)) == text);
  }
}

TEST_CASE("MC claims carry their intervals and seed") {
  fs::path json = scratch("mcclaims.json");
  cli({"mc", "--scenario", "builtin:bunkbed-path2", "--n", "5000", "--seed", "99", "--json", json.string()});
  Json j = Json::parse(slurp(json));
  CHECK(j["run"]["n"] == 5000);
  CHECK(j["run"]["seed"] == 99);
  for (const Json& c : j["claims"]) {
    CHECK(c["mode"] == "MC");
    CHECK(c["ci"].size() == 2);
    CHECK(c["ci"][0].get<double>() <= c["estimate"].get<double>());
    CHECK(c["estimate"].get<double>() <= c["ci"][1].get<double>());
    CHECK(c["seed"] == 99);
  }
  // same seed: identical report apart from the clock
  fs::path again = scratch("mcclaims2.json");
  cli({"mc", "--scenario", "builtin:bunkbed-path2", "--n", "5000", "--seed", "99", "--threads", "1", "--json",
       again.string()});
  Json k = Json::parse(slurp(again));
  CHECK(j["claims"] == k["claims"]);
}

TEST_CASE("CSV output") {
  fs::path csv = scratch("out.csv");
  CHECK(cli({"bunkbed", "--base", "path:2", "--p", "1/2", "--csv", csv.string()}).code == 0);
  std::istringstream in(slurp(csv));
  std::string line;
  std::getline(in, line);
  CHECK(line == "scenario,p,quantity,value,lo,hi,mode,verdict");
  bool seen = false;
  while (std::getline(in, line))
    if (line.find("E|C+|,25/16,") != std::string::npos) {
      seen = true;
      CHECK(line.find(",EXACT,") != std::string::npos);
    }
  CHECK(seen);
}

TEST_CASE("enumerate emits the polynomial") {
  fs::path json = scratch("enum.json");
  CHECK(cli({"enumerate", "--scenario", "builtin:bunkbed-path2", "--p", "1/2", "--json", json.string()}).code == 0);
  Json j = Json::parse(slurp(json));
  JointOutcomePolynomial poly = polynomial_from_json(j["data"]["polynomial"]);
  Scenario sc = builtin_scenario("bunkbed-path2");
  CHECK(poly == enumerate_joint(build_graph(sc.graph), sc.pair, sc.law));
  CHECK(to_json(poly) == j["data"]["polynomial"]);
  CHECK(j["data"]["polynomial"]["edges"] == 4);
}

TEST_CASE("polynomial JSON round trip for every law") {
  Scenario sc = builtin_scenario("bunkbed-cycle3");
  Graph g = build_graph(sc.graph);
  for (const PartitionLaw& law :
       {PartitionLaw::bond(), PartitionLaw::site(), PartitionLaw::random_cluster(parse_rational("2"))}) {
    JointOutcomePolynomial poly = enumerate_joint(g, sc.pair, law);
    Json j = to_json(poly);
    CHECK(j.contains(law.kind == PartitionLaw::Kind::site ? "vertices" : "edges"));
    CHECK(polynomial_from_json(j) == poly);
    CHECK(polynomial_from_json(Json::parse(j.dump())) == poly);
  }
  CHECK_THROWS_AS(polynomial_from_json(Json::parse("{\"edges\": 1, \"outcomes\": [{\"a\": 1, \"b\": 0, \"counts\": [1]}]}")),
                  InvalidArgument);
}

TEST_CASE("scenario files") {
  SUBCASE("labels, affine generators and a p-grid") {
    fs::path file = scratch("torus.json");
    spit(file, R"({
  "graph": {"builder": "torus", "n": 3, "m": 3},
  "v_plus": [[0, 0], [1, 1]],
  "v_minus": [[1, 0], [0, 1]],
  "origin": [0, 0],
  "generators": [{"affine": {"matrix": [[0, 1], [1, 0]], "offset": [0, 0]}},
                 {"affine": {"matrix": [[-1, 0], [0, 1]], "offset": [1, 0]}}],
  "law": "bond",
  "p_grid": ["1/2"],
  "mode": "exact"
})");
    Scenario sc = load_scenario(file.string());
    CHECK(sc.name == "torus.json");
    Scenario ref = z2_scenario(3, {});
    CHECK(sc.pair.v_plus == ref.pair.v_plus);
    CHECK(sc.pair.v_minus == ref.pair.v_minus);
    CHECK(cli({"verify-identity", "--scenario", file.string()}).code == 0);
    CHECK(cli({"check-symmetry", "--scenario", file.string()}).code == 0);
  }
  SUBCASE("builtin generators and defaults") {
    fs::path file = scratch("bb.json");
    spit(file, R"({"name": "mine", "graph": {"builder": "bunkbed", "base": {"builder": "cycle", "n": 4}},
                   "v_plus": [0, 2, 4, 6], "v_minus": [1, 3, 5, 7], "generators": "builtin",
                   "law": {"type": "random-cluster", "q": "2"}, "p_grid": ["1/3", "0.5"]})");
    Scenario sc = load_scenario(file.string());
    CHECK(sc.name == "mine");
    CHECK(sc.pair.origin == 0);
    CHECK(sc.law == PartitionLaw::random_cluster(2));
    CHECK(sc.p_grid == std::vector<Rational>{parse_rational("1/3"), parse_rational("1/2")});
    CHECK(cli({"verify-identity", "--scenario", file.string()}).code == 0);
  }
  SUBCASE("a non-automorphism generator") {
    fs::path file = scratch("nonauto.json");
    spit(file, R"({"graph": {"builder": "path", "n": 3}, "v_plus": [0], "v_minus": [1],
                   "generators": [[1, 0, 2]]})");
    CHECK(cli({"check-symmetry", "--scenario", file.string()}).code == 3);
  }
  SUBCASE("schema violations") {
    for (const char* text :
         {R"({"graph": {"builder": "cycle", "n": 4}, "v_plus": [0], "v_minus": [0]})",
          R"({"graph": {"builder": "cycle", "n": 4}, "v_plus": [0], "origin": 2})",
          R"({"graph": {"builder": "cycle", "n": 4}, "v_plus": [9]})",
          R"({"graph": {"builder": "cycle", "n": 4, "d": 2}, "v_plus": [0]})",
          R"({"graph": {"builder": "cycle", "n": 4}, "v_plus": [0], "p_grid": ["1"]})",
          R"({"graph": {"builder": "cycle", "n": 4}, "v_plus": [0], "mode": "fast"})",
          R"({"graph": {"builder": "cycle", "n": 4}, "v_plus": [0], "mc": {"level": 0.9}})",
          R"({"graph": {"builder": "cycle", "n": 4}, "v_plus": [0], "generators": [[0, 1]]})",
          R"({"graph": {"builder": "cycle", "n": 4}, "v_plus": [0], "law": {"type": "random-cluster", "q": "0"}})",
          R"({"v_plus": [0]})"}) {
      CAPTURE(text);
      CHECK_THROWS_AS(scenario_from_json(Json::parse(text)), InvalidArgument);
    }
  }
}

TEST_CASE("scenario JSON round trip") {
  for (const std::string& name : builtin_scenario_names()) {
    CAPTURE(name);
    Scenario sc = builtin_scenario(name);
    Json j = to_json(sc);
    Scenario back = scenario_from_json(j);
    CHECK(to_json(back) == j);
    CHECK(back.pair.v_plus == sc.pair.v_plus);
    CHECK(back.generators == sc.generators);
  }
}

TEST_CASE("graph spec text") {
  CHECK(parse_graph_spec_text("torus:5x4").m == 4);
  CHECK(build_graph(parse_graph_spec_text("point")).n_vertices() == 1);
  CHECK(build_graph(parse_graph_spec_text("hypercube:3")).n_edges() == 12);
  CHECK(build_graph(parse_graph_spec_text(R"({"builder": "explicit", "vertices": 3, "edges": [[0, 1], [1, 2]]})"))
            .n_edges() == 2);
  CHECK_THROWS_AS(parse_graph_spec_text("cycle:x"), InvalidArgument);
  CHECK_THROWS_AS(parse_graph_spec_text("{"), InvalidArgument);
}

TEST_CASE("estimate records") {
  McEstimate e;
  e.n_samples = 10;
  e.estimate = 0.5;
  e.lo = 0.2;
  e.hi = 0.8;
  e.level = 0.95;
  Json j = estimate_record("c[1]", e, 4);
  CHECK(j.dump() == R"({"quantity":"c[1]","n":10,"estimate":0.5,"ci":[0.2,0.8],"level":0.95,"seed":4})");
}

}
