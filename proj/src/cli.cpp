#include "percsym/cli.hpp"

#include "percsym/error.hpp"
#include "percsym/json_io.hpp"
#include "percsym/report.hpp"
#include "percsym/scenarios.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <ostream>

namespace percsym {

namespace {

struct Flags {
  std::string scenario;
  std::string p;
  std::string mode;
  std::uint64_t n = 100000;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::string json;
  std::string csv;
  unsigned cap = 26;
  double level = 0.99;
  // subcommand parameters
  int d = 3;
  int side = 3;
  std::string relation = "1";
  int period = 1;
  std::string offset = "0,1";
  std::string base;
  int m = 0;
  std::string choice;
  int k = 1;
  std::string group;
  unsigned trials = 100;
};

std::vector<Rational> parse_grid(const std::string& text) {
  std::vector<Rational> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (item.empty()) throw InvalidArgument("empty entry in --p list");
    out.push_back(parse_rational(item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::pair<int, int> parse_pair(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw InvalidArgument("--offset must look like A,B");
  try {
    return {std::stoi(text.substr(0, comma)), std::stoi(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw InvalidArgument("--offset must look like A,B");
  }
}

void add_output(CLI::App* sub, Flags& f) {
  sub->add_option("--json", f.json, "Write the JSON report to PATH");
  sub->add_option("--csv", f.csv, "Write CSV rows to PATH");
}

void add_grid(CLI::App* sub, Flags& f) {
  sub->add_option("--p", f.p, "Comma-separated p values, e.g. 1/4,1/2,3/4");
}

void add_engine(CLI::App* sub, Flags& f, bool with_mode) {
  if (with_mode) sub->add_option("--mode", f.mode, "exact or mc")->check(CLI::IsMember({"exact", "mc"}));
  sub->add_option("--n", f.n, "Monte Carlo sample count")->check(CLI::PositiveNumber);
  sub->add_option("--seed", f.seed, "Master seed");
  sub->add_option("--threads", f.threads, "Worker cap (0: all cores)");
  sub->add_option("--cap", f.cap, "Enumerate at most 2^BITS configurations")->check(CLI::Range(1u, 63u));
  sub->add_option("--level", f.level, "Confidence level, 0.95 or 0.99")
      ->check(CLI::Validator(
          [](std::string& s) -> std::string {
            return s == "0.95" || s == "0.99" ? std::string() : std::string("level must be 0.95 or 0.99");
          },
          "0.95|0.99"));
}

RunOptions options_from(const Flags& f, const CLI::App* sub, Mode default_mode, const McParams& default_mc) {
  RunOptions o;
  const CLI::Option* mode = sub->get_option_no_throw("--mode");
  o.mode = mode && mode->count() ? parse_mode(f.mode) : default_mode;
  o.cap_bits = f.cap;
  o.threads = f.threads;
  o.mc = default_mc;
  if (sub->count("--n")) o.mc.n = f.n;
  if (sub->count("--seed")) o.mc.seed = f.seed;
  if (sub->count("--level")) o.mc.level = f.level;
  return o;
}

void write_file(const std::string& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  body(out);
  if (!out) throw InvalidArgument("failed writing '" + path + "'");
}

SuiteReport enumerate_report(const Scenario& sc, const RunOptions& opts, RunMeta& meta) {
  SuiteReport rep;
  rep.name = sc.name;
  rep.kind = "enumerate";
  const Graph g = build_graph(sc.graph);
  sc.pair.validate(g.n_vertices());
  JointOutcomePolynomial poly;
  try {
    poly = enumerate_joint(g, sc.pair, sc.law, {opts.cap_bits, opts.threads});
  } catch (const CapExceeded& e) {
    rep.notes.push_back(e.what());
    rep.precondition_failed = true;
    return rep;
  }
  Json data;
  data["polynomial"] = to_json(poly);
  meta.payload = data;
  auto claim = [](std::string q, std::string p, Rational v, std::optional<bool> passed = {}) {
    Claim c;
    c.quantity = std::move(q);
    c.p = std::move(p);
    c.exact = std::move(v);
    c.passed = passed;
    return c;
  };
  rep.claims.push_back(claim("configurations", "", Rational(BigInt(1) << poly.units)));
  rep.claims.push_back(claim("count-conservation", "", Rational(0), poly.counts_conserved()));
  for (const Rational& p : sc.p_grid) {
    const std::string ps = to_string(p);
    const JointPmf pmf = eval_joint(poly, p);
    rep.claims.push_back(claim("pmf-total", ps, pmf.total(), pmf.total() == 1));
    for (const auto& [o, pr] : pmf.prob)
      rep.claims.push_back(claim("P(a=" + std::to_string(o.a) + ",b=" + std::to_string(o.b) + ")", ps, pr));
    const ExpectedSizes es = expected_sizes(pmf);
    rep.claims.push_back(claim("E|C+|", ps, es.e_plus));
    rep.claims.push_back(claim("E|C-|", ps, es.e_minus));
  }
  return rep;
}

std::string usage_footer() {
  std::string s = "Builtin scenarios (--scenario builtin:NAME):";
  for (const auto& n : builtin_scenario_names()) s += " " + n;
  s += "\nGroup cases (--group):";
  for (const auto& n : group_case_names()) s += " " + n;
  s += "\nExit codes: 0 pass, 1 violation, 2 inconclusive, 3 precondition or symmetry failure, 4 usage error";
  return s;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Symmetry conditions and cluster-size domination on finite graphs", "percsym"};
  app.require_subcommand(1);
  app.footer(usage_footer());
  Flags f;

  auto* check = app.add_subcommand("check-symmetry", "Check the group conditions of a scenario");
  check->add_option("--scenario", f.scenario, "Scenario file or builtin:NAME")->required();
  add_output(check, f);

  auto* enumerate = app.add_subcommand("enumerate", "Exact joint law of (|C+|, |C-|)");
  enumerate->add_option("--scenario", f.scenario, "Scenario file or builtin:NAME")->required();
  add_grid(enumerate, f);
  add_engine(enumerate, f, false);
  add_output(enumerate, f);

  auto* mc = app.add_subcommand("mc", "Monte Carlo estimates and verdicts for a scenario");
  mc->add_option("--scenario", f.scenario, "Scenario file or builtin:NAME")->required();
  add_grid(mc, f);
  add_engine(mc, f, false);
  add_output(mc, f);

  auto* identity = app.add_subcommand("verify-identity", "Full pipeline: symmetry, domination, identities");
  identity->add_option("--scenario", f.scenario, "Scenario file or builtin:NAME")->required();
  add_grid(identity, f);
  add_engine(identity, f, true);
  add_output(identity, f);

  auto* group = app.add_subcommand("verify-group-theorem", "Orbit counting identities on a named group");
  group->add_option("--group", f.group, "Group case")->required()->check(CLI::IsMember(group_case_names()));
  group->add_option("--trials", f.trials, "Random family pairs for double counting");
  group->add_option("--seed", f.seed, "Seed for the family pairs");
  add_output(group, f);

  auto* cube = app.add_subcommand("hypercube", "Connection-probability inequalities on the hypercube");
  cube->add_option("--d", f.d, "Dimension")->required()->check(CLI::Range(1, 20));
  add_grid(cube, f);
  add_engine(cube, f, true);
  add_output(cube, f);

  auto* z2 = app.add_subcommand("z2", "Two-point relations on the square torus");
  z2->add_option("--side", f.side, "Torus side length")->check(CLI::Range(3, 1 << 15));
  z2->add_option("--relation", f.relation, "1, 2 or line")->check(CLI::IsMember({"1", "2", "line"}));
  z2->add_option("--period", f.period, "line: spacing along the first axis");
  z2->add_option("--offset", f.offset, "line: shift A,B of the second line");
  add_grid(z2, f);
  add_engine(z2, f, true);
  add_output(z2, f);

  auto* bunk = app.add_subcommand("bunkbed", "Bottom versus top layer of base x L2");
  bunk->add_option("--base", f.base, "Base graph, e.g. cycle:5 or a JSON spec")->required();
  add_grid(bunk, f);
  add_engine(bunk, f, true);
  add_output(bunk, f);

  auto* layered = app.add_subcommand("layered", "Residue-class layers of base x cycle(m)");
  layered->add_option("--base", f.base, "Base graph (default: point)");
  layered->add_option("--m", f.m, "Cycle length")->required();
  layered->add_option("--choice", f.choice, "a, b or c")->required()->check(CLI::IsMember({"a", "b", "c"}));
  layered->add_option("--k", f.k, "Layer offset");
  layered->add_option("--period", f.period, "Residue period for choices b and c");
  add_grid(layered, f);
  add_engine(layered, f, true);
  add_output(layered, f);

  std::vector<std::string> rev(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(rev.begin(), rev.end());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 4;
  }

  try {
    const auto t0 = std::chrono::steady_clock::now();
    RunMeta meta;
    SuiteReport rep;
    const std::vector<Rational> grid = f.p.empty() ? std::vector<Rational>{} : parse_grid(f.p);

    if (check->parsed()) {
      meta.command = "check-symmetry";
      const Scenario sc = load_scenario(f.scenario);
      meta.scenario = to_json(sc);
      rep = check_scenario_symmetry(sc);
    } else if (enumerate->parsed() || mc->parsed() || identity->parsed()) {
      Scenario sc = load_scenario(f.scenario);
      if (!grid.empty()) sc.p_grid = grid;
      if (enumerate->parsed()) {
        meta.command = "enumerate";
        meta.options = options_from(f, enumerate, Mode::exact, sc.mc);
        meta.scenario = to_json(sc);
        rep = enumerate_report(sc, meta.options, meta);
      } else if (mc->parsed()) {
        meta.command = "mc";
        meta.options = options_from(f, mc, Mode::mc, sc.mc);
        meta.scenario = to_json(sc);
        rep = run_scenario(sc, meta.options);
      } else {
        meta.command = "verify-identity";
        meta.options = options_from(f, identity, sc.mode, sc.mc);
        meta.scenario = to_json(sc);
        rep = run_scenario(sc, meta.options);
      }
    } else if (group->parsed()) {
      meta.command = "verify-group-theorem";
      rep = group_theorem_report(f.group, f.trials, f.seed);
    } else if (cube->parsed()) {
      meta.command = "hypercube";
      meta.options = options_from(f, cube, Mode::exact, McParams{});
      rep = hypercube_inequality_report(f.d, grid, meta.options);
    } else if (z2->parsed()) {
      meta.command = "z2";
      meta.options = options_from(f, z2, Mode::exact, McParams{});
      Z2Options z;
      z.relation = f.relation == "1" ? Z2Relation::diagonal : f.relation == "2" ? Z2Relation::straight : Z2Relation::line;
      z.period = f.period;
      z.offset = parse_pair(f.offset);
      Scenario sc = z2_scenario(f.side, z);
      sc.p_grid = grid;
      meta.scenario = to_json(sc);
      rep = z2_relation_report(f.side, z, grid, meta.options);
    } else if (bunk->parsed()) {
      meta.command = "bunkbed";
      meta.options = options_from(f, bunk, Mode::exact, McParams{});
      const GraphSpec base = parse_graph_spec_text(f.base);
      Scenario sc = bunkbed_scenario(base);
      sc.p_grid = grid;
      meta.scenario = to_json(sc);
      rep = bunkbed_report(base, grid, meta.options);
    } else if (layered->parsed()) {
      meta.command = "layered";
      meta.options = options_from(f, layered, Mode::exact, McParams{});
      const GraphSpec base = parse_graph_spec_text(f.base.empty() ? "point" : f.base);
      LayerParams lp;
      lp.choice = f.choice == "a" ? LayerChoice::a : f.choice == "b" ? LayerChoice::b : LayerChoice::c;
      lp.k = f.k;
      lp.period = f.period;
      Scenario sc = layered_scenario(base, f.m, lp);
      sc.p_grid = grid;
      meta.scenario = to_json(sc);
      rep = layered_report(base, f.m, lp, grid, meta.options);
    }

    meta.wall_clock_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_human(out, rep, meta);
    if (!f.json.empty()) {
      const Json j = report_to_json(rep, meta);
      write_file(f.json, [&](std::ostream& o) { o << dump_report(j); });
    }
    if (!f.csv.empty()) write_file(f.csv, [&](std::ostream& o) { write_csv(o, rep); });
    return exit_code(rep.status());
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(Status::usage_error);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(Status::precondition_failed);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(Status::usage_error);
  }
}

}  // namespace percsym
