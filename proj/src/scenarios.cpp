#include "percsym/scenarios.hpp"

#include "percsym/counting.hpp"
#include "percsym/error.hpp"
#include "percsym/generators.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>

namespace percsym {

std::string to_string(Mode m) { return m == Mode::exact ? "EXACT" : "MC"; }

Mode parse_mode(const std::string& text) {
  if (text == "exact" || text == "EXACT") return Mode::exact;
  if (text == "mc" || text == "MC") return Mode::mc;
  throw InvalidArgument("mode must be exact or mc, got '" + text + "'");
}

int exit_code(Status s) {
  switch (s) {
    case Status::pass: return 0;
    case Status::violation: return 1;
    case Status::inconclusive: return 2;
    case Status::precondition_failed: return 3;
    case Status::usage_error: return 4;
  }
  return 4;
}

std::string to_string(Status s) {
  switch (s) {
    case Status::pass: return "PASS";
    case Status::violation: return "VIOLATION";
    case Status::inconclusive: return "INCONCLUSIVE";
    case Status::precondition_failed: return "PRECONDITION_FAILED";
    case Status::usage_error: return "USAGE_ERROR";
  }
  return "USAGE_ERROR";
}

Status SuiteReport::status() const {
  if (precondition_failed) return Status::precondition_failed;
  for (const auto& c : conditions)
    if (!c.report.passed()) return Status::precondition_failed;
  bool inconclusive = false;
  for (const Claim& c : claims) {
    if (c.passed && !*c.passed) return Status::violation;
    if (c.verdict == Verdict::violation) return Status::violation;
    if (c.verdict == Verdict::inconclusive) inconclusive = true;
  }
  return inconclusive ? Status::inconclusive : Status::pass;
}

namespace {

const std::vector<Rational> default_grid{Rational(1, 4), Rational(1, 2), Rational(3, 4)};

Claim exact_claim(std::string quantity, const std::string& p, Rational value, std::optional<bool> passed = {}) {
  Claim c;
  c.quantity = std::move(quantity);
  c.p = p;
  c.mode = Mode::exact;
  c.exact = std::move(value);
  c.passed = passed;
  return c;
}

Claim mc_claim(std::string quantity, const std::string& p, const McEstimate& est, std::uint64_t seed,
               std::optional<Verdict> verdict = {}) {
  Claim c;
  c.quantity = std::move(quantity);
  c.p = p;
  c.mode = Mode::mc;
  c.mc = est;
  c.verdict = verdict;
  c.seed = seed;
  return c;
}

Claim nonnegative_mc(std::string quantity, const std::string& p, const McEstimate& est, std::uint64_t seed,
                     const VerdictPolicy& policy) {
  return mc_claim(std::move(quantity), p, est, seed, classify_nonnegative({est.lo, est.hi}, est.n_samples, policy));
}

std::string bracket(const std::string& name, unsigned k, unsigned l) {
  return name + "(" + std::to_string(k) + "," + std::to_string(l) + ")";
}

VertexSet select(std::size_t n, const std::function<bool(Vertex)>& keep) {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < n; ++v)
    if (keep(v)) out.push_back(v);
  return VertexSet(std::move(out));
}

// Builds the group and checks the conditions, recording the result.
// Returns false (with the failure noted) for anything that rules out a
// theorem claim.
bool attach_conditions(SuiteReport& rep, const std::string& label, const Graph& g,
                       const std::vector<Permutation>& gens, const VertexSetPair& pair, bool restrict) {
  try {
    PermGroup grp = generate_group(g.n_vertices(), gens);
    if (restrict) grp = restrict_to_pair(grp, pair);
    LabelledConditions lc{label, pair, check_gamma_conditions(g, grp, pair)};
    const bool ok = lc.report.passed();
    if (!ok) rep.notes.push_back(label + ": symmetry conditions fail; no theorem claim is made");
    rep.conditions.push_back(std::move(lc));
    return ok;
  } catch (const NonAutomorphismElement& e) {
    rep.notes.push_back(label + ": " + e.what());
  } catch (const ClosureCapExceeded& e) {
    rep.notes.push_back(label + ": " + e.what());
  }
  rep.precondition_failed = true;
  return false;
}

void exact_pipeline(SuiteReport& rep, const Graph& g, const Scenario& sc, const std::vector<Rational>& grid,
                    const RunOptions& opts) {
  JointOutcomePolynomial poly;
  try {
    poly = enumerate_joint(g, sc.pair, sc.law, {opts.cap_bits, opts.threads});
  } catch (const CapExceeded& e) {
    rep.notes.push_back(std::string(e.what()) + "; raise --cap or use --mode mc");
    rep.precondition_failed = true;
    return;
  }
  Claim configs = exact_claim("configurations", "", Rational(BigInt(1) << poly.units));
  rep.claims.push_back(configs);
  rep.claims.push_back(exact_claim("count-conservation", "", Rational(0), poly.counts_conserved()));

  const unsigned top = std::max(poly.n_plus, poly.n_minus);
  const auto fs = default_test_functions(top);
  for (const Rational& p : grid) {
    const std::string ps = to_string(p);
    const JointPmf pmf = eval_joint(poly, p);
    const Rational total = pmf.total();
    rep.claims.push_back(exact_claim("pmf-total", ps, total, total == 1));
    const ExpectedSizes es = expected_sizes(pmf);
    rep.claims.push_back(exact_claim("E|C+|", ps, es.e_plus));
    rep.claims.push_back(exact_claim("E|C-|", ps, es.e_minus));
    rep.claims.push_back(exact_claim("E|C+|-E|C-|", ps, es.e_plus - es.e_minus, es.e_plus >= es.e_minus));
    const DominationReport dom = check_domination(pmf);
    for (std::size_t t = 0; t < dom.margins.size(); ++t)
      rep.claims.push_back(
          exact_claim("margin[t=" + std::to_string(t + 1) + "]", ps, dom.margins[t], dom.margins[t] >= 0));
    for (const IdentityResidual& r : check_partition_identity(pmf, fs)) {
      Claim c = exact_claim("residual[" + r.name + "]", ps, r.residual, r.residual == 0);
      c.extra.emplace_back("lhs", to_string(r.lhs));
      c.extra.emplace_back("rhs", to_string(r.rhs));
      rep.claims.push_back(std::move(c));
    }
    const RatioIdentity ratio = check_ratio_identity(pmf);
    Claim c = exact_claim("ratio-identity", ps, ratio.lhs - ratio.rhs, ratio.equal());
    c.extra.emplace_back("lhs", to_string(ratio.lhs));
    c.extra.emplace_back("rhs", to_string(ratio.rhs));
    rep.claims.push_back(std::move(c));
  }
}

void mc_pipeline(SuiteReport& rep, const Graph& g, const Scenario& sc, const std::vector<Rational>& grid,
                 const RunOptions& opts) {
  if (sc.law.kind != PartitionLaw::Kind::bond)
    throw InvalidArgument("Monte Carlo mode supports the bond law only");
  const SeedSpec seed{opts.mc.seed, opts.mc.samples_per_chunk, opts.threads};
  for (const Rational& p : grid) {
    const std::string ps = to_string(p);
    const EmpiricalJoint emp = estimate_joint(g, sc.pair, to_double(p), opts.mc.n, seed);
    rep.claims.push_back(mc_claim("E|C+|", ps, mean_plus(emp, opts.mc.level), seed.master_seed));
    rep.claims.push_back(mc_claim("E|C-|", ps, mean_minus(emp, opts.mc.level), seed.master_seed));
    rep.claims.push_back(
        nonnegative_mc("E|C+|-E|C-|", ps, mean_difference(emp, opts.mc.level), seed.master_seed, opts.policy));
    const McDomination dom = mc_domination_verdict(emp, opts.mc.level, opts.policy);
    for (const ThresholdVerdict& tv : dom.thresholds)
      rep.claims.push_back(
          mc_claim("margin[t=" + std::to_string(tv.threshold) + "]", ps, tv.margin, seed.master_seed, tv.verdict));
  }
}

void require_grid(const std::vector<Rational>& grid) {
  if (grid.empty()) throw InvalidArgument("empty p grid");
  for (const Rational& p : grid)
    if (!(p > 0 && p < 1)) throw InvalidArgument("p must lie strictly between 0 and 1, got " + to_string(p));
}

}  // namespace

SuiteReport check_scenario_symmetry(const Scenario& sc) {
  SuiteReport rep;
  rep.name = sc.name;
  rep.kind = "check-symmetry";
  const Graph g = build_graph(sc.graph);
  sc.pair.validate(g.n_vertices());
  attach_conditions(rep, sc.name, g, sc.generators, sc.pair, sc.restrict);
  return rep;
}

SuiteReport run_scenario(const Scenario& sc, const RunOptions& opts) {
  SuiteReport rep;
  rep.name = sc.name;
  rep.kind = "scenario";
  const std::vector<Rational>& grid = sc.p_grid.empty() ? default_grid : sc.p_grid;
  require_grid(grid);
  const Graph g = build_graph(sc.graph);
  sc.pair.validate(g.n_vertices());
  if (!attach_conditions(rep, sc.name, g, sc.generators, sc.pair, sc.restrict)) return rep;
  if (sc.pair.v_minus.empty()) rep.notes.push_back("V- is empty; domination holds trivially");
  if (opts.mode == Mode::exact)
    exact_pipeline(rep, g, sc, grid, opts);
  else
    mc_pipeline(rep, g, sc, grid, opts);
  return rep;
}

// ---- hypercube ----------------------------------------------------------

namespace {

Vertex hypercube_vertex(int d, unsigned ones) {
  Vertex v = 0;
  for (unsigned a = 0; a < ones; ++a) v |= Vertex{1} << (d - 1 - a);
  return v;
}

// Coordinate `axis` of vertex v (axis 0 is the most significant bit).
unsigned coord(int d, Vertex v, int axis) { return (v >> (d - 1 - axis)) & 1u; }

unsigned prefix_parity(int d, Vertex v, unsigned k) {
  unsigned s = 0;
  for (unsigned a = 0; a < k; ++a) s ^= coord(d, v, static_cast<int>(a));
  return s;
}

void check_hypercube_d(int d) {
  if (d < 1 || d > 20) throw InvalidArgument("hypercube dimension must be in [1, 20]");
}

std::vector<Rational> alternating(unsigned k) {
  // (-1)^i C(k, i)
  std::vector<Rational> out(k + 1);
  for (unsigned i = 0; i <= k; ++i) out[i] = Rational(binomial(k, i)) * (i % 2 ? -1 : 1);
  return out;
}

Rational dot(const std::vector<Rational>& coef, const std::vector<Rational>& c) {
  Rational s = 0;
  for (std::size_t i = 0; i < coef.size(); ++i) s += coef[i] * c[i];
  return s;
}

std::vector<double> as_doubles(const std::vector<Rational>& v) {
  std::vector<double> out;
  for (const Rational& r : v) out.push_back(to_double(r));
  return out;
}

struct ExactCValues {
  ConnectionPolynomial poly;
  std::vector<std::size_t> dist;
};

CValues exact_c_values(int d, const ExactCValues& src, const Rational& p) {
  CValues cv;
  cv.mode = Mode::exact;
  for (int i = 0; i <= d; ++i) cv.exact.push_back(eval_connection(src.poly, hypercube_vertex(d, i), p));
  for (Vertex v = 0; v < src.dist.size(); ++v) {
    const Rational c = eval_connection(src.poly, v, p);
    if (c != cv.exact[src.dist[v]]) {
      cv.invariant = false;
      cv.diagnostics.push_back("vertex " + std::to_string(v) + " at distance " + std::to_string(src.dist[v]) +
                               " has c = " + to_string(c));
    }
  }
  return cv;
}

ExactCValues prepare_exact(int d, const RunOptions& opts) {
  const Graph g = build_graph(GraphSpec::hypercube(d));
  return {enumerate_connections(g, 0, {opts.cap_bits, opts.threads}), distances_from(g, 0)};
}

std::vector<Vertex> representatives(int d) {
  std::vector<Vertex> reps;
  for (int i = 0; i <= d; ++i) reps.push_back(hypercube_vertex(d, i));
  return reps;
}

}  // namespace

CValues hypercube_c_values(int d, const Rational& p, const RunOptions& opts) {
  check_hypercube_d(d);
  if (!(p > 0 && p < 1)) throw InvalidArgument("p must lie strictly between 0 and 1");
  if (opts.mode == Mode::exact) return exact_c_values(d, prepare_exact(d, opts), p);
  const Graph g = build_graph(GraphSpec::hypercube(d));
  const auto reps = representatives(d);
  const auto patterns = estimate_connection_patterns(g, 0, reps, to_double(p), opts.mc.n,
                                                     SeedSpec{opts.mc.seed, opts.mc.samples_per_chunk, opts.threads});
  CValues cv;
  cv.mode = Mode::mc;
  for (std::size_t i = 0; i < reps.size(); ++i) cv.mc.push_back(connection_from_patterns(patterns, i, opts.mc.level));
  return cv;
}

Rational discrete_derivative(const std::vector<Rational>& c, unsigned k, unsigned l) {
  if (std::size_t(k) + l >= c.size()) throw InvalidArgument("derivative index out of range");
  Rational s = 0;
  for (unsigned i = 0; i <= k; ++i) s += Rational(binomial(k, i)) * ((k - i) % 2 ? -1 : 1) * c[l + i];
  return s;
}

std::vector<Rational> discrete_derivative_coefficients(int d, unsigned k, unsigned l) {
  if (d < 0 || k + l > unsigned(d)) throw InvalidArgument("derivative index out of range");
  std::vector<Rational> coef(d + 1, Rational(0));
  for (unsigned i = 0; i <= k; ++i) coef[l + i] = Rational(binomial(k, i)) * ((k - i) % 2 ? -1 : 1);
  return coef;
}

std::vector<Rational> double_sum_coefficients(int d, unsigned k, unsigned l) {
  if (d < 0 || k + l > unsigned(d)) throw InvalidArgument("double sum index out of range");
  std::vector<Rational> coef(d + 1, Rational(0));
  const auto a = alternating(k);
  for (unsigned i = 0; i <= k; ++i)
    for (unsigned j = 0; j <= l; ++j) coef[i + j] += a[i] * Rational(binomial(l, j));
  return coef;
}

std::vector<HypercubeRelation> hypercube_relations(int d) {
  check_hypercube_d(d);
  const std::size_t n = std::size_t{1} << d;
  std::vector<HypercubeRelation> out;
  auto low_zero = [d](Vertex v, unsigned from) {
    for (int a = static_cast<int>(from); a < d; ++a)
      if (coord(d, v, a)) return false;
    return true;
  };
  for (unsigned k = 1; k <= unsigned(d); ++k) {
    for (unsigned l = 0; k + l <= unsigned(d); ++l) {
      HypercubeRelation r;
      r.label = bracket("double-sum", k, l);
      r.k = k;
      r.l = l;
      r.pair.v_plus = select(n, [&](Vertex v) { return low_zero(v, k + l) && prefix_parity(d, v, k) == 0; });
      r.pair.v_minus = select(n, [&](Vertex v) { return low_zero(v, k + l) && prefix_parity(d, v, k) == 1; });
      for (unsigned a = 0; a < k + l; ++a) r.generators.push_back(hypercube_reflection(d, static_cast<int>(a)));
      r.coefficients = double_sum_coefficients(d, k, l);
      out.push_back(std::move(r));
    }
  }
  for (unsigned k = 1; k <= unsigned(d); ++k) {
    for (unsigned l = 1; k + l <= unsigned(d); ++l) {
      auto in_v0 = [&](Vertex v) { return low_zero(v, k); };
      auto in_v1 = [&](Vertex v) {
        for (unsigned a = k; a < k + l; ++a)
          if (!coord(d, v, static_cast<int>(a))) return false;
        return low_zero(v, k + l);
      };
      const auto a = discrete_derivative_coefficients(d, k, 0);
      const auto b = discrete_derivative_coefficients(d, k, l);
      const Rational sign = k % 2 ? -1 : 1;
      for (int variant = 0; variant < 2; ++variant) {
        HypercubeRelation r;
        r.k = k;
        r.l = l;
        // difference: V1 enters with the opposite parity
        const unsigned v1_plus_parity = variant == 0 ? 1 : 0;
        r.label = bracket(variant == 0 ? "difference" : "sum", k, l);
        r.pair.v_plus = select(n, [&](Vertex v) {
          return (in_v0(v) && prefix_parity(d, v, k) == 0) || (in_v1(v) && prefix_parity(d, v, k) == v1_plus_parity);
        });
        r.pair.v_minus = select(n, [&](Vertex v) {
          return (in_v0(v) && prefix_parity(d, v, k) == 1) || (in_v1(v) && prefix_parity(d, v, k) != v1_plus_parity);
        });
        for (unsigned ax = 0; ax < k; ++ax) r.generators.push_back(hypercube_reflection(d, static_cast<int>(ax)));
        r.generators.push_back(hypercube_block_reflection(d, static_cast<int>(k), static_cast<int>(k + l)));
        r.coefficients.resize(d + 1);
        for (int i = 0; i <= d; ++i)
          r.coefficients[i] = sign * (variant == 0 ? Rational(a[i] - b[i]) : Rational(a[i] + b[i]));
        out.push_back(std::move(r));
      }
    }
  }
  return out;
}

SuiteReport hypercube_inequality_report(int d, const std::vector<Rational>& p_grid, const RunOptions& opts) {
  check_hypercube_d(d);
  const std::vector<Rational>& grid = p_grid.empty() ? default_grid : p_grid;
  require_grid(grid);
  SuiteReport rep;
  rep.name = "hypercube-d" + std::to_string(d);
  rep.kind = "hypercube";
  const Graph g = build_graph(GraphSpec::hypercube(d));
  const auto relations = hypercube_relations(d);
  bool ok = true;
  for (const auto& r : relations) ok = attach_conditions(rep, r.label, g, r.generators, r.pair, false) && ok;
  if (!ok) return rep;

  if (opts.mode == Mode::exact) {
    ExactCValues src;
    std::vector<JointOutcomePolynomial> joints;
    try {
      src = prepare_exact(d, opts);
      for (const auto& r : relations)
        joints.push_back(enumerate_joint(g, r.pair, PartitionLaw::bond(), {opts.cap_bits, opts.threads}));
    } catch (const CapExceeded& e) {
      rep.notes.push_back(std::string(e.what()) + "; raise --cap or use --mode mc");
      rep.precondition_failed = true;
      return rep;
    }
    rep.claims.push_back(exact_claim("configurations", "", Rational(BigInt(1) << g.n_edges())));
    for (const Rational& p : grid) {
      const std::string ps = to_string(p);
      const CValues cv = exact_c_values(d, src, p);
      const auto& c = cv.exact;
      for (int i = 0; i <= d; ++i) rep.claims.push_back(exact_claim("c[" + std::to_string(i) + "]", ps, c[i]));
      Claim inv = exact_claim("c-invariance", ps, Rational(0), cv.invariant);
      for (const auto& msg : cv.diagnostics) inv.extra.emplace_back("mismatch", msg);
      rep.claims.push_back(std::move(inv));
      for (unsigned k = 0; k <= unsigned(d); ++k) {
        const Rational s = (k % 2 ? -1 : 1) * discrete_derivative(c, k, 0);
        rep.claims.push_back(exact_claim("sign(" + std::to_string(k) + ")", ps, s, s >= 0));
      }
      for (unsigned k = 0; k <= unsigned(d); ++k) {
        for (unsigned l = 0; k + l <= unsigned(d); ++l) {
          const Rational ds = dot(double_sum_coefficients(d, k, l), c);
          rep.claims.push_back(exact_claim(bracket("double-sum", k, l), ps, ds, ds >= 0));
          const Rational gap = abs(discrete_derivative(c, k, 0)) - abs(discrete_derivative(c, k, l));
          rep.claims.push_back(exact_claim(bracket("abs-gap", k, l), ps, gap, gap >= 0));
        }
      }
      for (std::size_t i = 0; i < relations.size(); ++i) {
        const auto& r = relations[i];
        const JointPmf pmf = eval_joint(joints[i], p);
        const ExpectedSizes es = expected_sizes(pmf);
        const Rational formula = dot(r.coefficients, c);
        const Rational gap = es.e_plus - es.e_minus;
        Claim chk = exact_claim("gap-check[" + r.label + "]", ps, gap - formula, gap == formula);
        chk.extra.emplace_back("E|C+|-E|C-|", to_string(gap));
        rep.claims.push_back(std::move(chk));
        if (r.label.rfind("double-sum", 0) != 0) rep.claims.push_back(exact_claim(r.label, ps, gap, gap >= 0));
        const DominationReport dom = check_domination(pmf);
        const Rational worst = *std::min_element(dom.margins.begin(), dom.margins.end());
        rep.claims.push_back(exact_claim("min-margin[" + r.label + "]", ps, worst, dom.passed));
      }
    }
    return rep;
  }

  const auto reps = representatives(d);
  const SeedSpec seed{opts.mc.seed, opts.mc.samples_per_chunk, opts.threads};
  rep.notes.push_back("c-values estimated at the representatives (1,..,1,0,..,0)");
  for (const Rational& p : grid) {
    const std::string ps = to_string(p);
    const auto patterns = estimate_connection_patterns(g, 0, reps, to_double(p), opts.mc.n, seed);
    for (std::size_t i = 0; i < reps.size(); ++i)
      rep.claims.push_back(
          mc_claim("c[" + std::to_string(i) + "]", ps, connection_from_patterns(patterns, i, opts.mc.level), seed.master_seed));
    auto linear = [&](const std::vector<Rational>& coef) {
      const auto dc = as_doubles(coef);
      return estimate_linear(patterns, dc, opts.mc.level);
    };
    for (unsigned k = 1; k <= unsigned(d); ++k) {
      const Rational sign = k % 2 ? -1 : 1;
      auto coef = discrete_derivative_coefficients(d, k, 0);
      for (auto& x : coef) x *= sign;
      rep.claims.push_back(nonnegative_mc("sign(" + std::to_string(k) + ")", ps, linear(coef), seed.master_seed, opts.policy));
    }
    for (unsigned k = 1; k <= unsigned(d); ++k)
      for (unsigned l = 0; k + l <= unsigned(d); ++l)
        rep.claims.push_back(nonnegative_mc(bracket("double-sum", k, l), ps, linear(double_sum_coefficients(d, k, l)),
                                            seed.master_seed, opts.policy));
    for (const auto& r : relations)
      if (r.label.rfind("double-sum", 0) != 0)
        rep.claims.push_back(nonnegative_mc(r.label, ps, linear(r.coefficients), seed.master_seed, opts.policy));
  }
  return rep;
}

// ---- torus --------------------------------------------------------------

Scenario z2_scenario(int n, const Z2Options& z) {
  if (n < 3) throw InvalidArgument("torus side must be >= 3");
  Scenario sc;
  sc.graph = GraphSpec::torus(n, n);
  const Graph g = build_graph(sc.graph);
  auto at = [&](int x, int y) {
    return *g.find_label({((x % n) + n) % n, ((y % n) + n) % n});
  };
  switch (z.relation) {
    case Z2Relation::diagonal:
      sc.name = "torus" + std::to_string(n) + "-relation1";
      sc.pair.v_plus = {at(0, 0), at(1, 1)};
      sc.pair.v_minus = {at(1, 0), at(0, 1)};
      sc.generators = {torus_diagonal_reflection(n), lift_left(cycle_reflection(n, 1), n)};
      break;
    case Z2Relation::straight: {
      sc.name = "torus" + std::to_string(n) + "-relation2";
      sc.pair.v_plus = {at(0, 0), at(2, 0)};
      sc.pair.v_minus = {at(1, 1), at(1, -1)};
      // x -> 2 - x, and the anti-diagonal reflection (x, y) -> (y + 1, x - 1)
      sc.generators = {lift_left(cycle_reflection(n, 2), n),
                       compose(torus_translation(n, n, 1, -1), torus_diagonal_reflection(n))};
      break;
    }
    case Z2Relation::line: {
      const int s = z.period;
      if (s < 1 || n % s != 0) throw InvalidArgument("line period must divide the torus side");
      const int wx = ((z.offset.first % n) + n) % n;
      const int wy = ((z.offset.second % n) + n) % n;
      if (wy == 0 && wx % s == 0) throw InvalidArgument("line offset must move the line off itself");
      sc.name = "torus" + std::to_string(n) + "-line-s" + std::to_string(s);
      std::vector<Vertex> plus, minus;
      for (int j = 0; j < n / s; ++j) {
        plus.push_back(at(j * s, 0));
        minus.push_back(at(j * s + wx, wy));
      }
      sc.pair.v_plus = VertexSet(plus);
      sc.pair.v_minus = VertexSet(minus);
      sc.generators = {torus_translation(n, n, s, 0), torus_point_reflection(n, n, wx, wy)};
      break;
    }
  }
  sc.pair.origin = at(0, 0);
  return sc;
}

SuiteReport z2_relation_report(int n, const Z2Options& z, const std::vector<Rational>& p_grid,
                               const RunOptions& opts) {
  Scenario sc = z2_scenario(n, z);
  sc.p_grid = p_grid;
  SuiteReport rep = run_scenario(sc, opts);
  rep.kind = "z2";
  rep.notes.push_back("statements concern torus(" + std::to_string(n) + "," + std::to_string(n) +
                      ") connection probabilities");
  std::string alias;
  if (z.relation == Z2Relation::diagonal) alias = "1+c(1,1)-2c(1,0)";
  if (z.relation == Z2Relation::straight) alias = "1+c(2,0)-2c(1,1)";
  if (!alias.empty()) {
    std::vector<Claim> extra;
    for (const Claim& c : rep.claims)
      if (c.quantity == "E|C+|-E|C-|") {
        Claim a = c;
        a.quantity = alias;
        extra.push_back(std::move(a));
      }
    rep.claims.insert(rep.claims.end(), extra.begin(), extra.end());
  }
  return rep;
}

// ---- bunkbed and layered ------------------------------------------------

Scenario bunkbed_scenario(const GraphSpec& base) {
  Scenario sc;
  sc.graph = GraphSpec::bunkbed(base);
  sc.name = "bunkbed-" + base.describe();
  const std::size_t n = build_graph(sc.graph).n_vertices();
  sc.pair.v_plus = select(n, [](Vertex v) { return v % 2 == 0; });
  sc.pair.v_minus = select(n, [](Vertex v) { return v % 2 == 1; });
  sc.pair.origin = 0;
  sc.generators = builtin_generators(sc.graph);
  return sc;
}

SuiteReport bunkbed_report(const GraphSpec& base, const std::vector<Rational>& p_grid, const RunOptions& opts) {
  Scenario sc = bunkbed_scenario(base);
  sc.p_grid = p_grid;
  SuiteReport rep = run_scenario(sc, opts);
  rep.kind = "bunkbed";
  return rep;
}

Scenario layered_scenario(const GraphSpec& base, int m, const LayerParams& lp) {
  if (m < 3) throw InvalidArgument("cylinder length must be >= 3");
  const int k = lp.k;
  const int n = lp.period;
  std::function<int(int)> side;  // layer j -> +1 (V+), -1 (V-), 0
  std::vector<Permutation> cycle_gens;
  std::string tag;
  switch (lp.choice) {
    case LayerChoice::a:
      if (!(k > 0 && 2 * k <= m)) throw InvalidArgument("choice a needs 0 < k <= m/2");
      side = [k](int j) { return j == 0 ? 1 : j == k ? -1 : 0; };
      cycle_gens = {cycle_reflection(m, k)};
      tag = "a-k" + std::to_string(k);
      break;
    case LayerChoice::b:
      if (n < 1 || m % n != 0) throw InvalidArgument("choice b needs the period to divide m");
      if (!(k >= 1 && k < n)) throw InvalidArgument("choice b needs 1 <= k < period");
      side = [k, n](int j) { return j % n == 0 ? 1 : j % n == k ? -1 : 0; };
      cycle_gens = {cycle_rotation(m, n), cycle_reflection(m, k)};
      tag = "b-n" + std::to_string(n) + "-k" + std::to_string(k);
      break;
    case LayerChoice::c:
      if (n < 1 || m % (2 * n) != 0) throw InvalidArgument("choice c needs twice the period to divide m");
      if (!(k > 0 && k < 2 * n && k != n)) throw InvalidArgument("choice c needs 0 < k < 2 period, k != period");
      side = [k, n](int j) {
        const int r = j % (2 * n);
        if (r == 0 || r == k) return 1;
        if (r == n || r == (n + k) % (2 * n)) return -1;
        return 0;
      };
      cycle_gens = {cycle_rotation(m, n), cycle_rotation(m, 2 * n), cycle_reflection(m, k)};
      tag = "c-n" + std::to_string(n) + "-k" + std::to_string(k);
      break;
  }
  Scenario sc;
  sc.graph = GraphSpec::cylinder(base, m);
  sc.name = "layered-" + base.describe() + "-m" + std::to_string(m) + "-" + tag;
  const std::size_t nb = build_graph(base).n_vertices();
  const std::size_t total = nb * m;
  sc.pair.v_plus = select(total, [&](Vertex v) { return side(static_cast<int>(v % m)) == 1; });
  sc.pair.v_minus = select(total, [&](Vertex v) { return side(static_cast<int>(v % m)) == -1; });
  sc.pair.origin = 0;
  for (const Permutation& p : builtin_generators(base)) sc.generators.push_back(lift_left(p, m));
  for (const Permutation& p : cycle_gens) sc.generators.push_back(lift_right(nb, p));
  return sc;
}

SuiteReport layered_report(const GraphSpec& base, int m, const LayerParams& params,
                           const std::vector<Rational>& p_grid, const RunOptions& opts) {
  Scenario sc = layered_scenario(base, m, params);
  sc.p_grid = p_grid;
  SuiteReport rep = run_scenario(sc, opts);
  rep.kind = "layered";
  return rep;
}

// ---- builtin scenarios --------------------------------------------------

std::vector<std::string> builtin_scenario_names() {
  return {"bunkbed-path2",        "bunkbed-path3",      "bunkbed-cycle3",       "bunkbed-cycle5",
          "site-bunkbed-cycle3",  "rc-bunkbed-path2-q2", "rc-bunkbed-path2-q1/2", "layered-point-m8-b",
          "layered-point-m6-a",   "torus3-relation1",   "torus3-relation2",     "mc-bunkbed-path2"};
}

Scenario builtin_scenario(const std::string& name) {
  const std::vector<Rational> third_half{Rational(1, 3), Rational(1, 2)};
  Scenario sc;
  if (name == "bunkbed-path2" || name == "mc-bunkbed-path2") {
    sc = bunkbed_scenario(GraphSpec::path(2));
    if (name == "mc-bunkbed-path2") {
      sc.mode = Mode::mc;
      sc.p_grid = {Rational(1, 2)};
      sc.mc.n = 100000;
      sc.mc.seed = 20240607;
    }
  } else if (name == "bunkbed-path3") {
    sc = bunkbed_scenario(GraphSpec::path(3));
  } else if (name == "bunkbed-cycle3") {
    sc = bunkbed_scenario(GraphSpec::cycle(3));
  } else if (name == "bunkbed-cycle5") {
    sc = bunkbed_scenario(GraphSpec::cycle(5));
  } else if (name == "site-bunkbed-cycle3") {
    sc = bunkbed_scenario(GraphSpec::cycle(3));
    sc.law = PartitionLaw::site();
    sc.p_grid = third_half;
  } else if (name == "rc-bunkbed-path2-q2" || name == "rc-bunkbed-path2-q1/2") {
    sc = bunkbed_scenario(GraphSpec::path(2));
    sc.law = PartitionLaw::random_cluster(name == "rc-bunkbed-path2-q2" ? Rational(2) : Rational(1, 2));
    sc.p_grid = third_half;
  } else if (name == "layered-point-m8-b") {
    sc = layered_scenario(GraphSpec::path(1), 8, {LayerChoice::b, 1, 2});
  } else if (name == "layered-point-m6-a") {
    sc = layered_scenario(GraphSpec::path(1), 6, {LayerChoice::a, 3, 1});
  } else if (name == "torus3-relation1") {
    sc = z2_scenario(3, {Z2Relation::diagonal});
  } else if (name == "torus3-relation2") {
    sc = z2_scenario(3, {Z2Relation::straight});
  } else {
    throw InvalidArgument("unknown builtin scenario '" + name + "'");
  }
  sc.name = name;
  if (sc.p_grid.empty()) sc.p_grid = default_grid;
  return sc;
}

// ---- group identities ---------------------------------------------------

std::vector<std::string> group_case_names() { return {"d4-on-c4", "bunkbed-c3"}; }

namespace {

std::string join(const std::vector<Vertex>& xs) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? "," : "") << xs[i];
  os << '}';
  return os.str();
}

Claim count_claim(std::string quantity, const CountPair& cp) {
  Claim c = exact_claim(std::move(quantity), "", Rational(BigInt(static_cast<unsigned long>(cp.lhs))) -
                                                     Rational(BigInt(static_cast<unsigned long>(cp.rhs))),
                        cp.equal());
  c.extra.emplace_back("lhs", std::to_string(cp.lhs));
  c.extra.emplace_back("rhs", std::to_string(cp.rhs));
  return c;
}

struct NamedGroup {
  std::string label;
  const std::vector<Permutation>* elements;
};

// Orbits of the action on 0..degree-1, each sorted, in order of least element.
std::vector<std::vector<Vertex>> orbits_of(const std::vector<Permutation>& elements, std::size_t degree) {
  std::vector<std::vector<Vertex>> out;
  std::vector<char> seen(degree, 0);
  for (Vertex x = 0; x < degree; ++x) {
    if (seen[x]) continue;
    std::vector<Vertex> orb;
    for (const Permutation& g : elements) {
      if (!seen[g(x)]) {
        seen[g(x)] = 1;
        orb.push_back(g(x));
      }
    }
    std::sort(orb.begin(), orb.end());
    out.push_back(std::move(orb));
  }
  return out;
}

}  // namespace

SuiteReport group_theorem_report(const std::string& group_case, unsigned trials, std::uint64_t seed) {
  SuiteReport rep;
  rep.name = group_case;
  rep.kind = "group-theorem";

  std::vector<Permutation> full;
  std::vector<Permutation> acting;  // the group used for double counting
  std::vector<Vertex> xs, ys;
  Vertex o = 0, o_prime = 0;
  std::size_t degree = 0;
  std::vector<NamedGroup> groups;
  std::vector<Permutation> rotations;

  if (group_case == "d4-on-c4") {
    degree = 4;
    full = generate_group(4, builtin_generators(GraphSpec::cycle(4))).elements();
    const std::vector<Permutation> rot{cycle_rotation(4, 1)};
    rotations = generate_group(4, rot).elements();
    acting = full;
    xs = ys = {0, 1, 2, 3};
    o = o_prime = 0;
    groups = {{"D4", &full}, {"C4", &rotations}};
  } else if (group_case == "bunkbed-c3") {
    const Scenario sc = bunkbed_scenario(GraphSpec::cycle(3));
    const Graph g = build_graph(sc.graph);
    degree = g.n_vertices();
    const PermGroup grp = generate_group(degree, sc.generators);
    full = grp.elements();
    rep.conditions.push_back({sc.name, sc.pair, check_gamma_conditions(g, grp, sc.pair)});
    acting = split_group(grp, sc.pair).gamma_plus;
    xs = sc.pair.v_plus.values();
    ys = sc.pair.v_minus.values();
    o = sc.pair.origin;
    o_prime = ys.front();
    groups = {{"Gamma", &full}, {"Gamma+", &acting}};
  } else {
    throw InvalidArgument("unknown group case '" + group_case + "'");
  }

  rep.claims.push_back(exact_claim("group-order", "", Rational(static_cast<unsigned long>(full.size()))));
  rep.claims.push_back(exact_claim("acting-order", "", Rational(static_cast<unsigned long>(acting.size()))));

  for (const NamedGroup& ng : groups)
    for (Vertex x = 0; x < degree; ++x)
      for (Vertex y = 0; y < degree; ++y)
        rep.claims.push_back(count_claim("orbit-product[" + ng.label + ";" + std::to_string(x) + "," +
                                             std::to_string(y) + "]",
                                         verify_orbit_product(*ng.elements, x, y)));

  // every pair of equal-size orbits, each a transitive set
  for (const NamedGroup& ng : groups) {
    const auto orbs = orbits_of(*ng.elements, degree);
    for (std::size_t i = 0; i < orbs.size(); ++i) {
      for (std::size_t j = i; j < orbs.size(); ++j) {
        if (orbs[i].size() != orbs[j].size()) continue;
        const auto mismatch = find_stabilizer_mismatch(*ng.elements, orbs[i], orbs[j]);
        Claim c = exact_claim("equal-size-orbits[" + ng.label + ";" + join(orbs[i]) + "," + join(orbs[j]) + "]", "",
                              Rational(0), !mismatch);
        if (mismatch)
          c.extra.emplace_back("mismatch", std::to_string(mismatch->x) + "," + std::to_string(mismatch->y));
        rep.claims.push_back(std::move(c));
      }
    }
  }

  for (const NamedGroup& ng : groups) {
    const SwapCheck swaps = check_swapped_stabilizers(*ng.elements, degree);
    Claim c = exact_claim("swapped-stabilizers[" + ng.label + "]", "", Rational(0), !swaps.mismatch.has_value());
    c.extra.emplace_back("swappable_pairs", std::to_string(swaps.swappable_pairs));
    rep.claims.push_back(std::move(c));
  }

  // Double counting needs the acting group transitive on X and X' with
  // equal cross stabilizer-orbit sizes.
  const bool pre = acts_transitively(acting, xs) && acts_transitively(acting, ys) &&
                   !find_stabilizer_mismatch(acting, xs, ys);
  if (!pre) {
    rep.notes.push_back("acting group does not satisfy the double-counting preconditions");
    rep.precondition_failed = true;
    return rep;
  }
  std::mt19937_64 rng(seed);
  for (unsigned t = 0; t < trials; ++t) {
    const FamilyPair fp = random_family_pair(xs, ys, std::max(xs.size(), ys.size()), rng);
    const DoubleCounting dc = verify_double_counting(acting, fp, o, o_prime);
    Claim c = count_claim("double-counting[" + std::to_string(t) + "]", dc.counts);
    c.extra.emplace_back("A", join(fp.a_plus));
    c.extra.emplace_back("A'", join(fp.a_minus));
    c.extra.emplace_back("orbit", std::to_string(dc.orbit_size));
    rep.claims.push_back(std::move(c));
  }
  return rep;
}

}  // namespace percsym
