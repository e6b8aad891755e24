#include "percsym/exact.hpp"

#include "percsym/error.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <thread>

namespace percsym {

PartitionLaw PartitionLaw::random_cluster(Rational q) {
  if (q <= 0) throw InvalidArgument("random-cluster weight q must be positive");
  return {Kind::random_cluster, std::move(q)};
}

std::string PartitionLaw::name() const {
  switch (kind) {
    case Kind::bond: return "bond";
    case Kind::site: return "site";
    case Kind::random_cluster: return "random-cluster(q=" + to_string(q) + ")";
  }
  return "?";
}

std::uint64_t JointOutcomePolynomial::count(const Outcome& o, unsigned k) const {
  auto it = counts.find(o);
  if (it == counts.end()) return 0;
  std::uint64_t s = 0;
  for (unsigned c = 0; c < cluster_slots; ++c) s += it->second[k * cluster_slots + c];
  return s;
}

std::vector<std::uint64_t> JointOutcomePolynomial::totals_by_open_units() const {
  std::vector<std::uint64_t> out(units + 1, 0);
  for (const auto& [o, row] : counts) {
    for (unsigned k = 0; k <= units; ++k)
      for (unsigned c = 0; c < cluster_slots; ++c) out[k] += row[k * cluster_slots + c];
  }
  return out;
}

bool JointOutcomePolynomial::counts_conserved() const {
  auto totals = totals_by_open_units();
  for (unsigned k = 0; k <= units; ++k) {
    if (BigInt(static_cast<unsigned long>(totals[k])) != binomial(units, k)) return false;
  }
  return true;
}

Rational JointPmf::total() const {
  Rational s = 0;
  for (const auto& [o, p] : prob) s += p;
  return s;
}

namespace {

struct FlatAdjacency {
  std::vector<std::uint32_t> offset;  // n + 1
  std::vector<Neighbor> entries;
};

FlatAdjacency flatten(const Graph& g) {
  FlatAdjacency a;
  a.offset.push_back(0);
  for (Vertex v = 0; v < g.n_vertices(); ++v) {
    for (const Neighbor& nb : g.neighbors(v)) a.entries.push_back(nb);
    a.offset.push_back(static_cast<std::uint32_t>(a.entries.size()));
  }
  return a;
}

// Cluster of o over open edges, as a vertex mask.
inline std::uint64_t bond_cluster(const FlatAdjacency& adj, Vertex o, EdgeConfig mask) {
  std::uint64_t cluster = std::uint64_t{1} << o;
  std::uint64_t frontier = cluster;
  while (frontier) {
    const unsigned v = static_cast<unsigned>(std::countr_zero(frontier));
    frontier &= frontier - 1;
    for (std::uint32_t i = adj.offset[v]; i < adj.offset[v + 1]; ++i) {
      const Neighbor& nb = adj.entries[i];
      if ((mask >> nb.edge) & 1u) {
        const std::uint64_t bit = std::uint64_t{1} << nb.vertex;
        if (!(cluster & bit)) {
          cluster |= bit;
          frontier |= bit;
        }
      }
    }
  }
  return cluster;
}

// Closed o is a singleton cell; otherwise search over open vertices.
inline std::uint64_t site_cluster(const FlatAdjacency& adj, Vertex o, std::uint64_t open) {
  std::uint64_t cluster = std::uint64_t{1} << o;
  if (!((open >> o) & 1u)) return cluster;
  std::uint64_t frontier = cluster;
  while (frontier) {
    const unsigned v = static_cast<unsigned>(std::countr_zero(frontier));
    frontier &= frontier - 1;
    for (std::uint32_t i = adj.offset[v]; i < adj.offset[v + 1]; ++i) {
      const std::uint64_t bit = std::uint64_t{1} << adj.entries[i].vertex;
      if ((open & bit) && !(cluster & bit)) {
        cluster |= bit;
        frontier |= bit;
      }
    }
  }
  return cluster;
}

unsigned count_clusters(const Graph& g, EdgeConfig mask, std::vector<Vertex>& parent) {
  const std::size_t n = g.n_vertices();
  std::iota(parent.begin(), parent.end(), Vertex{0});
  auto find = [&](Vertex x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  unsigned clusters = static_cast<unsigned>(n);
  const auto& edges = g.edges();
  EdgeConfig m = mask;
  while (m) {
    const unsigned k = static_cast<unsigned>(std::countr_zero(m));
    m &= m - 1;
    Vertex a = find(edges[k].u);
    Vertex b = find(edges[k].v);
    if (a != b) {
      parent[a] = b;
      --clusters;
    }
  }
  return clusters;
}

unsigned resolve_threads(unsigned requested, std::uint64_t total) {
  unsigned t = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  const std::uint64_t max_useful = std::max<std::uint64_t>(1, total >> 12);
  return static_cast<unsigned>(std::min<std::uint64_t>(t, max_useful));
}

// Runs body(mask, local) over [0, total) split into contiguous ranges, one per
// worker, and sums the per-worker tables.
template <class Body>
std::vector<std::uint64_t> sweep(std::uint64_t total, unsigned threads, std::size_t table_size,
                                 const Body& body) {
  const unsigned workers = resolve_threads(threads, total);
  std::vector<std::vector<std::uint64_t>> tables(workers, std::vector<std::uint64_t>(table_size, 0));
  auto run = [&](unsigned w) {
    const std::uint64_t lo = total / workers * w + std::min<std::uint64_t>(w, total % workers);
    const std::uint64_t hi = lo + total / workers + (w < total % workers ? 1 : 0);
    auto& table = tables[w];
    body(lo, hi, table);
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
  }
  for (unsigned w = 1; w < workers; ++w)
    for (std::size_t i = 0; i < table_size; ++i) tables[0][i] += tables[w][i];
  return std::move(tables[0]);
}

void check_cap(unsigned bits, const EnumerationOptions& opts) {
  if (opts.cap_bits > 63) throw InvalidArgument("cap above 63 bits is not supported");
  if (bits > opts.cap_bits) throw CapExceeded(bits, opts.cap_bits);
}

void check_probability(const Rational& p) {
  if (p <= 0 || p >= 1) throw InvalidArgument("p must lie strictly between 0 and 1, got " + to_string(p));
}

}  // namespace

JointOutcomePolynomial enumerate_joint(const Graph& g, const VertexSetPair& pair, const PartitionLaw& law,
                                       const EnumerationOptions& opts) {
  pair.validate(g.n_vertices());
  if (g.n_vertices() > 64) throw InvalidArgument("exact enumeration supports at most 64 vertices");
  const bool site = law.kind == PartitionLaw::Kind::site;
  const bool rc = law.kind == PartitionLaw::Kind::random_cluster;

  JointOutcomePolynomial poly;
  poly.law = law;
  poly.units = static_cast<unsigned>(site ? g.n_vertices() : g.n_edges());
  poly.n_plus = static_cast<unsigned>(pair.v_plus.size());
  poly.n_minus = static_cast<unsigned>(pair.v_minus.size());
  poly.cluster_slots = rc ? static_cast<unsigned>(g.n_vertices() + 1) : 1;
  check_cap(poly.units, opts);

  const std::uint64_t plus_mask = pair.v_plus.mask();
  const std::uint64_t minus_mask = pair.v_minus.mask();
  const FlatAdjacency adj = flatten(g);
  const unsigned units = poly.units;
  const unsigned slots = poly.cluster_slots;
  const unsigned nb = poly.n_minus + 1;
  const std::size_t row = std::size_t(units + 1) * slots;
  const std::size_t table_size = std::size_t(poly.n_plus + 1) * nb * row;
  const Vertex o = pair.origin;

  auto slot = [=](std::uint64_t cluster, unsigned k, unsigned c) {
    const unsigned a = static_cast<unsigned>(std::popcount(cluster & plus_mask));
    const unsigned b = static_cast<unsigned>(std::popcount(cluster & minus_mask));
    return (std::size_t(a) * nb + b) * row + std::size_t(k) * slots + c;
  };

  const std::uint64_t total = std::uint64_t{1} << units;
  std::vector<std::uint64_t> table;
  if (site) {
    table = sweep(total, opts.threads, table_size, [&](std::uint64_t lo, std::uint64_t hi, auto& t) {
      for (std::uint64_t mask = lo; mask < hi; ++mask) {
        const unsigned k = static_cast<unsigned>(std::popcount(mask));
        ++t[slot(site_cluster(adj, o, mask), k, 0)];
      }
    });
  } else if (rc) {
    table = sweep(total, opts.threads, table_size, [&](std::uint64_t lo, std::uint64_t hi, auto& t) {
      std::vector<Vertex> parent(g.n_vertices());
      for (std::uint64_t mask = lo; mask < hi; ++mask) {
        const unsigned k = static_cast<unsigned>(std::popcount(mask));
        const unsigned c = count_clusters(g, mask, parent);
        ++t[slot(bond_cluster(adj, o, mask), k, c)];
      }
    });
  } else {
    table = sweep(total, opts.threads, table_size, [&](std::uint64_t lo, std::uint64_t hi, auto& t) {
      for (std::uint64_t mask = lo; mask < hi; ++mask) {
        const unsigned k = static_cast<unsigned>(std::popcount(mask));
        ++t[slot(bond_cluster(adj, o, mask), k, 0)];
      }
    });
  }

  for (unsigned a = 0; a <= poly.n_plus; ++a) {
    for (unsigned b = 0; b < nb; ++b) {
      const std::size_t base = (std::size_t(a) * nb + b) * row;
      auto first = table.begin() + static_cast<std::ptrdiff_t>(base);
      auto last = first + static_cast<std::ptrdiff_t>(row);
      if (std::any_of(first, last, [](std::uint64_t x) { return x != 0; })) {
        poly.counts.emplace(Outcome{a, b}, std::vector<std::uint64_t>(first, last));
      }
    }
  }
  return poly;
}

std::vector<Rational> binomial_weights(unsigned units, const Rational& p) {
  check_probability(p);
  const Rational q = 1 - p;
  std::vector<Rational> w(units + 1);
  std::vector<Rational> p_pow(units + 1), q_pow(units + 1);
  p_pow[0] = 1;
  q_pow[0] = 1;
  for (unsigned k = 1; k <= units; ++k) {
    p_pow[k] = p_pow[k - 1] * p;
    q_pow[k] = q_pow[k - 1] * q;
  }
  for (unsigned k = 0; k <= units; ++k) w[k] = p_pow[k] * q_pow[units - k];
  return w;
}

namespace {

Rational from_count(std::uint64_t n) { return Rational(static_cast<unsigned long>(n)); }

}  // namespace

JointPmf eval_joint(const JointOutcomePolynomial& poly, const Rational& p) {
  const auto w = binomial_weights(poly.units, p);
  JointPmf pmf;
  pmf.n_plus = poly.n_plus;
  pmf.n_minus = poly.n_minus;

  if (poly.law.kind != PartitionLaw::Kind::random_cluster) {
    for (const auto& [o, row] : poly.counts) {
      Rational s = 0;
      for (unsigned k = 0; k <= poly.units; ++k)
        if (row[k]) s += from_count(row[k]) * w[k];
      pmf.prob.emplace(o, s);
    }
    return pmf;
  }

  std::vector<Rational> q_pow(poly.cluster_slots);
  q_pow[0] = 1;
  for (unsigned c = 1; c < poly.cluster_slots; ++c) q_pow[c] = q_pow[c - 1] * poly.law.q;
  Rational z = 0;
  for (const auto& [o, row] : poly.counts) {
    Rational s = 0;
    for (unsigned k = 0; k <= poly.units; ++k) {
      for (unsigned c = 0; c < poly.cluster_slots; ++c) {
        const std::uint64_t n = row[k * poly.cluster_slots + c];
        if (n) s += from_count(n) * w[k] * q_pow[c];
      }
    }
    z += s;
    pmf.prob.emplace(o, s);
  }
  for (auto& [o, pr] : pmf.prob) pr /= z;
  return pmf;
}

ExpectedSizes expected_sizes(const JointPmf& pmf) {
  ExpectedSizes e{0, 0};
  for (const auto& [o, pr] : pmf.prob) {
    e.e_plus += pr * o.a;
    e.e_minus += pr * o.b;
  }
  return e;
}

DominationReport check_domination(const JointPmf& pmf) {
  DominationReport r;
  r.minus_empty = pmf.n_minus == 0;
  const unsigned top = std::max(pmf.n_plus, pmf.n_minus);
  for (unsigned t = 1; t <= top; ++t) {
    Rational m = 0;
    for (const auto& [o, pr] : pmf.prob) {
      if (o.a >= t) m += pr;
      if (o.b >= t) m -= pr;
    }
    if (m < 0 && !r.first_negative) r.first_negative = t;
    if (m < 0) r.passed = false;
    r.margins.push_back(std::move(m));
  }
  return r;
}

std::vector<TestFunction> default_test_functions(unsigned max_size) {
  std::vector<TestFunction> fs;
  for (unsigned t = 1; t <= max_size; ++t) {
    fs.push_back({"1{n>=" + std::to_string(t) + "}", [t](unsigned n) { return Rational(n >= t ? 1 : 0); }});
  }
  fs.push_back({"n", [](unsigned n) { return Rational(n); }});
  fs.push_back({"n^2", [](unsigned n) -> Rational { return Rational(n) * n; }});
  return fs;
}

std::vector<IdentityResidual> check_partition_identity(const JointPmf& pmf, std::span<const TestFunction> fs) {
  std::vector<IdentityResidual> out;
  for (const TestFunction& tf : fs) {
    IdentityResidual r{tf.name, 0, 0, 0};
    for (const auto& [o, pr] : pmf.prob) {
      if (o.a + o.b == 0) throw InvalidArgument("outcome with |C+| + |C-| = 0");
      const Rational diff = tf.f(o.a) - tf.f(o.b);
      r.lhs += pr * diff;
      r.rhs += pr * (Rational(int(o.a) - int(o.b)) * diff / (o.a + o.b));
    }
    r.residual = r.lhs - r.rhs;
    out.push_back(std::move(r));
  }
  return out;
}

RatioIdentity check_ratio_identity(const JointPmf& pmf) {
  RatioIdentity r{0, 0};
  for (const auto& [o, pr] : pmf.prob) {
    if (o.a == 0) throw InvalidArgument("outcome with |C+| = 0");
    Rational ratio(o.b, o.a);
    ratio.canonicalize();
    r.lhs += pr * ratio;
    if (o.b > 0) r.rhs += pr;
  }
  return r;
}

ConnectionPolynomial enumerate_connections(const Graph& g, Vertex o, const EnumerationOptions& opts) {
  if (o >= g.n_vertices()) throw InvalidArgument("origin out of range");
  if (g.n_vertices() > 64) throw InvalidArgument("exact enumeration supports at most 64 vertices");
  const unsigned edges = static_cast<unsigned>(g.n_edges());
  check_cap(edges, opts);
  const FlatAdjacency adj = flatten(g);
  const std::size_t row = edges + 1;
  auto table = sweep(std::uint64_t{1} << edges, opts.threads, g.n_vertices() * row,
                     [&](std::uint64_t lo, std::uint64_t hi, auto& t) {
                       for (std::uint64_t mask = lo; mask < hi; ++mask) {
                         const unsigned k = static_cast<unsigned>(std::popcount(mask));
                         std::uint64_t cluster = bond_cluster(adj, o, mask);
                         while (cluster) {
                           const unsigned v = static_cast<unsigned>(std::countr_zero(cluster));
                           cluster &= cluster - 1;
                           ++t[v * row + k];
                         }
                       }
                     });
  ConnectionPolynomial poly;
  poly.edges = edges;
  poly.origin = o;
  poly.counts.resize(g.n_vertices());
  for (Vertex v = 0; v < g.n_vertices(); ++v) {
    poly.counts[v].assign(table.begin() + static_cast<std::ptrdiff_t>(v * row),
                          table.begin() + static_cast<std::ptrdiff_t>((v + 1) * row));
  }
  return poly;
}

Rational eval_connection(const ConnectionPolynomial& poly, Vertex v, const Rational& p) {
  if (v >= poly.counts.size()) throw InvalidArgument("vertex out of range");
  const auto w = binomial_weights(poly.edges, p);
  Rational s = 0;
  for (unsigned k = 0; k <= poly.edges; ++k)
    if (poly.counts[v][k]) s += from_count(poly.counts[v][k]) * w[k];
  return s;
}

Rational connection_probability(const Graph& g, Vertex o, Vertex v, const Rational& p,
                                const EnumerationOptions& opts) {
  if (v >= g.n_vertices()) throw InvalidArgument("vertex out of range");
  check_probability(p);
  if (o == v) return Rational(1);
  return eval_connection(enumerate_connections(g, o, opts), v, p);
}

}  // namespace percsym
