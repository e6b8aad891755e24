#include "percsym/monte_carlo.hpp"

#include "percsym/error.hpp"
#include "percsym/philox.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace percsym {

std::uint64_t SeedSpec::chunk_count(std::uint64_t n_samples) const {
  if (samples_per_chunk == 0) throw InvalidArgument("samples_per_chunk must be >= 1");
  return (n_samples + samples_per_chunk - 1) / samples_per_chunk;
}

bool edge_open(std::uint64_t seed, std::uint64_t sample, std::uint32_t edge, double p) {
  return to_unit_interval(Philox4x32(seed).bits64(sample, edge)) < p;
}

namespace {

void check_p(double p) {
  if (!(p > 0 && p < 1)) throw InvalidArgument("p must lie strictly between 0 and 1");
}

// Reusable breadth-first state; visited marks are sample stamps so nothing
// is cleared between samples.
class ClusterSampler {
 public:
  ClusterSampler(const Graph& g, double p, std::uint64_t seed)
      : g_(g), p_(p), rng_(seed), stamp_(g.n_vertices(), 0) {
    queue_.reserve(g.n_vertices());
  }

  // Calls visit(v) for every vertex of C_o.
  template <class Visit>
  void run(Vertex o, std::uint64_t sample, Visit&& visit) {
    if (++current_ == 0) {
      std::fill(stamp_.begin(), stamp_.end(), 0);
      current_ = 1;
    }
    queue_.clear();
    queue_.push_back(o);
    stamp_[o] = current_;
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      const Vertex u = queue_[head];
      visit(u);
      for (const Neighbor& nb : g_.neighbors(u)) {
        if (stamp_[nb.vertex] == current_) continue;
        if (to_unit_interval(rng_.bits64(sample, nb.edge)) < p_) {
          stamp_[nb.vertex] = current_;
          queue_.push_back(nb.vertex);
        }
      }
    }
  }

 private:
  const Graph& g_;
  double p_;
  Philox4x32 rng_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t current_ = 0;
  std::vector<Vertex> queue_;
};

unsigned worker_count(unsigned requested, std::uint64_t chunks) {
  unsigned t = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::uint64_t>(t, std::max<std::uint64_t>(chunks, 1)));
}

// Hands chunks to workers; work(lo, hi, state) accumulates into a per-worker
// state. The caller merges the states; merges are sums, so the result only
// depends on which samples were drawn.
template <class State, class MakeState, class Work>
std::vector<State> run_chunks(std::uint64_t n, const SeedSpec& seed, MakeState make_state, Work work) {
  const std::uint64_t chunks = seed.chunk_count(n);
  const unsigned workers = worker_count(seed.threads, chunks);
  std::vector<State> states;
  states.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) states.push_back(make_state());
  std::atomic<std::uint64_t> next{0};
  auto loop = [&](unsigned w) {
    for (std::uint64_t c = next.fetch_add(1); c < chunks; c = next.fetch_add(1)) {
      const std::uint64_t lo = c * seed.samples_per_chunk;
      const std::uint64_t hi = std::min(n, lo + seed.samples_per_chunk);
      work(lo, hi, states[w]);
    }
  };
  if (workers == 1) {
    loop(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(loop, w);
  }
  return states;
}

McEstimate from_moments(std::uint64_t n, double sum, double sum_sq, double level) {
  McEstimate e;
  e.n_samples = n;
  e.level = level;
  const double nn = static_cast<double>(n);
  e.estimate = sum / nn;
  double var = n > 1 ? (sum_sq - sum * sum / nn) / (nn - 1) : 0.0;
  if (var < 0) var = 0;
  e.std_error = std::sqrt(var / nn);
  Interval ci = normal_interval(e.estimate, e.std_error, level);
  e.lo = std::min(ci.lo, e.estimate);
  e.hi = std::max(ci.hi, e.estimate);
  return e;
}

}  // namespace

VertexSet sample_cluster(const Graph& g, Vertex o, double p, std::uint64_t seed, std::uint64_t sample) {
  check_p(p);
  if (o >= g.n_vertices()) throw InvalidArgument("origin out of range");
  ClusterSampler sampler(g, p, seed);
  std::vector<Vertex> out;
  sampler.run(o, sample, [&](Vertex v) { out.push_back(v); });
  return VertexSet(std::move(out));
}

VertexSet sample_cluster_eager(const Graph& g, Vertex o, double p, std::uint64_t seed, std::uint64_t sample) {
  check_p(p);
  if (o >= g.n_vertices()) throw InvalidArgument("origin out of range");
  std::vector<char> open(g.n_edges());
  for (std::uint32_t e = 0; e < g.n_edges(); ++e) open[e] = edge_open(seed, sample, e, p) ? 1 : 0;
  std::vector<char> seen(g.n_vertices(), 0);
  std::vector<Vertex> stack{o};
  std::vector<Vertex> out;
  seen[o] = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    out.push_back(v);
    for (const Neighbor& nb : g.neighbors(v)) {
      if (open[nb.edge] && !seen[nb.vertex]) {
        seen[nb.vertex] = 1;
        stack.push_back(nb.vertex);
      }
    }
  }
  return VertexSet(std::move(out));
}

EmpiricalJoint estimate_joint(const Graph& g, const VertexSetPair& pair, double p, std::uint64_t n,
                              const SeedSpec& seed) {
  check_p(p);
  if (n < 1) throw InvalidArgument("need at least one sample");
  pair.validate(g.n_vertices());
  // 0 = outside, 1 = V+, 2 = V-
  std::vector<std::uint8_t> side(g.n_vertices(), 0);
  for (Vertex v : pair.v_plus) side[v] = 1;
  for (Vertex v : pair.v_minus) side[v] = 2;
  const unsigned nb = static_cast<unsigned>(pair.v_minus.size() + 1);
  const std::size_t table_size = (pair.v_plus.size() + 1) * nb;

  struct State {
    ClusterSampler sampler;
    std::vector<std::uint64_t> table;
  };
  auto states = run_chunks<State>(
      n, seed, [&] { return State{ClusterSampler(g, p, seed.master_seed), std::vector<std::uint64_t>(table_size, 0)}; },
      [&](std::uint64_t lo, std::uint64_t hi, State& st) {
        for (std::uint64_t s = lo; s < hi; ++s) {
          unsigned a = 0, b = 0;
          st.sampler.run(pair.origin, s, [&](Vertex v) {
            a += side[v] == 1;
            b += side[v] == 2;
          });
          ++st.table[std::size_t(a) * nb + b];
        }
      });

  EmpiricalJoint emp;
  emp.n_samples = n;
  emp.n_plus = static_cast<unsigned>(pair.v_plus.size());
  emp.n_minus = static_cast<unsigned>(pair.v_minus.size());
  for (std::size_t i = 0; i < table_size; ++i) {
    std::uint64_t c = 0;
    for (const State& st : states) c += st.table[i];
    if (c) emp.counts.emplace(Outcome{static_cast<unsigned>(i / nb), static_cast<unsigned>(i % nb)}, c);
  }
  return emp;
}

ConnectionPatterns estimate_connection_patterns(const Graph& g, Vertex o, std::span<const Vertex> targets,
                                                double p, std::uint64_t n, const SeedSpec& seed) {
  check_p(p);
  if (n < 1) throw InvalidArgument("need at least one sample");
  if (o >= g.n_vertices()) throw InvalidArgument("origin out of range");
  if (targets.size() > 64) throw InvalidArgument("at most 64 connection targets");
  std::vector<std::uint64_t> bit(g.n_vertices(), 0);
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] >= g.n_vertices()) throw InvalidArgument("target out of range");
    bit[targets[i]] |= std::uint64_t{1} << i;
  }
  struct State {
    ClusterSampler sampler;
    std::map<std::uint64_t, std::uint64_t> counts;
  };
  auto states = run_chunks<State>(
      n, seed, [&] { return State{ClusterSampler(g, p, seed.master_seed), {}}; },
      [&](std::uint64_t lo, std::uint64_t hi, State& st) {
        for (std::uint64_t s = lo; s < hi; ++s) {
          std::uint64_t pattern = 0;
          st.sampler.run(o, s, [&](Vertex v) { pattern |= bit[v]; });
          ++st.counts[pattern];
        }
      });
  ConnectionPatterns out;
  out.n_samples = n;
  out.n_targets = targets.size();
  for (const State& st : states)
    for (const auto& [pattern, c] : st.counts) out.counts[pattern] += c;
  return out;
}

McEstimate connection_from_patterns(const ConnectionPatterns& patterns, std::size_t target, double level) {
  if (target >= patterns.n_targets) throw InvalidArgument("target index out of range");
  std::uint64_t hits = 0;
  for (const auto& [pattern, c] : patterns.counts)
    if ((pattern >> target) & 1u) hits += c;
  McEstimate e;
  e.n_samples = patterns.n_samples;
  e.level = level;
  e.estimate = static_cast<double>(hits) / static_cast<double>(patterns.n_samples);
  e.std_error = std::sqrt(e.estimate * (1 - e.estimate) / static_cast<double>(patterns.n_samples));
  Interval ci = wilson_interval(hits, patterns.n_samples, level);
  e.lo = ci.lo;
  e.hi = ci.hi;
  return e;
}

McEstimate estimate_connection(const Graph& g, Vertex o, Vertex v, double p, std::uint64_t n,
                               const SeedSpec& seed, double level) {
  if (v >= g.n_vertices()) throw InvalidArgument("target out of range");
  if (v == o) {
    check_p(p);
    McEstimate e;
    e.n_samples = n;
    e.level = level;
    e.estimate = e.lo = e.hi = 1;
    return e;
  }
  const Vertex targets[] = {v};
  return connection_from_patterns(estimate_connection_patterns(g, o, targets, p, n, seed), 0, level);
}

McEstimate estimate_linear(const ConnectionPatterns& patterns, std::span<const double> coef, double level) {
  if (coef.size() != patterns.n_targets) throw InvalidArgument("coefficient count does not match targets");
  double sum = 0, sum_sq = 0;
  for (const auto& [pattern, c] : patterns.counts) {
    double x = 0;
    for (std::size_t i = 0; i < coef.size(); ++i)
      if ((pattern >> i) & 1u) x += coef[i];
    sum += x * static_cast<double>(c);
    sum_sq += x * x * static_cast<double>(c);
  }
  return from_moments(patterns.n_samples, sum, sum_sq, level);
}

namespace {

template <class F>
McEstimate joint_mean(const EmpiricalJoint& emp, double level, F value) {
  double sum = 0, sum_sq = 0;
  for (const auto& [o, c] : emp.counts) {
    const double x = value(o);
    sum += x * static_cast<double>(c);
    sum_sq += x * x * static_cast<double>(c);
  }
  return from_moments(emp.n_samples, sum, sum_sq, level);
}

}  // namespace

McEstimate mean_plus(const EmpiricalJoint& emp, double level) {
  return joint_mean(emp, level, [](const Outcome& o) { return double(o.a); });
}

McEstimate mean_minus(const EmpiricalJoint& emp, double level) {
  return joint_mean(emp, level, [](const Outcome& o) { return double(o.b); });
}

McEstimate mean_difference(const EmpiricalJoint& emp, double level) {
  return joint_mean(emp, level, [](const Outcome& o) { return double(o.a) - double(o.b); });
}

McDomination mc_domination_verdict(const EmpiricalJoint& emp, double level, const VerdictPolicy& policy) {
  McDomination out;
  out.level = level;
  const unsigned top = std::max(emp.n_plus, emp.n_minus);
  out.per_threshold_level = top > 0 ? 1 - (1 - level) / top : level;
  out.overall = Verdict::consistent;
  for (unsigned t = 1; t <= top; ++t) {
    ThresholdVerdict tv;
    tv.threshold = t;
    tv.margin = joint_mean(emp, out.per_threshold_level, [t](const Outcome& o) {
      return double(o.a >= t) - double(o.b >= t);
    });
    tv.verdict = classify_nonnegative({tv.margin.lo, tv.margin.hi}, emp.n_samples, policy);
    out.overall = combine(out.overall, tv.verdict);
    out.thresholds.push_back(tv);
  }
  if (top == 0 || emp.n_samples < policy.min_samples) out.overall = Verdict::inconclusive;
  return out;
}

}  // namespace percsym
