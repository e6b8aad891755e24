#include "oracle.hpp"

#include <algorithm>
#include <numeric>

namespace oracle {

namespace {

struct UnionFind {
  std::vector<unsigned> parent;
  explicit UnionFind(unsigned n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  unsigned find(unsigned x) {
    while (parent[x] != x) x = parent[x];
    return x;
  }
  void join(unsigned a, unsigned b) { parent[find(a)] = find(b); }
};

Joint finish(std::map<std::pair<unsigned, unsigned>, Rational> mass, const Rational& total,
             std::size_t n_plus, std::size_t n_minus) {
  Joint j;
  j.e_plus = 0;
  j.e_minus = 0;
  for (auto& [ab, w] : mass) {
    w /= total;
    j.e_plus += w * ab.first;
    j.e_minus += w * ab.second;
  }
  for (unsigned t = 1; t <= std::max(n_plus, n_minus); ++t) {
    Rational m = 0;
    for (const auto& [ab, w] : mass) {
      if (ab.first >= t) m += w;
      if (ab.second >= t) m -= w;
    }
    j.margins.push_back(m);
  }
  j.pmf = std::move(mass);
  return j;
}

}  // namespace

Joint bond(unsigned n, const EdgeList& edges, const std::set<unsigned>& v_plus, const std::set<unsigned>& v_minus,
           unsigned o, const Rational& p, std::optional<Rational> q) {
  std::map<std::pair<unsigned, unsigned>, Rational> mass;
  Rational total = 0;
  const unsigned m = static_cast<unsigned>(edges.size());
  for (std::uint64_t cfg = 0; cfg < (std::uint64_t{1} << m); ++cfg) {
    UnionFind uf(n);
    Rational w = 1;
    for (unsigned e = 0; e < m; ++e) {
      if ((cfg >> e) & 1) {
        uf.join(edges[e].first, edges[e].second);
        w *= p;
      } else {
        w *= 1 - p;
      }
    }
    if (q) {
      std::set<unsigned> roots;
      for (unsigned v = 0; v < n; ++v) roots.insert(uf.find(v));
      for (std::size_t c = 0; c < roots.size(); ++c) w *= *q;
    }
    unsigned a = 0, b = 0;
    const unsigned root = uf.find(o);
    for (unsigned v = 0; v < n; ++v) {
      if (uf.find(v) != root) continue;
      a += v_plus.count(v);
      b += v_minus.count(v);
    }
    mass[{a, b}] += w;
    total += w;
  }
  return finish(std::move(mass), total, v_plus.size(), v_minus.size());
}

Joint site(unsigned n, const EdgeList& edges, const std::set<unsigned>& v_plus, const std::set<unsigned>& v_minus,
           unsigned o, const Rational& p) {
  std::map<std::pair<unsigned, unsigned>, Rational> mass;
  for (std::uint64_t cfg = 0; cfg < (std::uint64_t{1} << n); ++cfg) {
    Rational w = 1;
    for (unsigned v = 0; v < n; ++v) w *= ((cfg >> v) & 1) ? p : 1 - p;
    UnionFind uf(n);
    for (const auto& [u, v] : edges)
      if (((cfg >> u) & 1) && ((cfg >> v) & 1)) uf.join(u, v);
    unsigned a = 0, b = 0;
    if (!((cfg >> o) & 1)) {
      a = v_plus.count(o);
    } else {
      const unsigned root = uf.find(o);
      for (unsigned v = 0; v < n; ++v) {
        if (!((cfg >> v) & 1) || uf.find(v) != root) continue;
        a += v_plus.count(v);
        b += v_minus.count(v);
      }
    }
    mass[{a, b}] += w;
  }
  return finish(std::move(mass), Rational(1), v_plus.size(), v_minus.size());
}

std::vector<Rational> connection(unsigned n, const EdgeList& edges, unsigned o, const Rational& p) {
  std::vector<Rational> c(n, Rational(0));
  const unsigned m = static_cast<unsigned>(edges.size());
  for (std::uint64_t cfg = 0; cfg < (std::uint64_t{1} << m); ++cfg) {
    UnionFind uf(n);
    Rational w = 1;
    for (unsigned e = 0; e < m; ++e) {
      if ((cfg >> e) & 1) {
        uf.join(edges[e].first, edges[e].second);
        w *= p;
      } else {
        w *= 1 - p;
      }
    }
    const unsigned root = uf.find(o);
    for (unsigned v = 0; v < n; ++v)
      if (uf.find(v) == root) c[v] += w;
  }
  return c;
}

}  // namespace oracle
