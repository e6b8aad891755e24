#include "percsym/graph.hpp"

#include "percsym/error.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <sstream>

namespace percsym {

VertexSet::VertexSet(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
  std::sort(vertices_.begin(), vertices_.end());
  if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end()) {
    throw InvalidArgument("vertex set contains duplicates");
  }
}

bool VertexSet::contains(Vertex v) const {
  return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

void VertexSet::check_range(std::size_t n) const {
  if (!vertices_.empty() && vertices_.back() >= n) {
    throw InvalidArgument("vertex " + std::to_string(vertices_.back()) + " out of range (n = " +
                          std::to_string(n) + ")");
  }
}

std::uint64_t VertexSet::mask() const {
  std::uint64_t m = 0;
  for (Vertex v : vertices_) {
    if (v >= 64) throw InvalidArgument("vertex mask needs indices below 64");
    m |= std::uint64_t{1} << v;
  }
  return m;
}

Graph::Graph(std::size_t n_vertices, std::vector<Edge> edges, std::vector<Label> labels,
             std::vector<int> axis_moduli)
    : n_vertices_(n_vertices),
      edges_(std::move(edges)),
      labels_(std::move(labels)),
      axis_moduli_(std::move(axis_moduli)) {
  if (n_vertices_ == 0) throw InvalidArgument("graph has no vertices");
  if (n_vertices_ > std::numeric_limits<Vertex>::max()) throw InvalidArgument("too many vertices");
  for (Edge& e : edges_) {
    if (e.u == e.v) throw InvalidArgument("self-loop at vertex " + std::to_string(e.u));
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.v >= n_vertices_) throw InvalidArgument("edge endpoint out of range");
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
    throw InvalidArgument("duplicate edge");
  }
  if (edges_.size() > std::numeric_limits<std::uint32_t>::max()) throw InvalidArgument("too many edges");

  adjacency_.resize(n_vertices_);
  for (std::uint32_t k = 0; k < edges_.size(); ++k) {
    adjacency_[edges_[k].u].push_back({edges_[k].v, k});
    adjacency_[edges_[k].v].push_back({edges_[k].u, k});
  }
  for (auto& nbrs : adjacency_) {
    std::sort(nbrs.begin(), nbrs.end(),
              [](const Neighbor& a, const Neighbor& b) { return a.vertex < b.vertex; });
  }

  if (labels_.empty()) {
    labels_.reserve(n_vertices_);
    for (std::size_t i = 0; i < n_vertices_; ++i) labels_.push_back({static_cast<int>(i)});
    axis_moduli_ = {static_cast<int>(n_vertices_)};
  }
  if (labels_.size() != n_vertices_) throw InvalidArgument("label count does not match vertex count");

  // connectivity
  std::vector<char> seen(n_vertices_, 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (const Neighbor& nb : adjacency_[v]) {
      if (!seen[nb.vertex]) {
        seen[nb.vertex] = 1;
        ++reached;
        stack.push_back(nb.vertex);
      }
    }
  }
  if (reached != n_vertices_) throw InvalidArgument("graph is not connected");
}

std::optional<Vertex> Graph::find_label(const Label& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<Vertex>(it - labels_.begin());
}

std::optional<std::uint32_t> Graph::edge_index(Vertex a, Vertex b) const {
  if (a >= n_vertices_ || b >= n_vertices_) return std::nullopt;
  const auto& nbrs = adjacency_[a];
  auto it = std::lower_bound(nbrs.begin(), nbrs.end(), b,
                             [](const Neighbor& nb, Vertex x) { return nb.vertex < x; });
  if (it == nbrs.end() || it->vertex != b) return std::nullopt;
  return it->edge;
}

bool Graph::has_edge(Vertex a, Vertex b) const { return edge_index(a, b).has_value(); }

GraphSpec GraphSpec::path(int n) {
  GraphSpec s;
  s.builder = Builder::path;
  s.n = n;
  return s;
}
GraphSpec GraphSpec::cycle(int n) {
  GraphSpec s;
  s.builder = Builder::cycle;
  s.n = n;
  return s;
}
GraphSpec GraphSpec::complete(int n) {
  GraphSpec s;
  s.builder = Builder::complete;
  s.n = n;
  return s;
}
GraphSpec GraphSpec::hypercube(int d) {
  GraphSpec s;
  s.builder = Builder::hypercube;
  s.d = d;
  return s;
}
GraphSpec GraphSpec::torus(int n, int m) {
  GraphSpec s;
  s.builder = Builder::torus;
  s.n = n;
  s.m = m;
  return s;
}
GraphSpec GraphSpec::bunkbed(GraphSpec base) {
  GraphSpec s;
  s.builder = Builder::bunkbed;
  s.base = std::make_shared<const GraphSpec>(std::move(base));
  return s;
}
GraphSpec GraphSpec::cylinder(GraphSpec base, int m) {
  GraphSpec s;
  s.builder = Builder::cylinder;
  s.base = std::make_shared<const GraphSpec>(std::move(base));
  s.m = m;
  return s;
}
GraphSpec GraphSpec::explicit_graph(std::size_t vertices, std::vector<std::pair<Vertex, Vertex>> edges) {
  GraphSpec s;
  s.builder = Builder::explicit_edges;
  s.vertices = vertices;
  s.edge_list = std::move(edges);
  return s;
}

std::string GraphSpec::describe() const {
  std::ostringstream os;
  switch (builder) {
    case Builder::path: os << "path(" << n << ")"; break;
    case Builder::cycle: os << "cycle(" << n << ")"; break;
    case Builder::complete: os << "complete(" << n << ")"; break;
    case Builder::hypercube: os << "hypercube(" << d << ")"; break;
    case Builder::torus: os << "torus(" << n << "," << m << ")"; break;
    case Builder::bunkbed: os << "bunkbed(" << (base ? base->describe() : "?") << ")"; break;
    case Builder::cylinder: os << "cylinder(" << (base ? base->describe() : "?") << "," << m << ")"; break;
    case Builder::explicit_edges:
      os << "explicit(" << vertices << "," << edge_list.size() << " edges)";
      break;
  }
  return os.str();
}

Graph cartesian_product(const Graph& a, const Graph& b) {
  const std::size_t na = a.n_vertices();
  const std::size_t nb = b.n_vertices();
  std::vector<Edge> edges;
  edges.reserve(a.n_edges() * nb + b.n_edges() * na);
  for (const Edge& e : a.edges()) {
    for (std::size_t j = 0; j < nb; ++j) {
      edges.push_back({static_cast<Vertex>(e.u * nb + j), static_cast<Vertex>(e.v * nb + j)});
    }
  }
  for (std::size_t i = 0; i < na; ++i) {
    for (const Edge& e : b.edges()) {
      edges.push_back({static_cast<Vertex>(i * nb + e.u), static_cast<Vertex>(i * nb + e.v)});
    }
  }
  std::vector<Label> labels;
  labels.reserve(na * nb);
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < nb; ++j) {
      Label l = a.label(static_cast<Vertex>(i));
      const Label& r = b.label(static_cast<Vertex>(j));
      l.insert(l.end(), r.begin(), r.end());
      labels.push_back(std::move(l));
    }
  }
  std::vector<int> moduli = a.axis_moduli();
  moduli.insert(moduli.end(), b.axis_moduli().begin(), b.axis_moduli().end());
  return Graph(na * nb, std::move(edges), std::move(labels), std::move(moduli));
}

namespace {

Graph path_graph(int n) {
  if (n < 1) throw InvalidArgument("path needs n >= 1");
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({Vertex(i), Vertex(i + 1)});
  return Graph(n, std::move(edges));
}

Graph cycle_graph(int n) {
  if (n < 3) throw InvalidArgument("cycle needs n >= 3 to stay simple");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.push_back({Vertex(i), Vertex((i + 1) % n)});
  return Graph(n, std::move(edges));
}

Graph complete_graph(int n) {
  if (n < 1) throw InvalidArgument("complete graph needs n >= 1");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.push_back({Vertex(i), Vertex(j)});
  return Graph(n, std::move(edges));
}

}  // namespace

Graph build_graph(const GraphSpec& spec) {
  using B = GraphSpec::Builder;
  switch (spec.builder) {
    case B::path: return path_graph(spec.n);
    case B::cycle: return cycle_graph(spec.n);
    case B::complete: return complete_graph(spec.n);
    case B::hypercube: {
      if (spec.d < 1 || spec.d > 20) throw InvalidArgument("hypercube needs 1 <= d <= 20");
      Graph g = path_graph(2);
      for (int i = 1; i < spec.d; ++i) g = cartesian_product(g, path_graph(2));
      return g;
    }
    case B::torus:
      if (spec.n < 3 || spec.m < 3) throw InvalidArgument("torus needs n, m >= 3 to stay simple");
      return cartesian_product(cycle_graph(spec.n), cycle_graph(spec.m));
    case B::bunkbed:
      if (!spec.base) throw InvalidArgument("bunkbed needs a base graph");
      return cartesian_product(build_graph(*spec.base), path_graph(2));
    case B::cylinder:
      if (!spec.base) throw InvalidArgument("cylinder needs a base graph");
      if (spec.m < 3) throw InvalidArgument("cylinder needs m >= 3 to stay simple");
      return cartesian_product(build_graph(*spec.base), cycle_graph(spec.m));
    case B::explicit_edges: {
      std::vector<Edge> edges;
      edges.reserve(spec.edge_list.size());
      for (auto [u, v] : spec.edge_list) edges.push_back({u, v});
      return Graph(spec.vertices, std::move(edges));
    }
  }
  throw InvalidArgument("unknown graph builder");
}

std::vector<std::size_t> distances_from(const Graph& g, Vertex source) {
  if (source >= g.n_vertices()) throw InvalidArgument("vertex out of range");
  constexpr std::size_t unreached = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(g.n_vertices(), unreached);
  std::deque<Vertex> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    for (const Neighbor& nb : g.neighbors(v)) {
      if (dist[nb.vertex] == unreached) {
        dist[nb.vertex] = dist[v] + 1;
        queue.push_back(nb.vertex);
      }
    }
  }
  return dist;
}

std::size_t distance(const Graph& g, Vertex u, Vertex v) {
  if (v >= g.n_vertices()) throw InvalidArgument("vertex out of range");
  return distances_from(g, u)[v];
}

VertexSet sphere(const Graph& g, Vertex x, std::size_t k) {
  auto dist = distances_from(g, x);
  std::vector<Vertex> out;
  for (Vertex v = 0; v < g.n_vertices(); ++v)
    if (dist[v] == k) out.push_back(v);
  return VertexSet(std::move(out));
}

VertexSet boundary(const Graph& g, const VertexSet& a, std::size_t k) {
  if (k < 1) throw InvalidArgument("boundary thickness must be >= 1");
  a.check_range(g.n_vertices());
  // multi-source BFS from the complement, truncated at depth k
  constexpr std::size_t unreached = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(g.n_vertices(), unreached);
  std::deque<Vertex> queue;
  for (Vertex v = 0; v < g.n_vertices(); ++v) {
    if (!a.contains(v)) {
      dist[v] = 0;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    if (dist[v] == k) continue;
    for (const Neighbor& nb : g.neighbors(v)) {
      if (dist[nb.vertex] == unreached) {
        dist[nb.vertex] = dist[v] + 1;
        queue.push_back(nb.vertex);
      }
    }
  }
  std::vector<Vertex> out;
  for (Vertex v : a)
    if (dist[v] != unreached) out.push_back(v);
  return VertexSet(std::move(out));
}

Graph relabel_vertices(const Graph& g, std::span<const Vertex> relabel) {
  if (relabel.size() != g.n_vertices()) throw InvalidArgument("relabeling has wrong length");
  std::vector<Edge> edges;
  edges.reserve(g.n_edges());
  for (const Edge& e : g.edges()) edges.push_back({relabel[e.u], relabel[e.v]});
  std::vector<Label> labels(g.n_vertices());
  std::vector<char> hit(g.n_vertices(), 0);
  for (Vertex v = 0; v < g.n_vertices(); ++v) {
    if (relabel[v] >= g.n_vertices() || hit[relabel[v]]) throw InvalidArgument("relabeling is not a bijection");
    hit[relabel[v]] = 1;
    labels[relabel[v]] = g.label(v);
  }
  return Graph(g.n_vertices(), std::move(edges), std::move(labels), g.axis_moduli());
}

}  // namespace percsym
