#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace percsym {

using Vertex = std::uint32_t;

struct Edge {
  Vertex u;  // u < v
  Vertex v;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Coordinate tuple; builder-produced graphs label product vertices by the
// concatenation of their factor coordinates.
using Label = std::vector<int>;

// Sorted, duplicate-free list of vertex indices.
class VertexSet {
 public:
  VertexSet() = default;
  // Sorts; throws InvalidArgument on duplicates.
  explicit VertexSet(std::vector<Vertex> vertices);
  VertexSet(std::initializer_list<Vertex> vertices)
      : VertexSet(std::vector<Vertex>(vertices)) {}

  bool contains(Vertex v) const;
  std::size_t size() const noexcept { return vertices_.size(); }
  bool empty() const noexcept { return vertices_.empty(); }
  auto begin() const noexcept { return vertices_.begin(); }
  auto end() const noexcept { return vertices_.end(); }
  Vertex operator[](std::size_t i) const { return vertices_[i]; }
  const std::vector<Vertex>& values() const noexcept { return vertices_; }

  // Throws InvalidArgument if any index is >= n.
  void check_range(std::size_t n) const;

  // Bit v set for each member; requires every index < 64.
  std::uint64_t mask() const;

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  std::vector<Vertex> vertices_;
};

struct Neighbor {
  Vertex vertex;
  std::uint32_t edge;  // canonical edge index
};

// Finite, simple, connected, undirected graph. Immutable after construction.
// Edges are kept sorted by (min endpoint, max endpoint); edge k is bit k of a
// configuration mask.
class Graph {
 public:
  // Normalizes endpoint order and sorts the edges. Throws InvalidArgument on
  // self-loops, duplicate edges, out-of-range endpoints, an empty vertex set,
  // or a disconnected graph. Labels default to (i); moduli default to {n}.
  Graph(std::size_t n_vertices, std::vector<Edge> edges, std::vector<Label> labels = {},
        std::vector<int> axis_moduli = {});

  std::size_t n_vertices() const noexcept { return n_vertices_; }
  std::size_t n_edges() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::span<const Neighbor> neighbors(Vertex v) const { return adjacency_[v]; }
  std::size_t degree(Vertex v) const { return adjacency_[v].size(); }

  const Label& label(Vertex v) const { return labels_[v]; }
  const std::vector<Label>& labels() const noexcept { return labels_; }
  // Size of each label coordinate's range; coordinate i takes values in
  // [0, axis_moduli()[i]).
  const std::vector<int>& axis_moduli() const noexcept { return axis_moduli_; }
  std::optional<Vertex> find_label(const Label& label) const;

  bool has_edge(Vertex a, Vertex b) const;
  std::optional<std::uint32_t> edge_index(Vertex a, Vertex b) const;

 private:
  std::size_t n_vertices_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::vector<Label> labels_;
  std::vector<int> axis_moduli_;
};

// Declarative description of a graph; see build_graph for the builders.
struct GraphSpec {
  enum class Builder { path, cycle, complete, hypercube, torus, bunkbed, cylinder, explicit_edges };

  Builder builder = Builder::path;
  int n = 0;  // path / cycle / complete size, torus first axis
  int m = 0;  // torus second axis, cylinder cycle length
  int d = 0;  // hypercube dimension
  std::shared_ptr<const GraphSpec> base;  // bunkbed / cylinder
  std::size_t vertices = 0;               // explicit
  std::vector<std::pair<Vertex, Vertex>> edge_list;  // explicit

  static GraphSpec path(int n);
  static GraphSpec cycle(int n);
  static GraphSpec complete(int n);
  static GraphSpec hypercube(int d);
  static GraphSpec torus(int n, int m);
  static GraphSpec bunkbed(GraphSpec base);
  static GraphSpec cylinder(GraphSpec base, int m);
  static GraphSpec explicit_graph(std::size_t vertices, std::vector<std::pair<Vertex, Vertex>> edges);

  std::string describe() const;
};

// Cartesian product; vertex (i, j) gets index i * |V(b)| + j.
Graph cartesian_product(const Graph& a, const Graph& b);

// torus(n,m) = cycle(n) x cycle(m); hypercube(d) = L2 x ... x L2;
// bunkbed(base) = base x L2; cylinder(base, m) = base x cycle(m).
Graph build_graph(const GraphSpec& spec);

// Breadth-first distances from `source` to every vertex.
std::vector<std::size_t> distances_from(const Graph& g, Vertex source);
std::size_t distance(const Graph& g, Vertex u, Vertex v);

// S_k(x) = {y : d(x, y) = k}.
VertexSet sphere(const Graph& g, Vertex x, std::size_t k);

// Inner boundary of thickness k: members of `a` within distance k of the
// complement. Requires k >= 1.
VertexSet boundary(const Graph& g, const VertexSet& a, std::size_t k);

// The graph with vertex v renamed to relabel[v]. Labels travel with vertices.
Graph relabel_vertices(const Graph& g, std::span<const Vertex> relabel);

}  // namespace percsym
