#include "percsym/generators.hpp"

#include "percsym/error.hpp"

#include <map>

namespace percsym {

namespace {

long mod(long a, long n) {
  long r = a % n;
  return r < 0 ? r + n : r;
}

std::size_t vertex_count(const GraphSpec& spec) { return build_graph(spec).n_vertices(); }

}  // namespace

Permutation from_label_map(const Graph& g, const std::function<Label(const Label&)>& map) {
  std::map<Label, Vertex> index;
  for (Vertex v = 0; v < g.n_vertices(); ++v) index.emplace(g.label(v), v);
  std::vector<Vertex> image(g.n_vertices());
  for (Vertex v = 0; v < g.n_vertices(); ++v) {
    auto it = index.find(map(g.label(v)));
    if (it == index.end()) throw InvalidArgument("label map leaves the vertex set");
    image[v] = it->second;
  }
  return Permutation(std::move(image));
}

Permutation affine_map(const Graph& g, const std::vector<std::vector<int>>& matrix,
                       const std::vector<int>& offset) {
  const auto& moduli = g.axis_moduli();
  const std::size_t dim = moduli.size();
  if (matrix.size() != dim || offset.size() != dim) {
    throw InvalidArgument("affine map dimension must equal the label dimension " + std::to_string(dim));
  }
  for (const auto& row : matrix) {
    if (row.size() != dim) throw InvalidArgument("affine matrix must be square");
  }
  return from_label_map(g, [&](const Label& x) {
    Label y(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      long acc = offset[i];
      for (std::size_t j = 0; j < dim; ++j) acc += long(matrix[i][j]) * x[j];
      y[i] = static_cast<int>(mod(acc, moduli[i]));
    }
    return y;
  });
}

Permutation lift_left(const Permutation& p, std::size_t nb) {
  const std::size_t na = p.size();
  std::vector<Vertex> image(na * nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j) image[i * nb + j] = static_cast<Vertex>(p(Vertex(i)) * nb + j);
  return Permutation(std::move(image));
}

Permutation lift_right(std::size_t na, const Permutation& p) {
  const std::size_t nb = p.size();
  std::vector<Vertex> image(na * nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j) image[i * nb + j] = static_cast<Vertex>(i * nb + p(Vertex(j)));
  return Permutation(std::move(image));
}

Permutation cycle_rotation(std::size_t n, long shift) {
  std::vector<Vertex> image(n);
  for (std::size_t x = 0; x < n; ++x) image[x] = static_cast<Vertex>(mod(long(x) + shift, long(n)));
  return Permutation(std::move(image));
}

Permutation cycle_reflection(std::size_t n, long center) {
  std::vector<Vertex> image(n);
  for (std::size_t x = 0; x < n; ++x) image[x] = static_cast<Vertex>(mod(center - long(x), long(n)));
  return Permutation(std::move(image));
}

Permutation path_reflection(std::size_t n) {
  std::vector<Vertex> image(n);
  for (std::size_t x = 0; x < n; ++x) image[x] = static_cast<Vertex>(n - 1 - x);
  return Permutation(std::move(image));
}

Permutation layer_swap(std::size_t base_vertices) { return lift_right(base_vertices, path_reflection(2)); }

Permutation hypercube_block_reflection(int d, int first, int last) {
  if (d < 1 || first < 0 || last > d || first >= last) throw InvalidArgument("bad hypercube axis range");
  // coordinate 0 is the most significant bit of the row-major index
  std::size_t flip = 0;
  for (int a = first; a < last; ++a) flip |= std::size_t{1} << (d - 1 - a);
  std::vector<Vertex> image(std::size_t{1} << d);
  for (std::size_t v = 0; v < image.size(); ++v) image[v] = static_cast<Vertex>(v ^ flip);
  return Permutation(std::move(image));
}

Permutation hypercube_reflection(int d, int axis) { return hypercube_block_reflection(d, axis, axis + 1); }

Permutation hypercube_transposition(int d, int i, int j) {
  if (d < 1 || i < 0 || j < 0 || i >= d || j >= d) throw InvalidArgument("bad hypercube axis");
  const int bi = d - 1 - i;
  const int bj = d - 1 - j;
  std::vector<Vertex> image(std::size_t{1} << d);
  for (std::size_t v = 0; v < image.size(); ++v) {
    std::size_t x = (v >> bi) & 1u;
    std::size_t y = (v >> bj) & 1u;
    std::size_t w = v & ~((std::size_t{1} << bi) | (std::size_t{1} << bj));
    w |= (x << bj) | (y << bi);
    image[v] = static_cast<Vertex>(w);
  }
  return Permutation(std::move(image));
}

Permutation torus_translation(int n, int m, int dx, int dy) {
  return compose(lift_left(cycle_rotation(n, dx), m), lift_right(n, cycle_rotation(m, dy)));
}

Permutation torus_point_reflection(int n, int m, int cx, int cy) {
  return compose(lift_left(cycle_reflection(n, cx), m), lift_right(n, cycle_reflection(m, cy)));
}

Permutation torus_diagonal_reflection(int n) {
  std::vector<Vertex> image(std::size_t(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) image[std::size_t(x) * n + y] = static_cast<Vertex>(std::size_t(y) * n + x);
  return Permutation(std::move(image));
}

std::vector<Permutation> builtin_generators(const GraphSpec& spec) {
  using B = GraphSpec::Builder;
  std::vector<Permutation> gens;
  switch (spec.builder) {
    case B::path:
      if (spec.n >= 2) gens.push_back(path_reflection(spec.n));
      break;
    case B::cycle:
      gens.push_back(cycle_rotation(spec.n, 1));
      gens.push_back(cycle_reflection(spec.n, 0));
      break;
    case B::complete:
      if (spec.n >= 2) {
        gens.push_back(cycle_rotation(spec.n, 1));
        std::vector<Vertex> t(spec.n);
        for (int i = 0; i < spec.n; ++i) t[i] = Vertex(i);
        std::swap(t[0], t[1]);
        gens.emplace_back(std::move(t));
      }
      break;
    case B::hypercube:
      for (int i = 0; i < spec.d; ++i) gens.push_back(hypercube_reflection(spec.d, i));
      for (int i = 0; i + 1 < spec.d; ++i) gens.push_back(hypercube_transposition(spec.d, i, i + 1));
      break;
    case B::torus:
      build_graph(spec);  // validates parameters
      gens.push_back(torus_translation(spec.n, spec.m, 1, 0));
      gens.push_back(torus_translation(spec.n, spec.m, 0, 1));
      gens.push_back(torus_point_reflection(spec.n, spec.m, 0, 0));
      gens.push_back(lift_left(cycle_reflection(spec.n, 0), spec.m));
      if (spec.n == spec.m) gens.push_back(torus_diagonal_reflection(spec.n));
      break;
    case B::bunkbed: {
      const std::size_t nb = vertex_count(*spec.base);
      for (const Permutation& p : builtin_generators(*spec.base)) gens.push_back(lift_left(p, 2));
      gens.push_back(layer_swap(nb));
      break;
    }
    case B::cylinder: {
      const std::size_t nb = vertex_count(*spec.base);
      for (const Permutation& p : builtin_generators(*spec.base)) gens.push_back(lift_left(p, spec.m));
      gens.push_back(lift_right(nb, cycle_rotation(spec.m, 1)));
      gens.push_back(lift_right(nb, cycle_reflection(spec.m, 0)));
      break;
    }
    case B::explicit_edges:
      break;
  }
  return gens;
}

}  // namespace percsym
