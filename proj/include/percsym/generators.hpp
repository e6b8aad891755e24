#pragma once

#include "percsym/graph.hpp"
#include "percsym/permutation.hpp"

#include <functional>
#include <vector>

namespace percsym {

// Named constructions of standard automorphisms. None of these verify the
// automorphism property; check_gamma_conditions does that.

// Permutation induced by a map on coordinate labels. Throws InvalidArgument
// if an image label does not exist or two vertices collide.
Permutation from_label_map(const Graph& g, const std::function<Label(const Label&)>& map);

// label -> (matrix * label + offset) reduced modulo each axis' modulus.
Permutation affine_map(const Graph& g, const std::vector<std::vector<int>>& matrix,
                       const std::vector<int>& offset);

// On a product with factor sizes (na, nb): (i, j) -> (p(i), j) and (i, j) -> (i, p(j)).
Permutation lift_left(const Permutation& p, std::size_t nb);
Permutation lift_right(std::size_t na, const Permutation& p);

// x -> x + shift (mod n)
Permutation cycle_rotation(std::size_t n, long shift);
// x -> center - x (mod n), the reflection through center / 2
Permutation cycle_reflection(std::size_t n, long center);
// x -> n - 1 - x
Permutation path_reflection(std::size_t n);

// Swaps the two layers of base x L2.
Permutation layer_swap(std::size_t base_vertices);

// tau_i on L2^d: flips coordinate `axis` (0-based).
Permutation hypercube_reflection(int d, int axis);
// Flips coordinates first, ..., last - 1.
Permutation hypercube_block_reflection(int d, int first, int last);
// Exchanges coordinates i and j.
Permutation hypercube_transposition(int d, int i, int j);

// On torus(n, m): (x, y) -> (x + dx, y + dy).
Permutation torus_translation(int n, int m, int dx, int dy);
// (x, y) -> (cx - x, cy - y)
Permutation torus_point_reflection(int n, int m, int cx, int cy);
// (x, y) -> (y, x); needs n == m.
Permutation torus_diagonal_reflection(int n);

// Generators of the builder's natural symmetry group: factor automorphisms
// lifted to products, plus the layer swap (bunkbed), coordinate
// permutations (hypercube) and the diagonal reflection (square torus).
// Explicit graphs get no generators.
std::vector<Permutation> builtin_generators(const GraphSpec& spec);

}  // namespace percsym
