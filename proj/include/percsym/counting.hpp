#pragma once

#include "percsym/graph.hpp"
#include "percsym/permutation.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

namespace percsym {

// (A, A'), finite subsets of X and X'. Both kept sorted and duplicate-free.
struct FamilyPair {
  std::vector<Vertex> a_plus;
  std::vector<Vertex> a_minus;
  friend auto operator<=>(const FamilyPair&, const FamilyPair&) = default;
};

FamilyPair make_family_pair(std::vector<Vertex> a_plus, std::vector<Vertex> a_minus);

// g applied componentwise, result re-sorted.
FamilyPair apply(const Permutation& g, const FamilyPair& pair);

// Gamma(A-bar), deduplicated and sorted.
std::vector<FamilyPair> pair_orbit(std::span<const Permutation> elements, const FamilyPair& pair);

struct CountPair {
  std::uint64_t lhs = 0;
  std::uint64_t rhs = 0;
  bool equal() const noexcept { return lhs == rhs; }
};

// lhs = |{(g(x), g(y))}|, rhs = |Gamma(x)| * |Gamma_x(y)|.
CountPair verify_orbit_product(std::span<const Permutation> elements, Vertex x, Vertex y);

struct DoubleCounting {
  std::uint64_t orbit_size = 0;    // |Gamma(A-bar)|
  std::uint64_t anchored_plus = 0;   // |[A-bar]_o|
  std::uint64_t anchored_minus = 0;  // |[A-bar]_o'|
  CountPair counts;                // |[A]_o| |A'| vs |[A]_o'| |A|
};

// Orbit counts for the double-counting identity
//   |[A]_o| * |A'| = |[A]_o'| * |A|,
// where [A]_o are the orbit members whose first set contains o and [A]_o'
// those whose second set contains o'.
DoubleCounting verify_double_counting(std::span<const Permutation> elements, const FamilyPair& pair,
                                      Vertex o, Vertex o_prime);

struct StabilizerMismatch {
  Vertex x;
  Vertex y;
  std::size_t xy;  // |Gamma_x(y)|
  std::size_t yx;  // |Gamma_y(x)|
};

// Checks |Gamma_x(x')| = |Gamma_x'(x)| for all x in xs, x' in ys; returns the
// first violation.
std::optional<StabilizerMismatch> find_stabilizer_mismatch(std::span<const Permutation> elements,
                                                           std::span<const Vertex> xs,
                                                           std::span<const Vertex> ys);

struct SwapCheck {
  std::uint64_t swappable_pairs = 0;  // pairs x != y exchanged by some element
  std::optional<StabilizerMismatch> mismatch;
};

// For every pair exchanged by some element, asserts |Gamma_y(x)| = |Gamma_x(y)|.
SwapCheck check_swapped_stabilizers(std::span<const Permutation> elements, std::size_t degree);

// True iff the group acts transitively on `xs` (setwise invariant, one orbit).
bool acts_transitively(std::span<const Permutation> elements, std::span<const Vertex> xs);

// Uniformly random subsets of xs and ys with sizes drawn from [0, max_size].
FamilyPair random_family_pair(std::span<const Vertex> xs, std::span<const Vertex> ys, std::size_t max_size,
                              std::mt19937_64& rng);

// Orbit of a finite vertex set, restricted to sets containing o:
// [A] = Gamma(A) n {B : o in B}.
std::vector<VertexSet> anchored_set_orbit(std::span<const Permutation> elements, const VertexSet& a, Vertex o);

// A in [B] <=> B in [A] for sets containing o (non-disjoint orbits coincide).
bool orbit_membership_symmetric(std::span<const Permutation> elements, const VertexSet& a,
                                const VertexSet& b, Vertex o);

}  // namespace percsym
