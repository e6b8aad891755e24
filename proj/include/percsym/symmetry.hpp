#pragma once

#include "percsym/graph.hpp"
#include "percsym/permutation.hpp"

#include <optional>
#include <string>
#include <vector>

namespace percsym {

// Disjoint (V+, V-) with the origin o in V+.
struct VertexSetPair {
  VertexSet v_plus;
  VertexSet v_minus;
  Vertex origin = 0;

  // Throws InvalidArgument on overlap, an origin outside V+, or indices >= n.
  void validate(std::size_t n) const;
  VertexSet united() const;
};

struct ConditionReport {
  std::size_t group_order = 0;
  bool automorphisms_verified = false;
  bool gamma1 = false;  // every element maps V+, V- onto V+ or V-
  bool gamma2 = false;  // transitive on V+ u V-
  bool gamma3 = false;  // |Gamma_v(w)| = |Gamma_w(v)| for all v in V+, w in V-
  bool swap_transitive = false;  // every cross pair exchanged by some element
  bool finite = true;            // V+- finite; always true here
  std::size_t preservers = 0;    // |Gamma+|
  std::size_t swappers = 0;      // |Gamma-|
  std::vector<std::string> diagnostics;

  bool passed() const noexcept { return automorphisms_verified && gamma1 && gamma2 && gamma3; }
};

// Verifies every element is an automorphism (throws NonAutomorphismElement
// otherwise), then checks (G1)-(G3) exhaustively.
ConditionReport check_gamma_conditions(const Graph& g, const PermGroup& grp, const VertexSetPair& pair);

struct GroupSplit {
  std::vector<Permutation> gamma_plus;   // fix V+ and V- setwise
  std::vector<Permutation> gamma_minus;  // exchange V+ and V-
  Permutation tau;                       // first swapper in element order
};

// Throws NoSwapper when nothing exchanges the sets (including V- empty) and
// InvalidArgument if some element neither preserves nor swaps them.
GroupSplit split_group(const PermGroup& grp, const VertexSetPair& pair);

// {g in grp : g(V+), g(V-) in {V+, V-}}, the largest usable subgroup.
PermGroup restrict_to_pair(const PermGroup& grp, const VertexSetPair& pair);

}  // namespace percsym
