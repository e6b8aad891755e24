#include "percsym/symmetry.hpp"

#include "percsym/error.hpp"

#include <algorithm>
#include <sstream>

namespace percsym {

void VertexSetPair::validate(std::size_t n) const {
  v_plus.check_range(n);
  v_minus.check_range(n);
  if (origin >= n) throw InvalidArgument("origin out of range");
  if (!v_plus.contains(origin)) throw InvalidArgument("origin must lie in V+");
  for (Vertex v : v_minus) {
    if (v_plus.contains(v)) throw InvalidArgument("V+ and V- must be disjoint");
  }
}

VertexSet VertexSetPair::united() const {
  std::vector<Vertex> all(v_plus.begin(), v_plus.end());
  all.insert(all.end(), v_minus.begin(), v_minus.end());
  return VertexSet(std::move(all));
}

namespace {

enum class SetAction { preserves, swaps, neither };

SetAction classify(const Permutation& g, const VertexSetPair& pair) {
  VertexSet img_plus = g.apply(pair.v_plus);
  VertexSet img_minus = g.apply(pair.v_minus);
  if (img_plus == pair.v_plus && img_minus == pair.v_minus) return SetAction::preserves;
  if (img_plus == pair.v_minus && img_minus == pair.v_plus) return SetAction::swaps;
  return SetAction::neither;
}

}  // namespace

ConditionReport check_gamma_conditions(const Graph& g, const PermGroup& grp, const VertexSetPair& pair) {
  pair.validate(g.n_vertices());
  if (grp.degree() != g.n_vertices()) throw InvalidArgument("group degree does not match graph");
  const auto& elements = grp.elements();
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (!is_automorphism(g, elements[i])) throw NonAutomorphismElement(i);
  }

  ConditionReport r;
  r.group_order = grp.order();
  r.automorphisms_verified = true;

  // (G1)
  r.gamma1 = true;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    switch (classify(elements[i], pair)) {
      case SetAction::preserves: ++r.preservers; break;
      case SetAction::swaps: ++r.swappers; break;
      case SetAction::neither:
        if (r.gamma1) r.diagnostics.push_back("(G1) fails: element " + std::to_string(i) +
                                              " maps V+ or V- onto neither set");
        r.gamma1 = false;
        break;
    }
  }

  // (G2): setwise invariance of the union plus one full orbit
  const VertexSet both = pair.united();
  bool invariant = true;
  for (const Permutation& e : elements) {
    if (e.apply(both) != both) {
      invariant = false;
      break;
    }
  }
  std::vector<char> reached(g.n_vertices(), 0);
  for (const Permutation& e : elements) reached[e(pair.origin)] = 1;
  bool transitive = std::all_of(both.begin(), both.end(), [&](Vertex v) { return reached[v] != 0; });
  r.gamma2 = invariant && transitive;
  if (!invariant) r.diagnostics.push_back("(G2) fails: some element moves V+ u V- off itself");
  if (!transitive) {
    for (Vertex v : both) {
      if (!reached[v]) {
        r.diagnostics.push_back("(G2) fails: vertex " + std::to_string(v) +
                                " is not in the orbit of the origin");
        break;
      }
    }
  }

  // (G3) by exhaustion; stabilizers computed once per vertex
  std::vector<std::vector<Permutation>> stab(g.n_vertices());
  for (Vertex v : both) stab[v] = stabilizer(elements, v);
  r.gamma3 = true;
  for (Vertex v : pair.v_plus) {
    for (Vertex w : pair.v_minus) {
      std::size_t vw = stabilizer_orbit(stab[v], v, w).size();
      std::size_t wv = stabilizer_orbit(stab[w], w, v).size();
      if (vw != wv) {
        if (r.gamma3) {
          std::ostringstream os;
          os << "(G3) fails: |Gamma_" << v << "(" << w << ")| = " << vw << " but |Gamma_" << w << "("
             << v << ")| = " << wv;
          r.diagnostics.push_back(os.str());
        }
        r.gamma3 = false;
      }
    }
  }

  // swap-transitivity
  r.swap_transitive = true;
  for (Vertex v : pair.v_plus) {
    for (Vertex w : pair.v_minus) {
      bool found = std::any_of(elements.begin(), elements.end(),
                               [&](const Permutation& e) { return e(v) == w && e(w) == v; });
      if (!found) {
        r.swap_transitive = false;
        break;
      }
    }
    if (!r.swap_transitive) break;
  }
  return r;
}

GroupSplit split_group(const PermGroup& grp, const VertexSetPair& pair) {
  GroupSplit split;
  bool have_tau = false;
  for (const Permutation& e : grp.elements()) {
    switch (classify(e, pair)) {
      case SetAction::preserves:
        split.gamma_plus.push_back(e);
        break;
      case SetAction::swaps:
        if (!have_tau) {
          split.tau = e;
          have_tau = true;
        }
        split.gamma_minus.push_back(e);
        break;
      case SetAction::neither:
        throw InvalidArgument("(G1) violated: element neither preserves nor swaps V+, V-");
    }
  }
  if (pair.v_minus.empty() || split.gamma_minus.empty()) throw NoSwapper();
  return split;
}

PermGroup restrict_to_pair(const PermGroup& grp, const VertexSetPair& pair) {
  return grp.filter([&](const Permutation& e) { return classify(e, pair) != SetAction::neither; });
}

}  // namespace percsym
