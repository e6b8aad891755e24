#include "percsym/counting.hpp"

#include "percsym/error.hpp"

#include <algorithm>
#include <set>

namespace percsym {

namespace {

std::vector<Vertex> sorted_unique(std::vector<Vertex> v) {
  std::sort(v.begin(), v.end());
  if (std::adjacent_find(v.begin(), v.end()) != v.end()) throw InvalidArgument("family set has duplicates");
  return v;
}

bool contains(const std::vector<Vertex>& sorted, Vertex v) {
  return std::binary_search(sorted.begin(), sorted.end(), v);
}

}  // namespace

FamilyPair make_family_pair(std::vector<Vertex> a_plus, std::vector<Vertex> a_minus) {
  return FamilyPair{sorted_unique(std::move(a_plus)), sorted_unique(std::move(a_minus))};
}

FamilyPair apply(const Permutation& g, const FamilyPair& pair) {
  auto a = g.apply(pair.a_plus);
  auto b = g.apply(pair.a_minus);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return FamilyPair{std::move(a), std::move(b)};
}

std::vector<FamilyPair> pair_orbit(std::span<const Permutation> elements, const FamilyPair& pair) {
  std::set<FamilyPair> seen;
  for (const Permutation& g : elements) seen.insert(apply(g, pair));
  return {seen.begin(), seen.end()};
}

CountPair verify_orbit_product(std::span<const Permutation> elements, Vertex x, Vertex y) {
  std::set<std::pair<Vertex, Vertex>> images;
  std::set<Vertex> orbit_x;
  std::set<Vertex> stab_orbit;
  for (const Permutation& g : elements) {
    images.emplace(g(x), g(y));
    orbit_x.insert(g(x));
    if (g(x) == x) stab_orbit.insert(g(y));
  }
  return CountPair{images.size(), std::uint64_t(orbit_x.size()) * stab_orbit.size()};
}

DoubleCounting verify_double_counting(std::span<const Permutation> elements, const FamilyPair& pair,
                                      Vertex o, Vertex o_prime) {
  DoubleCounting out;
  const auto orbit = pair_orbit(elements, pair);
  out.orbit_size = orbit.size();
  for (const FamilyPair& b : orbit) {
    if (contains(b.a_plus, o)) ++out.anchored_plus;
    if (contains(b.a_minus, o_prime)) ++out.anchored_minus;
  }
  out.counts.lhs = out.anchored_plus * pair.a_minus.size();
  out.counts.rhs = out.anchored_minus * pair.a_plus.size();
  return out;
}

std::optional<StabilizerMismatch> find_stabilizer_mismatch(std::span<const Permutation> elements,
                                                           std::span<const Vertex> xs,
                                                           std::span<const Vertex> ys) {
  for (Vertex x : xs) {
    auto stab_x = stabilizer(elements, x);
    for (Vertex y : ys) {
      std::size_t xy = stabilizer_orbit(stab_x, x, y).size();
      std::size_t yx = stabilizer_orbit(elements, y, x).size();
      if (xy != yx) return StabilizerMismatch{x, y, xy, yx};
    }
  }
  return std::nullopt;
}

SwapCheck check_swapped_stabilizers(std::span<const Permutation> elements, std::size_t degree) {
  SwapCheck out;
  for (Vertex x = 0; x < degree; ++x) {
    for (Vertex y = x + 1; y < degree; ++y) {
      bool swapped = std::any_of(elements.begin(), elements.end(),
                                 [&](const Permutation& g) { return g(x) == y && g(y) == x; });
      if (!swapped) continue;
      ++out.swappable_pairs;
      std::size_t yx = stabilizer_orbit(elements, y, x).size();
      std::size_t xy = stabilizer_orbit(elements, x, y).size();
      if (xy != yx && !out.mismatch) out.mismatch = StabilizerMismatch{x, y, xy, yx};
    }
  }
  return out;
}

bool acts_transitively(std::span<const Permutation> elements, std::span<const Vertex> xs) {
  if (xs.empty()) return true;
  std::vector<Vertex> sorted(xs.begin(), xs.end());
  std::sort(sorted.begin(), sorted.end());
  std::set<Vertex> reached;
  for (const Permutation& g : elements) {
    auto img = g.apply(sorted);
    std::sort(img.begin(), img.end());
    if (img != sorted) return false;
    reached.insert(g(sorted.front()));
  }
  return reached.size() == sorted.size();
}

FamilyPair random_family_pair(std::span<const Vertex> xs, std::span<const Vertex> ys, std::size_t max_size,
                              std::mt19937_64& rng) {
  auto draw = [&](std::span<const Vertex> pool) {
    std::size_t cap = std::min(max_size, pool.size());
    std::uniform_int_distribution<std::size_t> size_dist(0, cap);
    std::vector<Vertex> v(pool.begin(), pool.end());
    std::shuffle(v.begin(), v.end(), rng);
    v.resize(size_dist(rng));
    std::sort(v.begin(), v.end());
    return v;
  };
  FamilyPair out;
  out.a_plus = draw(xs);
  out.a_minus = draw(ys);
  return out;
}

std::vector<VertexSet> anchored_set_orbit(std::span<const Permutation> elements, const VertexSet& a, Vertex o) {
  std::set<std::vector<Vertex>> seen;
  for (const Permutation& g : elements) {
    VertexSet img = g.apply(a);
    if (img.contains(o)) seen.insert(img.values());
  }
  std::vector<VertexSet> out;
  for (const auto& s : seen) out.emplace_back(s);
  return out;
}

bool orbit_membership_symmetric(std::span<const Permutation> elements, const VertexSet& a,
                                const VertexSet& b, Vertex o) {
  auto in = [](const std::vector<VertexSet>& orbit, const VertexSet& s) {
    return std::find(orbit.begin(), orbit.end(), s) != orbit.end();
  };
  bool a_in_b = in(anchored_set_orbit(elements, b, o), a);
  bool b_in_a = in(anchored_set_orbit(elements, a, o), b);
  return a_in_b == b_in_a;
}

}  // namespace percsym
