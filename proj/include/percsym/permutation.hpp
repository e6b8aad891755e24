#pragma once

#include "percsym/graph.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace percsym {

// A bijection of {0, ..., n-1}; index i maps to image[i].
class Permutation {
 public:
  Permutation() = default;
  // Throws InvalidArgument unless `image` is a permutation of 0..n-1.
  explicit Permutation(std::vector<Vertex> image);
  static Permutation identity(std::size_t n);

  Vertex operator()(Vertex x) const { return image_[x]; }
  std::size_t size() const noexcept { return image_.size(); }
  std::span<const Vertex> image() const noexcept { return image_; }
  bool is_identity() const;

  Permutation inverse() const;
  VertexSet apply(const VertexSet& s) const;
  std::vector<Vertex> apply(std::span<const Vertex> xs) const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Vertex> image_;
};

// Composition convention: compose(g, h)(x) = g(h(x)).
Permutation compose(const Permutation& g, const Permutation& h);
inline Permutation operator*(const Permutation& g, const Permutation& h) { return compose(g, h); }

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept;
};

// A finite permutation group stored as generators plus the full element list.
class PermGroup {
 public:
  std::size_t degree() const noexcept { return degree_; }
  std::size_t order() const noexcept { return elements_.size(); }
  const std::vector<Permutation>& generators() const noexcept { return generators_; }
  const std::vector<Permutation>& elements() const noexcept { return elements_; }

  // Elements satisfying `keep`, in element order. The caller guarantees that
  // the kept elements form a subgroup (e.g. a setwise stabilizer); the kept
  // elements double as the generating set.
  template <class Pred>
  PermGroup filter(Pred keep) const {
    PermGroup out;
    out.degree_ = degree_;
    for (const Permutation& e : elements_)
      if (keep(e)) out.elements_.push_back(e);
    out.generators_ = out.elements_;
    return out;
  }

 private:
  friend PermGroup generate_group(std::size_t degree, std::span<const Permutation> gens, std::size_t cap);

  std::size_t degree_ = 0;
  std::vector<Permutation> generators_;
  std::vector<Permutation> elements_;
};

inline constexpr std::size_t default_group_cap = 1'000'000;

// Closure of `gens` on `degree` points. Elements are listed breadth-first
// from the identity, multiplying by generators in input order (new = gen o
// element), duplicates pruned by image equality. Throws ClosureCapExceeded if
// the group would exceed `cap` elements.
PermGroup generate_group(std::size_t degree, std::span<const Permutation> gens,
                         std::size_t cap = default_group_cap);

// Gamma(x)
VertexSet orbit(const PermGroup& grp, Vertex x);

// Elements with g(v) = v.
std::vector<Permutation> stabilizer(std::span<const Permutation> elements, Vertex v);

// Gamma_v(w) = {g(w) : g in grp, g(v) = v}
VertexSet stabilizer_orbit(std::span<const Permutation> elements, Vertex v, Vertex w);
inline VertexSet stabilizer_orbit(const PermGroup& grp, Vertex v, Vertex w) {
  return stabilizer_orbit(std::span<const Permutation>(grp.elements()), v, w);
}

// True iff vw in E <=> p(v)p(w) in E. Throws InvalidArgument on a length mismatch.
bool is_automorphism(const Graph& g, const Permutation& p);

}  // namespace percsym
