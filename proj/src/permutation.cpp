#include "percsym/permutation.hpp"

#include "percsym/error.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

namespace percsym {

Permutation::Permutation(std::vector<Vertex> image) : image_(std::move(image)) {
  std::vector<char> hit(image_.size(), 0);
  for (Vertex v : image_) {
    if (v >= image_.size() || hit[v]) throw InvalidArgument("image array is not a permutation");
    hit[v] = 1;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<Vertex> image(n);
  for (std::size_t i = 0; i < n; ++i) image[i] = static_cast<Vertex>(i);
  Permutation p;
  p.image_ = std::move(image);
  return p;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < image_.size(); ++i)
    if (image_[i] != i) return false;
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<Vertex> inv(image_.size());
  for (std::size_t i = 0; i < image_.size(); ++i) inv[image_[i]] = static_cast<Vertex>(i);
  Permutation p;
  p.image_ = std::move(inv);
  return p;
}

VertexSet Permutation::apply(const VertexSet& s) const {
  std::vector<Vertex> out;
  out.reserve(s.size());
  for (Vertex v : s) out.push_back(image_.at(v));
  return VertexSet(std::move(out));
}

std::vector<Vertex> Permutation::apply(std::span<const Vertex> xs) const {
  std::vector<Vertex> out;
  out.reserve(xs.size());
  for (Vertex v : xs) out.push_back(image_.at(v));
  return out;
}

Permutation compose(const Permutation& g, const Permutation& h) {
  if (g.size() != h.size()) throw InvalidArgument("composing permutations of different degree");
  std::vector<Vertex> out(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) out[i] = g(h(static_cast<Vertex>(i)));
  return Permutation(std::move(out));
}

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept {
  // FNV-1a over the image array
  std::uint64_t h = 1469598103934665603ull;
  for (Vertex v : p.image()) {
    h ^= v;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

PermGroup generate_group(std::size_t degree, std::span<const Permutation> gens, std::size_t cap) {
  if (cap < 1) throw InvalidArgument("group cap must be >= 1");
  for (const Permutation& g : gens) {
    if (g.size() != degree) throw InvalidArgument("generator degree does not match");
  }
  PermGroup grp;
  grp.degree_ = degree;
  grp.generators_.assign(gens.begin(), gens.end());

  std::unordered_set<Permutation, PermutationHash> seen;
  Permutation id = Permutation::identity(degree);
  seen.insert(id);
  grp.elements_.push_back(id);
  for (std::size_t head = 0; head < grp.elements_.size(); ++head) {
    for (const Permutation& g : gens) {
      Permutation next = compose(g, grp.elements_[head]);
      if (seen.insert(next).second) {
        if (grp.elements_.size() >= cap) throw ClosureCapExceeded(cap);
        grp.elements_.push_back(std::move(next));
      }
    }
  }
  return grp;
}

VertexSet orbit(const PermGroup& grp, Vertex x) {
  if (x >= grp.degree()) throw InvalidArgument("vertex out of range");
  std::vector<char> hit(grp.degree(), 0);
  std::vector<Vertex> out;
  for (const Permutation& g : grp.elements()) {
    Vertex y = g(x);
    if (!hit[y]) {
      hit[y] = 1;
      out.push_back(y);
    }
  }
  return VertexSet(std::move(out));
}

std::vector<Permutation> stabilizer(std::span<const Permutation> elements, Vertex v) {
  std::vector<Permutation> out;
  for (const Permutation& g : elements)
    if (g(v) == v) out.push_back(g);
  return out;
}

VertexSet stabilizer_orbit(std::span<const Permutation> elements, Vertex v, Vertex w) {
  if (!elements.empty() && (v >= elements.front().size() || w >= elements.front().size())) {
    throw InvalidArgument("vertex out of range");
  }
  std::vector<Vertex> out;
  for (const Permutation& g : elements) {
    if (g(v) == v) out.push_back(g(w));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return VertexSet(std::move(out));
}

bool is_automorphism(const Graph& g, const Permutation& p) {
  if (p.size() != g.n_vertices()) throw InvalidArgument("permutation length does not match graph");
  // p is a bijection, so the edge image has |E| distinct pairs; equality of
  // edge sets reduces to every image edge being an edge.
  for (const Edge& e : g.edges()) {
    if (!g.has_edge(p(e.u), p(e.v))) return false;
  }
  return true;
}

}  // namespace percsym
