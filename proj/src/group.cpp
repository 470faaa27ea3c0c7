#include "cobound/group.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <unordered_set>

#include "cobound/error.hpp"

namespace cobound {

Permutation::Permutation(std::vector<VertexId> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (VertexId v : images_) {
    if (v >= images_.size() || seen[v]) throw Error(ErrorCode::InvalidArgument, "not a permutation");
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::size_t size) {
  std::vector<VertexId> images(size);
  std::iota(images.begin(), images.end(), VertexId{0});
  return Permutation(std::move(images));
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::InvalidArgument, "composing permutations of different degree");
  Permutation c;
  c.images_.resize(a.size());
  for (std::size_t v = 0; v < a.size(); ++v) c.images_[v] = a.images_[b.images_[v]];
  return c;
}

Permutation Permutation::inverse() const {
  Permutation inv;
  inv.images_.resize(size());
  for (std::size_t v = 0; v < size(); ++v) inv.images_[images_[v]] = static_cast<VertexId>(v);
  return inv;
}

Simplex Permutation::apply(const Simplex& s) const {
  std::vector<VertexId> out;
  out.reserve(s.size());
  for (VertexId v : s) out.push_back(images_.at(v));
  return Simplex(std::move(out));
}

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept {
  std::uint64_t h = 1469598103934665603ull;
  for (VertexId v : p.images()) {
    h ^= v;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

std::size_t apply_to_face(const PureComplex& X, const Permutation& g, int k, std::size_t i) {
  if (auto idx = X.find(g.apply(X.face(k, i)))) return *idx;
  throw Error(ErrorCode::NotAnAutomorphism, "permutation maps a face outside the complex");
}

std::vector<std::size_t> face_permutation(const PureComplex& X, const Permutation& g, int k) {
  if (g.size() != X.vertex_count()) throw Error(ErrorCode::NotAnAutomorphism, "permutation degree differs from f_0");
  std::vector<std::size_t> out(X.face_count(k));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = apply_to_face(X, g, k, i);
  return out;
}

bool is_automorphism(const PureComplex& X, const Permutation& g) {
  if (g.size() != X.vertex_count()) return false;
  const int n = X.dimension();
  for (const auto& f : X.faces(n))
    if (!X.find(g.apply(f))) return false;
  return true;
}

PermGroup::PermGroup(std::size_t degree, std::vector<Permutation> generators)
    : degree_(degree), generators_(std::move(generators)) {
  for (const auto& g : generators_)
    if (g.size() != degree_) throw Error(ErrorCode::InvalidArgument, "generator degree mismatch");
}

std::vector<Permutation> PermGroup::elements(std::size_t cap) const {
  std::vector<Permutation> out{Permutation::identity(degree_)};
  std::unordered_set<Permutation, PermutationHash> seen(out.begin(), out.end());
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (const auto& g : generators_) {
      Permutation h = g * out[head];
      if (seen.insert(h).second) {
        if (out.size() >= cap)
          throw Error(ErrorCode::BudgetExceeded, "group has more than " + std::to_string(cap) + " elements");
        out.push_back(std::move(h));
      }
    }
  }
  return out;
}

std::vector<std::size_t> PermGroup::face_orbits(const PureComplex& X, int k) const {
  const std::size_t f = X.face_count(k);
  std::vector<std::size_t> parent(f);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& g : generators_) {
    auto perm = face_permutation(X, g, k);
    for (std::size_t i = 0; i < f; ++i) {
      std::size_t a = find(i), b = find(perm[i]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::vector<std::size_t> orbit(f);
  for (std::size_t i = 0; i < f; ++i) orbit[i] = find(i);
  return orbit;
}

bool PermGroup::is_transitive_on_faces(const PureComplex& X, int k) const {
  auto orbit = face_orbits(X, k);
  return std::all_of(orbit.begin(), orbit.end(), [](std::size_t o) { return o == 0; });
}

}  // namespace cobound

namespace cobound {

std::vector<Permutation> symmetric_generators(std::size_t degree) {
  std::vector<Permutation> gens;
  if (degree < 2) return gens;
  auto swap = Permutation::identity(degree).images();
  std::swap(swap[0], swap[1]);
  gens.emplace_back(std::move(swap));
  if (degree > 2) {
    std::vector<VertexId> cycle(degree);
    for (std::size_t i = 0; i < degree; ++i) cycle[i] = static_cast<VertexId>((i + 1) % degree);
    gens.emplace_back(std::move(cycle));
  }
  return gens;
}

}  // namespace cobound
