#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cobound/complex.hpp"

namespace cobound {

/// Permutation of the vertex ids 0..size-1, stored as its image list.
class Permutation {
 public:
  Permutation() = default;
  /// Throws InvalidArgument unless `images` is a bijection of 0..size-1.
  explicit Permutation(std::vector<VertexId> images);
  static Permutation identity(std::size_t size);

  std::size_t size() const noexcept { return images_.size(); }
  VertexId operator()(VertexId v) const { return images_[v]; }
  const std::vector<VertexId>& images() const noexcept { return images_; }
  bool is_identity() const noexcept;

  /// Composition: (a * b)(v) = a(b(v)).
  friend Permutation operator*(const Permutation& a, const Permutation& b);
  Permutation inverse() const;
  Simplex apply(const Simplex& s) const;

  friend auto operator<=>(const Permutation&, const Permutation&) = default;
  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<VertexId> images_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept;
};

/// Index of g(face (k,i)); throws NotAnAutomorphism if the image is not a face.
std::size_t apply_to_face(const PureComplex& X, const Permutation& g, int k, std::size_t i);
/// The permutation g induces on X(k); throws NotAnAutomorphism.
std::vector<std::size_t> face_permutation(const PureComplex& X, const Permutation& g, int k);
bool is_automorphism(const PureComplex& X, const Permutation& g);

/// A transposition and a full cycle, generating S_degree.
std::vector<Permutation> symmetric_generators(std::size_t degree);

/// Permutation group given by generators acting on the vertices of a complex.
class PermGroup {
 public:
  PermGroup(std::size_t degree, std::vector<Permutation> generators);
  static PermGroup trivial(std::size_t degree) { return PermGroup(degree, {}); }

  std::size_t degree() const noexcept { return degree_; }
  const std::vector<Permutation>& generators() const noexcept { return generators_; }

  /// All elements by breadth-first closure, identity first. Throws
  /// BudgetExceeded once more than `cap` elements are found.
  std::vector<Permutation> elements(std::size_t cap = 1'000'000) const;
  std::uint64_t order(std::size_t cap = 1'000'000) const { return elements(cap).size(); }

  /// Orbit id of every k-face (ids are the least face index in each orbit).
  std::vector<std::size_t> face_orbits(const PureComplex& X, int k) const;
  bool is_transitive_on_faces(const PureComplex& X, int k) const;

 private:
  std::size_t degree_;
  std::vector<Permutation> generators_;
};

}  // namespace cobound
