#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cobound/bitvector.hpp"
#include "cobound/rational.hpp"

namespace cobound {

using VertexId = std::uint32_t;

/// A face as a strictly increasing vertex list. The empty simplex has dim -1.
class Simplex {
 public:
  Simplex() = default;
  Simplex(std::initializer_list<VertexId> vertices) : Simplex(std::vector<VertexId>(vertices)) {}
  /// Sorts; duplicates are rejected.
  explicit Simplex(std::vector<VertexId> vertices);

  int dim() const noexcept { return static_cast<int>(vertices_.size()) - 1; }
  std::size_t size() const noexcept { return vertices_.size(); }
  bool empty() const noexcept { return vertices_.empty(); }
  VertexId operator[](std::size_t i) const noexcept { return vertices_[i]; }
  auto begin() const noexcept { return vertices_.begin(); }
  auto end() const noexcept { return vertices_.end(); }
  const std::vector<VertexId>& vertices() const noexcept { return vertices_; }

  bool contains(VertexId v) const noexcept;
  bool is_face_of(const Simplex& other) const noexcept;
  /// The codimension-one face obtained by dropping the i-th vertex.
  Simplex without_position(std::size_t i) const;
  Simplex with_vertex(VertexId v) const;
  Simplex join(const Simplex& other) const;

  friend auto operator<=>(const Simplex&, const Simplex&) = default;
  friend bool operator==(const Simplex&, const Simplex&) = default;

 private:
  std::vector<VertexId> vertices_;
};

struct FaceRef {
  int dim = -1;
  std::size_t index = 0;
  friend auto operator<=>(const FaceRef&, const FaceRef&) = default;
};

/// Finite pure simplicial complex with faces of every dimension indexed
/// lexicographically and the cofacet counts c(sigma) that drive the weights.
/// The empty simplex is stored at dimension -1 with c = f_n.
class PureComplex {
 public:
  /// Vertex ids may be sparse; they are compacted to 0..f_0-1 in increasing
  /// order. `labels`, when given, is indexed by the original ids.
  static PureComplex from_facets(const std::vector<std::vector<VertexId>>& facets,
                                 const std::vector<std::string>& labels = {});
  /// Labels become dense ids in order of first appearance.
  static PureComplex from_labeled_facets(const std::vector<std::vector<std::string>>& facets);

  int dimension() const noexcept { return n_; }
  std::size_t vertex_count() const noexcept { return face_count(0); }
  std::size_t face_count(int k) const noexcept;
  std::vector<std::size_t> f_vector() const;

  const std::vector<Simplex>& faces(int k) const;
  const Simplex& face(int k, std::size_t i) const { return faces(k)[i]; }
  const Simplex& face(FaceRef ref) const { return faces(ref.dim)[ref.index]; }
  std::optional<std::size_t> find(const Simplex& s) const;
  /// Throws FaceNotFound.
  std::size_t index_of(const Simplex& s) const;

  /// c(sigma): number of facets containing the face.
  std::uint64_t cofacet_count(int k, std::size_t i) const { return cofacets_[k + 1][i]; }
  std::span<const std::uint64_t> cofacet_counts(int k) const { return cofacets_[k + 1]; }
  /// C(n+1, k+1) * f_n, the common denominator of all k-face weights.
  std::uint64_t weight_denominator(int k) const { return denominators_[k + 1]; }
  Rational weight(int k, std::size_t i) const;
  /// Throws FaceNotFound.
  Rational weight(const Simplex& s) const;

  /// Indices (in dimension k-1) of the k+1 codimension-one faces of face (k,i),
  /// ordered by the position of the dropped vertex.
  std::span<const std::size_t> facets_of(int k, std::size_t i) const;
  /// Indices (in dimension k+1) of the faces that have (k,i) as a facet.
  std::span<const std::size_t> cofaces_of(int k, std::size_t i) const;

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(VertexId v) const { return labels_[v]; }
  std::size_t duplicate_facets_removed() const noexcept { return duplicates_removed_; }

  /// Same complex with vertex v renamed to perm[v]; labels follow their vertices.
  PureComplex relabeled(std::span<const VertexId> perm) const;

 private:
  PureComplex() = default;
  void index_faces(std::vector<Simplex> facets);

  int n_ = -1;
  std::vector<std::vector<Simplex>> faces_;           // [k+1]
  std::vector<std::vector<std::uint64_t>> cofacets_;  // [k+1]
  std::vector<std::uint64_t> denominators_;           // [k+1]
  std::vector<std::vector<std::size_t>> down_;        // [k+1], (k+1) entries per face
  std::vector<std::vector<std::size_t>> up_;          // [k+1], CSR values
  std::vector<std::vector<std::size_t>> up_offsets_;  // [k+1]
  std::vector<std::string> labels_;
  std::size_t duplicates_removed_ = 0;
};

/// Subcomplex of a fixed PureComplex, sharing its face indexing. The empty
/// simplex is always a member.
class Subcomplex {
 public:
  explicit Subcomplex(const PureComplex& parent);

  static Subcomplex full(const PureComplex& parent);
  /// Throws UnknownVertex.
  static Subcomplex induced(const PureComplex& parent, std::span<const VertexId> vertices);
  static Subcomplex induced(const PureComplex& parent, const BitVector& vertex_mask);
  /// Downward closure of the given faces.
  static Subcomplex closure(const PureComplex& parent, std::span<const FaceRef> faces);

  const PureComplex& parent() const noexcept { return *parent_; }
  bool contains(int k, std::size_t i) const { return masks_[k + 1].test(i); }
  bool contains(FaceRef f) const { return contains(f.dim, f.index); }
  const BitVector& mask(int k) const { return masks_[k + 1]; }
  std::size_t face_count(int k) const;
  std::vector<std::size_t> face_indices(int k) const { return masks_[k + 1].indices(); }
  /// Largest k with a k-face; -1 when only the empty simplex is present.
  int dimension() const;
  bool is_pure() const;
  bool is_subset_of(const Subcomplex& other) const;
  Subcomplex intersect(const Subcomplex& other) const;

  /// Standalone complex on the same vertex labels (dense ids renumbered).
  PureComplex to_complex() const;

  friend bool operator==(const Subcomplex& a, const Subcomplex& b) { return a.masks_ == b.masks_; }

 private:
  const PureComplex* parent_;
  std::vector<BitVector> masks_;  // [k+1]
};

/// Text format: one facet per line, whitespace-separated labels, '#' comments.
PureComplex parse_facets(std::istream& in);
PureComplex read_facet_file(const std::string& path);
void write_facets(std::ostream& out, const PureComplex& X);

/// The n-simplex on vertices 0..n.
PureComplex simplex_complex(int n);

}  // namespace cobound
