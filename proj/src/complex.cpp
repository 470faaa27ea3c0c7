#include "cobound/complex.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "cobound/error.hpp"

namespace cobound {

Simplex::Simplex(std::vector<VertexId> vertices) : vertices_(std::move(vertices)) {
  std::sort(vertices_.begin(), vertices_.end());
  if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end())
    throw Error(ErrorCode::InvalidArgument, "simplex with a repeated vertex");
}

bool Simplex::contains(VertexId v) const noexcept {
  return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

bool Simplex::is_face_of(const Simplex& other) const noexcept {
  return std::includes(other.vertices_.begin(), other.vertices_.end(), vertices_.begin(), vertices_.end());
}

Simplex Simplex::without_position(std::size_t i) const {
  Simplex s;
  s.vertices_.reserve(vertices_.size() - 1);
  for (std::size_t j = 0; j < vertices_.size(); ++j)
    if (j != i) s.vertices_.push_back(vertices_[j]);
  return s;
}

Simplex Simplex::with_vertex(VertexId v) const {
  if (contains(v)) throw Error(ErrorCode::InvalidArgument, "vertex already present");
  Simplex s = *this;
  s.vertices_.insert(std::upper_bound(s.vertices_.begin(), s.vertices_.end(), v), v);
  return s;
}

Simplex Simplex::join(const Simplex& other) const {
  Simplex s;
  std::set_union(vertices_.begin(), vertices_.end(), other.vertices_.begin(), other.vertices_.end(),
                 std::back_inserter(s.vertices_));
  if (s.size() != size() + other.size())
    throw Error(ErrorCode::InvalidArgument, "join of overlapping simplices");
  return s;
}

PureComplex PureComplex::from_facets(const std::vector<std::vector<VertexId>>& facets,
                                     const std::vector<std::string>& labels) {
  if (facets.empty()) throw Error(ErrorCode::EmptyInput, "no facets given");
  const std::size_t width = facets.front().size();
  if (width == 0) throw Error(ErrorCode::EmptyInput, "facets must be nonempty");
  std::set<VertexId> used;
  for (const auto& f : facets) {
    if (f.size() != width)
      throw Error(ErrorCode::NotPure, "facets of cardinality " + std::to_string(width) + " and " +
                                          std::to_string(f.size()));
    used.insert(f.begin(), f.end());
  }
  std::map<VertexId, VertexId> dense;
  PureComplex X;
  for (VertexId v : used) {
    dense.emplace(v, static_cast<VertexId>(dense.size()));
    if (!labels.empty()) {
      if (v >= labels.size()) throw Error(ErrorCode::UnknownVertex, "no label for vertex " + std::to_string(v));
      X.labels_.push_back(labels[v]);
    } else {
      X.labels_.push_back(std::to_string(v));
    }
  }
  std::vector<Simplex> simplices;
  simplices.reserve(facets.size());
  for (const auto& f : facets) {
    std::vector<VertexId> mapped;
    mapped.reserve(f.size());
    for (VertexId v : f) mapped.push_back(dense.at(v));
    simplices.emplace_back(std::move(mapped));
  }
  std::sort(simplices.begin(), simplices.end());
  auto last = std::unique(simplices.begin(), simplices.end());
  X.duplicates_removed_ = static_cast<std::size_t>(simplices.end() - last);
  simplices.erase(last, simplices.end());
  X.index_faces(std::move(simplices));
  return X;
}

PureComplex PureComplex::from_labeled_facets(const std::vector<std::vector<std::string>>& facets) {
  std::unordered_map<std::string, VertexId> ids;
  std::vector<std::string> labels;
  std::vector<std::vector<VertexId>> numeric;
  for (const auto& f : facets) {
    std::vector<VertexId> row;
    for (const auto& label : f) {
      auto [it, inserted] = ids.emplace(label, static_cast<VertexId>(labels.size()));
      if (inserted) labels.push_back(label);
      row.push_back(it->second);
    }
    numeric.push_back(std::move(row));
  }
  return from_facets(numeric, labels);
}

void PureComplex::index_faces(std::vector<Simplex> facets) {
  n_ = facets.front().dim();
  const int levels = n_ + 2;
  std::vector<std::set<Simplex>> by_dim(levels);
  const std::size_t width = static_cast<std::size_t>(n_ + 1);
  if (width > 24) throw Error(ErrorCode::BudgetExceeded, "facet dimension too large to enumerate subfaces");
  for (const auto& f : facets) {
    for (std::uint32_t mask = 0; mask < (1u << width); ++mask) {
      std::vector<VertexId> sub;
      for (std::size_t j = 0; j < width; ++j)
        if (mask & (1u << j)) sub.push_back(f[j]);
      by_dim[sub.size()].insert(Simplex(std::move(sub)));
    }
  }
  faces_.assign(levels, {});
  for (int k = -1; k <= n_; ++k) faces_[k + 1].assign(by_dim[k + 1].begin(), by_dim[k + 1].end());

  cofacets_.assign(levels, {});
  for (int k = -1; k <= n_; ++k) cofacets_[k + 1].assign(face_count(k), 0);
  for (const auto& f : faces_[n_ + 1]) {
    for (std::uint32_t mask = 0; mask < (1u << width); ++mask) {
      std::vector<VertexId> sub;
      for (std::size_t j = 0; j < width; ++j)
        if (mask & (1u << j)) sub.push_back(f[j]);
      Simplex s(std::move(sub));
      ++cofacets_[s.size()][index_of(s)];
    }
  }

  denominators_.assign(levels, 0);
  for (int k = -1; k <= n_; ++k) denominators_[k + 1] = binomial_u64(n_ + 1, k + 1) * face_count(n_);

  down_.assign(levels, {});
  up_.assign(levels, {});
  up_offsets_.assign(levels, {});
  for (int k = 0; k <= n_; ++k) {
    auto& down = down_[k + 1];
    down.reserve(face_count(k) * static_cast<std::size_t>(k + 1));
    for (const auto& s : faces_[k + 1])
      for (std::size_t i = 0; i < s.size(); ++i) down.push_back(index_of(s.without_position(i)));
  }
  for (int k = -1; k < n_; ++k) {
    std::vector<std::size_t> degree(face_count(k), 0);
    const auto& above = down_[k + 2];
    for (std::size_t idx : above) ++degree[idx];
    auto& offsets = up_offsets_[k + 1];
    offsets.assign(face_count(k) + 1, 0);
    for (std::size_t i = 0; i < degree.size(); ++i) offsets[i + 1] = offsets[i] + degree[i];
    auto& values = up_[k + 1];
    values.assign(offsets.back(), 0);
    std::vector<std::size_t> fill(offsets.begin(), offsets.end() - 1);
    const std::size_t stride = static_cast<std::size_t>(k + 2);
    for (std::size_t t = 0; t < face_count(k + 1); ++t)
      for (std::size_t j = 0; j < stride; ++j) values[fill[above[t * stride + j]]++] = t;
  }
  up_offsets_[n_ + 1].assign(face_count(n_) + 1, 0);
}

std::size_t PureComplex::face_count(int k) const noexcept {
  if (k < -1 || k > n_) return 0;
  return faces_[k + 1].size();
}

std::vector<std::size_t> PureComplex::f_vector() const {
  std::vector<std::size_t> f;
  for (int k = 0; k <= n_; ++k) f.push_back(face_count(k));
  return f;
}

const std::vector<Simplex>& PureComplex::faces(int k) const {
  if (k < -1 || k > n_)
    throw Error(ErrorCode::DimensionMismatch, "no faces of dimension " + std::to_string(k));
  return faces_[k + 1];
}

std::optional<std::size_t> PureComplex::find(const Simplex& s) const {
  if (s.dim() > n_) return std::nullopt;
  const auto& list = faces_[s.dim() + 1];
  auto it = std::lower_bound(list.begin(), list.end(), s);
  if (it == list.end() || *it != s) return std::nullopt;
  return static_cast<std::size_t>(it - list.begin());
}

std::size_t PureComplex::index_of(const Simplex& s) const {
  if (auto idx = find(s)) return *idx;
  std::ostringstream msg;
  msg << "face {";
  for (std::size_t i = 0; i < s.size(); ++i) msg << (i ? " " : "") << s[i];
  msg << "} not in complex";
  throw Error(ErrorCode::FaceNotFound, msg.str());
}

Rational PureComplex::weight(int k, std::size_t i) const {
  return Rational(cofacet_count(k, i), weight_denominator(k));
}

Rational PureComplex::weight(const Simplex& s) const { return weight(s.dim(), index_of(s)); }

std::span<const std::size_t> PureComplex::facets_of(int k, std::size_t i) const {
  if (k < 0 || k > n_) return {};
  const std::size_t stride = static_cast<std::size_t>(k + 1);
  return std::span<const std::size_t>(down_[k + 1]).subspan(i * stride, stride);
}

std::span<const std::size_t> PureComplex::cofaces_of(int k, std::size_t i) const {
  if (k < -1 || k >= n_) return {};
  const auto& off = up_offsets_[k + 1];
  return std::span<const std::size_t>(up_[k + 1]).subspan(off[i], off[i + 1] - off[i]);
}

PureComplex PureComplex::relabeled(std::span<const VertexId> perm) const {
  if (perm.size() != vertex_count()) throw Error(ErrorCode::InvalidArgument, "permutation size mismatch");
  std::vector<std::vector<VertexId>> facets;
  for (const auto& f : faces(n_)) {
    std::vector<VertexId> row;
    for (VertexId v : f) row.push_back(perm[v]);
    facets.push_back(std::move(row));
  }
  std::vector<std::string> labels(vertex_count());
  for (VertexId v = 0; v < vertex_count(); ++v) labels[perm[v]] = labels_[v];
  return from_facets(facets, labels);
}

// ---------------------------------------------------------------------------

Subcomplex::Subcomplex(const PureComplex& parent) : parent_(&parent) {
  for (int k = -1; k <= parent.dimension(); ++k) masks_.emplace_back(parent.face_count(k));
  masks_[0].set(0);
}

Subcomplex Subcomplex::full(const PureComplex& parent) {
  Subcomplex s(parent);
  for (int k = 0; k <= parent.dimension(); ++k)
    for (std::size_t i = 0; i < parent.face_count(k); ++i) s.masks_[k + 1].set(i);
  return s;
}

Subcomplex Subcomplex::induced(const PureComplex& parent, std::span<const VertexId> vertices) {
  BitVector mask(parent.vertex_count());
  for (VertexId v : vertices) {
    if (v >= parent.vertex_count()) throw Error(ErrorCode::UnknownVertex, "vertex " + std::to_string(v));
    mask.set(v);
  }
  return induced(parent, mask);
}

Subcomplex Subcomplex::induced(const PureComplex& parent, const BitVector& vertex_mask) {
  Subcomplex s(parent);
  for (int k = 0; k <= parent.dimension(); ++k) {
    const auto& faces = parent.faces(k);
    for (std::size_t i = 0; i < faces.size(); ++i) {
      bool inside = std::all_of(faces[i].begin(), faces[i].end(), [&](VertexId v) { return vertex_mask.test(v); });
      if (inside) s.masks_[k + 1].set(i);
    }
  }
  return s;
}

Subcomplex Subcomplex::closure(const PureComplex& parent, std::span<const FaceRef> faces) {
  Subcomplex s(parent);
  for (const auto& f : faces) {
    if (f.dim < -1 || f.dim > parent.dimension() || f.index >= parent.face_count(f.dim))
      throw Error(ErrorCode::FaceNotFound, "face reference out of range");
    s.masks_[f.dim + 1].set(f.index);
  }
  for (int k = parent.dimension(); k >= 1; --k)
    for (std::size_t i : s.masks_[k + 1].indices())
      for (std::size_t j : parent.facets_of(k, i)) s.masks_[k].set(j);
  return s;
}

std::size_t Subcomplex::face_count(int k) const {
  if (k < -1 || k > parent_->dimension()) return 0;
  return masks_[k + 1].count();
}

int Subcomplex::dimension() const {
  for (int k = parent_->dimension(); k >= 0; --k)
    if (masks_[k + 1].any()) return k;
  return -1;
}

bool Subcomplex::is_pure() const {
  const int d = dimension();
  if (d < 0) return true;
  BitVector covered = masks_[d + 1];
  for (int k = d; k >= 1; --k) {
    BitVector below(parent_->face_count(k - 1));
    for (std::size_t i : covered.indices())
      for (std::size_t j : parent_->facets_of(k, i)) below.set(j);
    if (below != masks_[k]) return false;
    covered = std::move(below);
  }
  return true;
}

bool Subcomplex::is_subset_of(const Subcomplex& other) const {
  for (std::size_t k = 0; k < masks_.size(); ++k)
    if (!masks_[k].is_subset_of(other.masks_[k])) return false;
  return true;
}

Subcomplex Subcomplex::intersect(const Subcomplex& other) const {
  Subcomplex s = *this;
  for (std::size_t k = 0; k < masks_.size(); ++k) s.masks_[k] &= other.masks_[k];
  return s;
}

PureComplex Subcomplex::to_complex() const {
  if (!is_pure()) throw Error(ErrorCode::NotPure, "subcomplex is not pure");
  const int d = dimension();
  if (d < 0) throw Error(ErrorCode::EmptyInput, "subcomplex has no vertices");
  std::vector<std::vector<VertexId>> facets;
  for (std::size_t i : face_indices(d)) facets.push_back(parent_->face(d, i).vertices());
  return PureComplex::from_facets(facets, parent_->labels());
}

// ---------------------------------------------------------------------------

PureComplex parse_facets(std::istream& in) {
  std::vector<std::vector<std::string>> facets;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> row;
    for (std::string label; fields >> label;) row.push_back(label);
    if (!row.empty()) facets.push_back(std::move(row));
  }
  if (facets.empty()) throw Error(ErrorCode::EmptyInput, "facet file has no facets");
  return PureComplex::from_labeled_facets(facets);
}

PureComplex read_facet_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  return parse_facets(in);
}

void write_facets(std::ostream& out, const PureComplex& X) {
  for (const auto& f : X.faces(X.dimension())) {
    for (std::size_t i = 0; i < f.size(); ++i) out << (i ? " " : "") << X.label(f[i]);
    out << '\n';
  }
}

PureComplex simplex_complex(int n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "simplex dimension must be >= 0");
  std::vector<VertexId> all(static_cast<std::size_t>(n + 1));
  for (int i = 0; i <= n; ++i) all[i] = static_cast<VertexId>(i);
  return PureComplex::from_facets({all});
}

}  // namespace cobound
