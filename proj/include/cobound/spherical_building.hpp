#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "cobound/building_like.hpp"
#include "cobound/complex.hpp"
#include "cobound/expansion.hpp"
#include "cobound/group.hpp"

namespace cobound {

/// Matrix over F_q, row-major with entries in 0..q-1.
struct FqMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::uint8_t> entries;

  std::uint8_t at(int r, int c) const { return entries[static_cast<std::size_t>(r * cols + c)]; }
  std::uint8_t& at(int r, int c) { return entries[static_cast<std::size_t>(r * cols + c)]; }
  friend auto operator<=>(const FqMatrix&, const FqMatrix&) = default;
  friend bool operator==(const FqMatrix&, const FqMatrix&) = default;
};

/// Nonzero proper subspace of F_q^N, stored by its reduced row echelon basis.
class Subspace {
 public:
  /// Row-reduces the spanning rows. Throws InvalidArgument when they span 0.
  static Subspace span(const FqMatrix& rows, int q);

  int dim() const noexcept { return basis_.rows; }
  int ambient() const noexcept { return basis_.cols; }
  const FqMatrix& basis() const noexcept { return basis_; }
  bool is_subspace_of(const Subspace& other, int q) const;
  /// Rows as digit strings joined by commas, e.g. "10,01".
  std::string label() const;

  friend auto operator<=>(const Subspace&, const Subspace&) = default;
  friend bool operator==(const Subspace&, const Subspace&) = default;

 private:
  FqMatrix basis_;
};

/// Reduced row echelon form over F_q (q prime), zero rows dropped.
FqMatrix rref(FqMatrix m, int q);
std::size_t rank_mod(const FqMatrix& m, int q);
bool is_prime(int q);

/// A_{n+1}(F_q): the flag complex of nonzero proper subspaces of F_q^{n+2}.
struct FlagComplexA {
  int n = 0;
  int q = 0;
  std::shared_ptr<const PureComplex> complex;
  /// Subspace of every vertex id.
  std::vector<Subspace> subspaces;
  /// Generators of GL_{n+2}(F_q) acting on the right of row vectors.
  std::vector<FqMatrix> generator_matrices;
  PermGroup group{0, {}};

  int type(VertexId v) const { return subspaces[v].dim(); }
  VertexId vertex_of(const Subspace& U) const;

 private:
  friend FlagComplexA build_building_A(int n, int q, std::uint64_t budget);
  std::unordered_map<std::string, VertexId> index_;
};

/// Throws NonPrimeField or BudgetExceeded (when the subspace count exceeds `budget`).
FlagComplexA build_building_A(int n, int q, std::uint64_t budget = 100'000);

/// Permutation of the vertices induced by an invertible matrix.
Permutation induced_permutation(const FlagComplexA& D, const FqMatrix& g);

/// n+2 independent lines and the spans of their nonempty proper subsets.
struct Apartment {
  std::vector<VertexId> frame;
  BitVector vertices;
};

/// Every frame of the building, in lexicographic order of line ids.
std::vector<Apartment> enumerate_apartments(const FlagComplexA& D, std::uint64_t budget = kDefaultBudget);

Subcomplex apartment_subcomplex(const FlagComplexA& D, const Apartment& A);

/// Indices into `apartments` of those whose vertex set contains s and tau.
std::vector<std::size_t> apartments_containing(const FlagComplexA& D, const std::vector<Apartment>& apartments,
                                               std::size_t chamber, FaceRef tau);

/// (Delta, S = chambers, GL, B_{s,tau} = intersection of the apartments
/// containing s and tau).
BuildingLikeStructure building_structure(const FlagComplexA& D, std::uint64_t budget = kDefaultBudget);

/// epsilon2 with omega = (n+2)!; with `use_engine` also the a_k and theta
/// certificates from engine-built fillings.
std::vector<BoundCertificate> building_bounds(const FlagComplexA& D, int k, bool use_engine = false,
                                              std::uint64_t budget = kDefaultBudget);

struct ConjectureRow {
  int q = 0;
  std::size_t f0 = 0;
  std::size_t f1 = 0;
  bool exact = false;
  /// Exact h_{n-1} when `exact`, else the singleton upper bound.
  Rational value;
  Rational lower_bound;
  std::uint64_t search_size = 0;
  double seconds = 0;
};

/// h_{n-1}(A_{n+1}(F_q)) for each q, exact when the coset count fits the budget.
std::vector<ConjectureRow> explore_conjecture(int n, const std::vector<int>& qs, const HkOptions& options);
void write_conjecture_csv(std::ostream& out, const std::vector<ConjectureRow>& rows);

struct TypeDegree {
  int type = 0;
  std::size_t vertices = 0;
  std::uint64_t min_c = 0;
  std::uint64_t max_c = 0;
};

struct DegreeDisparity {
  std::vector<TypeDegree> types;
  /// Mean of c(v) over all vertices.
  Rational uniform_average;
  bool regular = false;
  /// min_v deg(v) f_0 / f_1: singleton bound on h_0 under uniform weights.
  Rational uniform_singleton;
  /// Singleton bound on h_0 under the weighted norm.
  Rational weighted_singleton;
  std::string note;
};

DegreeDisparity degree_disparity_report(const FlagComplexA& D);

}  // namespace cobound
