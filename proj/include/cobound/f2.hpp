#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cobound/bitvector.hpp"
#include "cobound/complex.hpp"

namespace cobound {

/// A k-chain or k-cochain over F2: the support indicator on the indexed
/// k-faces. The basis is self-dual, so one type serves C_k and C^k.
struct BitChain {
  int dim = -1;
  BitVector bits;

  BitChain() = default;
  BitChain(int d, BitVector b) : dim(d), bits(std::move(b)) {}

  static BitChain zero(const PureComplex& X, int k) { return {k, BitVector(X.face_count(k))}; }
  static BitChain indicator(const PureComplex& X, int k, std::size_t i);
  static BitChain ones(const PureComplex& X, int k);
  static BitChain from_faces(const PureComplex& X, int k, std::span<const std::size_t> faces);

  bool is_zero() const noexcept { return bits.none(); }
  std::vector<std::size_t> support() const { return bits.indices(); }

  BitChain& operator+=(const BitChain& other);
  friend BitChain operator+(BitChain a, const BitChain& b) { return a += b; }
  friend bool operator==(const BitChain&, const BitChain&) = default;
};

/// Boundary of a k-chain, k >= 0. The boundary of a vertex is the empty simplex.
BitChain boundary(const PureComplex& X, const BitChain& z);
/// Coboundary of a k-cochain, -1 <= k <= n-1.
BitChain coboundary(const PureComplex& X, const BitChain& phi);
/// Evaluation <phi, z> of a cochain on a chain of the same dimension.
bool evaluate(const BitChain& phi, const BitChain& z);

/// Dense F2 matrix stored as packed rows.
class F2Matrix {
 public:
  F2Matrix() = default;
  F2Matrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, BitVector(cols)) {}

  std::size_t rows() const noexcept { return rows_.size(); }
  std::size_t cols() const noexcept { return cols_; }
  bool get(std::size_t r, std::size_t c) const { return rows_[r].test(c); }
  void set(std::size_t r, std::size_t c, bool v = true) { rows_[r].assign(c, v); }
  const BitVector& row(std::size_t r) const { return rows_[r]; }
  BitVector& row(std::size_t r) { return rows_[r]; }

  BitVector multiply(const BitVector& x) const;
  F2Matrix transpose() const;

  friend bool operator==(const F2Matrix&, const F2Matrix&) = default;

 private:
  std::size_t cols_ = 0;
  std::vector<BitVector> rows_;
};

/// Matrix of boundary_k: rows are (k-1)-faces, columns are k-faces.
F2Matrix boundary_matrix(const PureComplex& X, int k);
/// Matrix of d_k: rows are (k+1)-faces, columns are k-faces.
F2Matrix coboundary_matrix(const PureComplex& X, int k);
/// boundary_k restricted to the faces of a subcomplex, compacted: rows are the
/// subcomplex's (k-1)-faces and columns its k-faces, both in parent order.
F2Matrix boundary_matrix(const Subcomplex& B, int k);

struct SolveResult {
  std::size_t rank = 0;
  /// Pivot column of each echelon row, increasing.
  std::vector<std::size_t> pivots;
  bool consistent = true;
  /// One solution of A x = b with free variables set to zero.
  std::optional<BitVector> solution;
  /// Basis of ker A, one vector per free column.
  std::vector<BitVector> kernel;
};

/// Gaussian elimination over F2 with lowest-index pivoting. When `b` is
/// given, `consistent` reports whether b lies in the column span.
SolveResult rank_and_solve(const F2Matrix& A, const BitVector* b = nullptr);

/// Like rank_and_solve but throws Inconsistent when A x = b has no solution.
BitVector solve(const F2Matrix& A, const BitVector& b);

std::size_t rank(const F2Matrix& A);

/// Reduced F2 Betti number via the augmented complex; -1 <= k <= n.
std::size_t reduced_betti(const PureComplex& X, int k);
std::size_t reduced_betti(const Subcomplex& B, int k);
std::vector<std::size_t> reduced_betti_numbers(const Subcomplex& B);
std::vector<std::size_t> reduced_betti_numbers(const PureComplex& X);

}  // namespace cobound
