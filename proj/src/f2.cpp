#include "cobound/f2.hpp"

#include <string>

#include "cobound/error.hpp"

namespace cobound {

namespace {

void check_chain(const PureComplex& X, const BitChain& c) {
  if (c.dim < -1 || c.dim > X.dimension() || c.bits.size() != X.face_count(c.dim))
    throw Error(ErrorCode::DimensionMismatch,
                "chain of dimension " + std::to_string(c.dim) + " and length " + std::to_string(c.bits.size()));
}

}  // namespace

BitChain BitChain::indicator(const PureComplex& X, int k, std::size_t i) {
  BitChain c = zero(X, k);
  c.bits.set(i);
  return c;
}

BitChain BitChain::ones(const PureComplex& X, int k) {
  BitChain c = zero(X, k);
  for (std::size_t i = 0; i < c.bits.size(); ++i) c.bits.set(i);
  return c;
}

BitChain BitChain::from_faces(const PureComplex& X, int k, std::span<const std::size_t> faces) {
  BitChain c = zero(X, k);
  for (std::size_t i : faces) c.bits.flip(i);
  return c;
}

BitChain& BitChain::operator+=(const BitChain& other) {
  if (dim != other.dim || bits.size() != other.bits.size())
    throw Error(ErrorCode::DimensionMismatch, "adding chains of different dimensions");
  bits ^= other.bits;
  return *this;
}

BitChain boundary(const PureComplex& X, const BitChain& z) {
  check_chain(X, z);
  if (z.dim < 0) throw Error(ErrorCode::DimensionMismatch, "boundary of the empty simplex is not defined here");
  BitChain out = BitChain::zero(X, z.dim - 1);
  for (std::size_t i : z.support())
    for (std::size_t j : X.facets_of(z.dim, i)) out.bits.flip(j);
  return out;
}

BitChain coboundary(const PureComplex& X, const BitChain& phi) {
  check_chain(X, phi);
  if (phi.dim >= X.dimension())
    throw Error(ErrorCode::DimensionMismatch, "coboundary of a top-dimensional cochain");
  BitChain out = BitChain::zero(X, phi.dim + 1);
  for (std::size_t i : phi.support())
    for (std::size_t j : X.cofaces_of(phi.dim, i)) out.bits.flip(j);
  return out;
}

bool evaluate(const BitChain& phi, const BitChain& z) {
  if (phi.dim != z.dim || phi.bits.size() != z.bits.size())
    throw Error(ErrorCode::DimensionMismatch, "evaluating a cochain on a chain of another dimension");
  return phi.bits.dot(z.bits);
}

// ---------------------------------------------------------------------------

BitVector F2Matrix::multiply(const BitVector& x) const {
  if (x.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "matrix-vector shape mismatch");
  BitVector y(rows());
  for (std::size_t r = 0; r < rows(); ++r)
    if (rows_[r].dot(x)) y.set(r);
  return y;
}

F2Matrix F2Matrix::transpose() const {
  F2Matrix t(cols_, rows());
  for (std::size_t r = 0; r < rows(); ++r)
    for (std::size_t c : rows_[r].indices()) t.set(c, r);
  return t;
}

F2Matrix boundary_matrix(const PureComplex& X, int k) {
  if (k < 0 || k > X.dimension()) throw Error(ErrorCode::DimensionMismatch, "boundary_" + std::to_string(k));
  F2Matrix A(X.face_count(k - 1), X.face_count(k));
  for (std::size_t c = 0; c < X.face_count(k); ++c)
    for (std::size_t r : X.facets_of(k, c)) A.set(r, c);
  return A;
}

F2Matrix coboundary_matrix(const PureComplex& X, int k) {
  if (k < -1 || k >= X.dimension()) throw Error(ErrorCode::DimensionMismatch, "d_" + std::to_string(k));
  return boundary_matrix(X, k + 1).transpose();
}

F2Matrix boundary_matrix(const Subcomplex& B, int k) {
  const PureComplex& X = B.parent();
  if (k < 0 || k > X.dimension()) throw Error(ErrorCode::DimensionMismatch, "boundary_" + std::to_string(k));
  const auto rows = B.face_indices(k - 1);
  const auto cols = B.face_indices(k);
  std::vector<std::size_t> row_pos(X.face_count(k - 1), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) row_pos[rows[i]] = i;
  F2Matrix A(rows.size(), cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r : X.facets_of(k, cols[c])) A.set(row_pos[r], c);
  return A;
}

SolveResult rank_and_solve(const F2Matrix& A, const BitVector* b) {
  if (b && b->size() != A.rows()) throw Error(ErrorCode::DimensionMismatch, "right-hand side length");
  std::vector<BitVector> rows;
  rows.reserve(A.rows());
  for (std::size_t r = 0; r < A.rows(); ++r) rows.push_back(A.row(r));
  BitVector rhs = b ? *b : BitVector(A.rows());

  SolveResult out;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < A.cols() && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && !rows[pivot].test(col)) ++pivot;
    if (pivot == rows.size()) continue;
    if (pivot != rank) {
      std::swap(rows[pivot], rows[rank]);
      bool t = rhs.test(pivot);
      rhs.assign(pivot, rhs.test(rank));
      rhs.assign(rank, t);
    }
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != rank && rows[r].test(col)) {
        rows[r] ^= rows[rank];
        if (rhs.test(rank)) rhs.flip(r);
      }
    }
    out.pivots.push_back(col);
    ++rank;
  }
  out.rank = rank;

  for (std::size_t r = rank; r < rows.size(); ++r)
    if (rhs.test(r)) out.consistent = false;

  if (b && out.consistent) {
    BitVector x(A.cols());
    for (std::size_t i = 0; i < rank; ++i)
      if (rhs.test(i)) x.set(out.pivots[i]);
    out.solution = std::move(x);
  }

  BitVector is_pivot(A.cols());
  for (std::size_t p : out.pivots) is_pivot.set(p);
  for (std::size_t f = 0; f < A.cols(); ++f) {
    if (is_pivot.test(f)) continue;
    BitVector v(A.cols());
    v.set(f);
    for (std::size_t i = 0; i < rank; ++i)
      if (rows[i].test(f)) v.set(out.pivots[i]);
    out.kernel.push_back(std::move(v));
  }
  return out;
}

BitVector solve(const F2Matrix& A, const BitVector& b) {
  SolveResult r = rank_and_solve(A, &b);
  if (!r.consistent) throw Error(ErrorCode::Inconsistent, "right-hand side is not in the column span");
  return std::move(*r.solution);
}

std::size_t rank(const F2Matrix& A) {
  // Plain elimination without solution or kernel bookkeeping.
  std::vector<BitVector> rows;
  for (std::size_t r = 0; r < A.rows(); ++r)
    if (A.row(r).any()) rows.push_back(A.row(r));
  std::size_t rank = 0;
  for (std::size_t col = 0; col < A.cols() && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && !rows[pivot].test(col)) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r)
      if (rows[r].test(col)) rows[r] ^= rows[rank];
    ++rank;
  }
  return rank;
}

std::vector<std::size_t> reduced_betti_numbers(const Subcomplex& B) {
  const int n = B.parent().dimension();
  // boundary_ranks[k + 1] = rank of boundary_k on B, for k = -1..n+1.
  std::vector<std::size_t> boundary_ranks(static_cast<std::size_t>(n + 3), 0);
  for (int k = 0; k <= n; ++k) boundary_ranks[k + 1] = rank(boundary_matrix(B, k));
  std::vector<std::size_t> betti;
  for (int k = -1; k <= n; ++k) {
    std::size_t cycles = B.face_count(k) - boundary_ranks[k + 1];
    betti.push_back(cycles - boundary_ranks[k + 2]);
  }
  return betti;
}

std::vector<std::size_t> reduced_betti_numbers(const PureComplex& X) {
  return reduced_betti_numbers(Subcomplex::full(X));
}

std::size_t reduced_betti(const Subcomplex& B, int k) {
  const int n = B.parent().dimension();
  if (k < -1 || k > n) throw Error(ErrorCode::DimensionMismatch, "betti index " + std::to_string(k));
  std::size_t rk = k >= 0 ? rank(boundary_matrix(B, k)) : 0;
  std::size_t rk_up = k + 1 <= n ? rank(boundary_matrix(B, k + 1)) : 0;
  return B.face_count(k) - rk - rk_up;
}

std::size_t reduced_betti(const PureComplex& X, int k) { return reduced_betti(Subcomplex::full(X), k); }

}  // namespace cobound
