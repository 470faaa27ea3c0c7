#include <doctest.h>

#include "cobound/error.hpp"
#include "cobound/f2.hpp"
#include "corpus.hpp"

using namespace cobound;

namespace {

std::vector<PureComplex> small_corpus() {
  std::vector<PureComplex> out;
  for (int n = 0; n <= 4; ++n) out.push_back(simplex_complex(n));
  out.push_back(corpus::from_oracle_facets(oracle::partition_facets(1, 2)));
  out.push_back(corpus::from_oracle_facets(oracle::partition_facets(2, 2)));
  out.push_back(corpus::from_oracle_facets(oracle::partition_facets(2, 3)));
  out.push_back(corpus::rp2());
  out.push_back(corpus::from_oracle_facets(oracle::fano_facets()));
  return out;
}

}  // namespace

TEST_CASE("boundary and coboundary examples") {
  PureComplex T = simplex_complex(2);
  const std::size_t e01 = T.index_of(Simplex{0, 1});
  BitChain z = boundary(T, BitChain::indicator(T, 1, e01));
  CHECK(z.support() == std::vector<std::size_t>{T.index_of(Simplex{0}), T.index_of(Simplex{1})});
  BitChain d = coboundary(T, BitChain::indicator(T, 0, 0));
  CHECK(d.support() == std::vector<std::size_t>{T.index_of(Simplex{0, 1}), T.index_of(Simplex{0, 2})});
  CHECK(boundary(T, BitChain::indicator(T, 0, 0)) == BitChain::ones(T, -1));

  PureComplex C = corpus::from_oracle_facets(oracle::partition_facets(1, 2));
  CHECK(boundary(C, BitChain::ones(C, 1)).is_zero());
  BitChain dv = coboundary(C, BitChain::indicator(C, 0, 0));
  CHECK(dv.bits.count() == 2);
}

TEST_CASE("chain complex identities on the corpus") {
  for (const auto& X : small_corpus()) {
    for (int k = 1; k <= X.dimension(); ++k)
      for (std::size_t i = 0; i < X.face_count(k); ++i)
        CHECK(boundary(X, boundary(X, BitChain::indicator(X, k, i))).is_zero());
    for (int k = -1; k + 2 <= X.dimension(); ++k)
      for (std::size_t i = 0; i < X.face_count(k); ++i)
        CHECK(coboundary(X, coboundary(X, BitChain::indicator(X, k, i))).is_zero());
  }
}

TEST_CASE("coboundary matrix is the transpose of the boundary matrix") {
  for (const auto& X : small_corpus()) {
    for (int k = 0; k < X.dimension(); ++k) CHECK(coboundary_matrix(X, k) == boundary_matrix(X, k + 1).transpose());
  }
}

TEST_CASE("evaluation pairs cochains with chains") {
  PureComplex D = simplex_complex(3);
  BitChain z = BitChain::from_faces(D, 1, std::vector<std::size_t>{0, 1, 2});
  CHECK(evaluate(BitChain::ones(D, 1), z));
  CHECK_FALSE(evaluate(BitChain::zero(D, 1), z));
}

TEST_CASE("rank and solve") {
  PureComplex T = simplex_complex(2);
  F2Matrix A = boundary_matrix(T, 1);
  BitVector b = boundary(T, BitChain::indicator(T, 1, 0)).bits;
  SolveResult r = rank_and_solve(A, &b);
  CHECK(r.consistent);
  REQUIRE(r.solution);
  CHECK(A.multiply(*r.solution) == b);
  CHECK(r.kernel.size() == 1);

  PureComplex two = PureComplex::from_facets({{0, 1}, {2, 3}});
  BitVector crossing = BitVector::from_indices(4, std::vector<std::size_t>{0, 2});
  CHECK_FALSE(rank_and_solve(boundary_matrix(two, 1), &crossing).consistent);
  CHECK_THROWS_AS(solve(boundary_matrix(two, 1), crossing), Error);

  for (int n = 1; n <= 6; ++n) CHECK(rank(boundary_matrix(simplex_complex(n), 1)) == static_cast<std::size_t>(n));
}

TEST_CASE("reduced Betti numbers") {
  for (int n = 0; n <= 5; ++n)
    for (int k = -1; k <= n; ++k) CHECK(reduced_betti(simplex_complex(n), k) == 0);
  for (int n = 1; n <= 3; ++n) {
    PureComplex O = corpus::from_oracle_facets(oracle::partition_facets(n, 2));
    for (int k = -1; k <= n; ++k) CHECK(reduced_betti(O, k) == (k == n ? 1u : 0u));
    // Euler characteristic cross-check.
    long long chi = 0;
    for (int k = -1; k <= n; ++k) chi += (k % 2 == 0 ? -1 : 1) * static_cast<long long>(O.face_count(k));
    CHECK(chi == (n % 2 == 0 ? -1 : 1));
  }
  PureComplex R = corpus::rp2();
  CHECK(reduced_betti_numbers(R) == std::vector<std::size_t>{0, 0, 1, 1});
  PureComplex two = PureComplex::from_facets({{0, 1}, {2, 3}});
  CHECK(reduced_betti(two, 0) == 1);
  Subcomplex edge = Subcomplex::induced(two, std::vector<VertexId>{0, 1});
  CHECK(reduced_betti_numbers(edge) == std::vector<std::size_t>{0, 0, 0});
  CHECK(reduced_betti(Subcomplex(two), -1) == 1);
}
