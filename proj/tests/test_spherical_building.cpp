#include <doctest.h>

#include <sstream>

#include "cobound/error.hpp"
#include "cobound/f2.hpp"
#include "cobound/spherical_building.hpp"
#include "corpus.hpp"

using namespace cobound;

TEST_CASE("row reduction over F_q") {
  FqMatrix m{2, 3, {2, 1, 0, 1, 2, 0}};
  FqMatrix r = rref(m, 3);
  CHECK(r.rows == 1);
  CHECK(r.entries == std::vector<std::uint8_t>{1, 2, 0});
  CHECK(rref(r, 3) == r);
  Subspace U = Subspace::span(m, 3);
  CHECK(U.dim() == 1);
  CHECK(Subspace::span(U.basis(), 3) == U);
  CHECK(U.label() == "120");
  CHECK_THROWS_AS(Subspace::span(FqMatrix{1, 3, {0, 0, 0}}, 3), Error);
  CHECK(is_prime(5));
  CHECK_FALSE(is_prime(4));
}

TEST_CASE("subspace and chamber counts") {
  FlagComplexA F = build_building_A(1, 2);
  CHECK(F.complex->face_count(0) == 14);
  CHECK(F.complex->face_count(1) == 21);
  FlagComplexA F3 = build_building_A(1, 3);
  CHECK(F3.complex->face_count(0) == 26);
  CHECK(F3.complex->face_count(1) == 52);
  FlagComplexA A3 = build_building_A(2, 2);
  CHECK(A3.complex->face_count(0) == 65);
  CHECK(A3.complex->face_count(2) == 15 * 7 * 3);
  std::size_t lines = 0;
  for (VertexId v = 0; v < A3.complex->vertex_count(); ++v) lines += A3.type(v) == 1;
  CHECK(lines == 15);
  for (VertexId v = 0; v < A3.complex->vertex_count(); ++v) CHECK(A3.vertex_of(A3.subspaces[v]) == v);
  CHECK(build_building_A(1, 5).complex->face_count(0) == 62);
  CHECK_THROWS_AS(build_building_A(1, 4), Error);
  try {
    build_building_A(1, 4);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonPrimeField);
  }
  CHECK_THROWS_AS(build_building_A(3, 3, 100), Error);
}

TEST_CASE("flag complexes are pure with complete-flag chambers") {
  FlagComplexA D = build_building_A(2, 2);
  const PureComplex& X = *D.complex;
  for (const auto& chamber : X.faces(2)) {
    CHECK(D.type(chamber[0]) == 1);
    CHECK(D.type(chamber[1]) == 2);
    CHECK(D.type(chamber[2]) == 3);
    CHECK(D.subspaces[chamber[0]].is_subspace_of(D.subspaces[chamber[1]], 2));
    CHECK(D.subspaces[chamber[1]].is_subspace_of(D.subspaces[chamber[2]], 2));
  }
  for (int k = 0; k < 2; ++k)
    for (std::size_t i = 0; i < X.face_count(k); ++i) CHECK(X.cofacet_count(k, i) > 0);
}

TEST_CASE("the GL generators act on chambers with the order of PGL") {
  CHECK(build_building_A(1, 2).group.order() == 168);
  CHECK(build_building_A(1, 3).group.order() == 5616);
  CHECK(build_building_A(2, 2).group.order() == 20160);
  for (auto [n, q] : {std::pair{1, 2}, std::pair{1, 3}, std::pair{2, 2}, std::pair{1, 5}}) {
    FlagComplexA D = build_building_A(n, q);
    for (const auto& g : D.group.generators()) CHECK(is_automorphism(*D.complex, g));
    CHECK(D.group.is_transitive_on_faces(*D.complex, n));
  }
}

TEST_CASE("apartments") {
  FlagComplexA F = build_building_A(1, 2);
  const auto apartments = enumerate_apartments(F);
  CHECK(apartments.size() == 28);
  for (const auto& A : apartments) {
    const Subcomplex S = apartment_subcomplex(F, A);
    CHECK(S.face_count(1) == 6);
    CHECK(reduced_betti_numbers(S) == std::vector<std::size_t>{0, 0, 1});
  }
  for (std::size_t s = 0; s < F.complex->face_count(1); ++s) {
    const auto hits = apartments_containing(F, apartments, s, {-1, 0});
    CHECK(hits.size() == 8);
    for (std::size_t v : F.complex->face(1, s)) {
      const auto with_vertex = apartments_containing(F, apartments, s, {0, v});
      CHECK(with_vertex == hits);
    }
    for (std::size_t t = 0; t < F.complex->face_count(1); ++t) {
      const auto both = apartments_containing(F, apartments, s, {1, t});
      CHECK_FALSE(both.empty());
      for (std::size_t a : both) {
        for (VertexId v : F.complex->face(1, t)) CHECK(apartments[a].vertices.test(v));
        for (VertexId v : F.complex->face(1, s)) CHECK(apartments[a].vertices.test(v));
      }
    }
  }
  CHECK(enumerate_apartments(build_building_A(1, 3)).size() == 234);
  const FlagComplexA A3 = build_building_A(2, 2);
  const auto a3 = enumerate_apartments(A3);
  CHECK(a3.size() == 840);
  for (std::size_t i = 0; i < a3.size(); i += 37) {
    const Subcomplex S = apartment_subcomplex(A3, a3[i]);
    CHECK(S.face_count(2) == 24);
    CHECK(reduced_betti_numbers(S) == std::vector<std::size_t>{0, 0, 0, 1});
  }
}

TEST_CASE("apartment-intersection family") {
  FlagComplexA F = build_building_A(1, 2);
  const auto st = building_structure(F);
  const PureComplex& X = *F.complex;
  const auto report = verify_structure(st, 0);
  CHECK(report.passed());
  CHECK(report.family_monotone);
  for (std::size_t s = 0; s < X.face_count(1); ++s) {
    const Subcomplex& B = st.family->get(s, {-1, 0});
    CHECK(B.face_count(1) == 1);
    CHECK(reduced_betti(B, -1) == 0);
    CHECK(reduced_betti(B, 0) == 0);
  }
  // Adjacent chambers s, t: B_{s,t} contains both.
  for (std::size_t s = 0; s < X.face_count(1); ++s)
    for (std::size_t t = 0; t < X.face_count(1); ++t) {
      const Simplex& a = X.face(1, s);
      const Simplex& b = X.face(1, t);
      if (s == t || !(a[0] == b[0] || a[1] == b[1])) continue;
      const Subcomplex& B = st.family->get(s, {1, t});
      CHECK(B.contains(1, s));
      CHECK(B.contains(1, t));
    }
}

TEST_CASE("building bounds") {
  FlagComplexA F = build_building_A(1, 2);
  const auto bounds = building_bounds(F, 0, true);
  REQUIRE(bounds.size() == 3);
  CHECK(bounds[0].value == Rational(1, 6));
  CHECK(bounds[1].value >= Rational(1, 6));
  CHECK(bounds[2].value >= Rational(1, 6));
  const Rational h = h_exact(*F.complex, 0).value;
  for (const auto& b : bounds) CHECK(respects(b, h));
  CHECK(building_bounds(build_building_A(2, 2), 1).front().value == Rational(1, 24));
  CHECK(compute_a_k(building_structure(F), 0) <= 6);
}

TEST_CASE("Fano h_0 agrees with the oracle on the incidence graph") {
  const Rational h = h_exact(*build_building_A(1, 2).complex, 0).value;
  CHECK(h == oracle::h(oracle::from_facets(oracle::fano_facets()), 0));
  CHECK(h == Rational(2, 3));
}

TEST_CASE("conjecture exploration table") {
  const auto rows = explore_conjecture(1, {2}, HkOptions{});
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].exact);
  CHECK(rows[0].value == Rational(2, 3));
  CHECK(rows[0].f0 == 14);
  const auto capped = explore_conjecture(1, {2}, HkOptions{16, true, 1});
  CHECK_FALSE(capped[0].exact);
  CHECK(capped[0].value >= Rational(2, 3));
  std::ostringstream csv;
  write_conjecture_csv(csv, rows);
  CHECK(csv.str().rfind("q,f_0,f_1,exact,h_exact", 0) == 0);
  CHECK(csv.str().find("2,14,21,true,2/3,2/3,1/6,8191,") != std::string::npos);
}

TEST_CASE("degree disparity") {
  const DegreeDisparity fano = degree_disparity_report(build_building_A(1, 2));
  CHECK(fano.regular);
  REQUIRE(fano.types.size() == 2);
  CHECK(fano.types[0].min_c == 3);
  CHECK(fano.types[1].max_c == 3);
  const DegreeDisparity a3 = degree_disparity_report(build_building_A(2, 2));
  CHECK_FALSE(a3.regular);
  REQUIRE(a3.types.size() == 3);
  CHECK(a3.types[0].min_c == a3.types[0].max_c);
  CHECK(a3.types[0].min_c != a3.types[1].min_c);
  CHECK(a3.uniform_average == Rational(3 * 315, 65));
  MESSAGE("A_3(F_2) uniform singleton " << to_fraction_string(a3.uniform_singleton) << ", weighted singleton "
                                        << to_fraction_string(a3.weighted_singleton));
}
