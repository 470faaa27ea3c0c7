#include "cobound/spherical_building.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <ostream>

#include "cobound/error.hpp"
#include "cobound/f2.hpp"

namespace cobound {

namespace {

int inverse_mod(int a, int q) {
  for (int x = 1; x < q; ++x)
    if (a * x % q == 1) return x;
  throw Error(ErrorCode::InvalidArgument, "no inverse mod q");
}

int primitive_root(int q) {
  for (int z = 1; z < q; ++z) {
    int order = 1;
    for (int p = z % q; p != 1; p = p * z % q) ++order;
    if (order == q - 1) return z;
  }
  return 1;
}

FqMatrix stack(const FqMatrix& a, const FqMatrix& b) {
  FqMatrix out{a.rows + b.rows, a.cols, a.entries};
  out.entries.insert(out.entries.end(), b.entries.begin(), b.entries.end());
  return out;
}

FqMatrix multiply(const FqMatrix& a, const FqMatrix& b, int q) {
  FqMatrix out{a.rows, b.cols, std::vector<std::uint8_t>(static_cast<std::size_t>(a.rows * b.cols), 0)};
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < b.cols; ++j) {
      int s = 0;
      for (int t = 0; t < a.cols; ++t) s += a.at(i, t) * b.at(t, j);
      out.at(i, j) = static_cast<std::uint8_t>(s % q);
    }
  return out;
}

FqMatrix identity_matrix(int N) {
  FqMatrix m{N, N, std::vector<std::uint8_t>(static_cast<std::size_t>(N * N), 0)};
  for (int i = 0; i < N; ++i) m.at(i, i) = 1;
  return m;
}

FqMatrix select_rows(const FqMatrix& m, std::uint32_t mask) {
  FqMatrix out{0, m.cols, {}};
  for (int r = 0; r < m.rows; ++r) {
    if (!(mask >> r & 1u)) continue;
    ++out.rows;
    out.entries.insert(out.entries.end(), m.entries.begin() + r * m.cols, m.entries.begin() + (r + 1) * m.cols);
  }
  return out;
}

void enumerate_rref(int N, int d, int q, std::vector<Subspace>& out) {
  std::vector<int> pivots(d);
  for (int i = 0; i < d; ++i) pivots[i] = i;
  while (true) {
    std::vector<std::pair<int, int>> free_cells;
    for (int r = 0; r < d; ++r)
      for (int c = pivots[r] + 1; c < N; ++c)
        if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) free_cells.emplace_back(r, c);
    std::vector<int> digits(free_cells.size(), 0);
    while (true) {
      FqMatrix m{d, N, std::vector<std::uint8_t>(static_cast<std::size_t>(d * N), 0)};
      for (int r = 0; r < d; ++r) m.at(r, pivots[r]) = 1;
      for (std::size_t i = 0; i < free_cells.size(); ++i)
        m.at(free_cells[i].first, free_cells[i].second) = static_cast<std::uint8_t>(digits[i]);
      out.push_back(Subspace::span(m, q));
      std::size_t i = 0;
      while (i < digits.size() && ++digits[i] == q) digits[i++] = 0;
      if (i == digits.size()) break;
    }
    int i = d - 1;
    while (i >= 0 && pivots[i] == N - d + i) --i;
    if (i < 0) break;
    ++pivots[i];
    for (int j = i + 1; j < d; ++j) pivots[j] = pivots[j - 1] + 1;
  }
}

BigInt gaussian_binomial(int N, int d, int q) {
  BigInt num = 1, den = 1;
  for (int i = 0; i < d; ++i) {
    num *= boost::multiprecision::pow(BigInt(q), N - i) - 1;
    den *= boost::multiprecision::pow(BigInt(q), i + 1) - 1;
  }
  return num / den;
}

BitVector face_vertices(const PureComplex& X, std::size_t chamber, FaceRef tau) {
  BitVector bits(X.vertex_count());
  for (VertexId v : X.face(X.dimension(), chamber)) bits.set(v);
  for (VertexId v : X.face(tau)) bits.set(v);
  return bits;
}

std::vector<std::size_t> containing(const std::vector<Apartment>& apartments, const BitVector& required) {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < apartments.size(); ++a)
    if (required.is_subset_of(apartments[a].vertices)) out.push_back(a);
  return out;
}

}  // namespace

bool is_prime(int q) {
  if (q < 2) return false;
  for (int d = 2; d * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

FqMatrix rref(FqMatrix m, int q) {
  int row = 0;
  for (int col = 0; col < m.cols && row < m.rows; ++col) {
    int pivot = row;
    while (pivot < m.rows && m.at(pivot, col) == 0) ++pivot;
    if (pivot == m.rows) continue;
    for (int c = 0; c < m.cols; ++c) std::swap(m.at(row, c), m.at(pivot, c));
    const int inv = inverse_mod(m.at(row, col), q);
    for (int c = 0; c < m.cols; ++c) m.at(row, c) = static_cast<std::uint8_t>(m.at(row, c) * inv % q);
    for (int r = 0; r < m.rows; ++r) {
      if (r == row || m.at(r, col) == 0) continue;
      const int f = m.at(r, col);
      for (int c = 0; c < m.cols; ++c)
        m.at(r, c) = static_cast<std::uint8_t>(((m.at(r, c) - f * m.at(row, c)) % q + q) % q);
    }
    ++row;
  }
  m.rows = row;
  m.entries.resize(static_cast<std::size_t>(row * m.cols));
  return m;
}

std::size_t rank_mod(const FqMatrix& m, int q) { return static_cast<std::size_t>(rref(m, q).rows); }

Subspace Subspace::span(const FqMatrix& rows, int q) {
  Subspace s;
  s.basis_ = rref(rows, q);
  if (s.basis_.rows == 0) throw Error(ErrorCode::InvalidArgument, "rows span the zero subspace");
  return s;
}

bool Subspace::is_subspace_of(const Subspace& other, int q) const {
  return dim() <= other.dim() && static_cast<int>(rank_mod(stack(other.basis_, basis_), q)) == other.dim();
}

std::string Subspace::label() const {
  std::string out;
  for (int r = 0; r < basis_.rows; ++r) {
    if (r) out += ',';
    for (int c = 0; c < basis_.cols; ++c) out += std::to_string(basis_.at(r, c));
  }
  return out;
}

VertexId FlagComplexA::vertex_of(const Subspace& U) const {
  auto it = index_.find(U.label());
  if (it == index_.end()) throw Error(ErrorCode::UnknownVertex, "subspace " + U.label() + " is not a vertex");
  return it->second;
}

Permutation induced_permutation(const FlagComplexA& D, const FqMatrix& g) {
  std::vector<VertexId> images(D.subspaces.size());
  for (std::size_t v = 0; v < D.subspaces.size(); ++v)
    images[v] = D.vertex_of(Subspace::span(multiply(D.subspaces[v].basis(), g, D.q), D.q));
  return Permutation(std::move(images));
}

FlagComplexA build_building_A(int n, int q, std::uint64_t budget) {
  if (!is_prime(q)) throw Error(ErrorCode::NonPrimeField, "q = " + std::to_string(q) + " is not prime");
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "rank n+1 needs n >= 1");
  const int N = n + 2;
  BigInt total = 0;
  for (int d = 1; d < N; ++d) total += gaussian_binomial(N, d, q);
  if (total > budget) throw Error(ErrorCode::BudgetExceeded, total.str() + " subspaces");

  FlagComplexA D;
  D.n = n;
  D.q = q;
  for (int d = 1; d < N; ++d) enumerate_rref(N, d, q, D.subspaces);
  std::sort(D.subspaces.begin(), D.subspaces.end());
  std::vector<std::string> labels;
  for (std::size_t v = 0; v < D.subspaces.size(); ++v) {
    labels.push_back(D.subspaces[v].label());
    D.index_.emplace(labels.back(), static_cast<VertexId>(v));
  }

  // up[v]: the subspaces of dimension dim(v)+1 containing v.
  std::vector<std::vector<VertexId>> up(D.subspaces.size());
  for (std::size_t v = 0; v < D.subspaces.size(); ++v)
    for (std::size_t w = 0; w < D.subspaces.size(); ++w)
      if (D.subspaces[w].dim() == D.subspaces[v].dim() + 1 && D.subspaces[v].is_subspace_of(D.subspaces[w], q))
        up[v].push_back(static_cast<VertexId>(w));

  std::vector<std::vector<VertexId>> chambers;
  std::vector<VertexId> flag;
  auto extend = [&](auto&& self, VertexId v) -> void {
    flag.push_back(v);
    if (D.subspaces[v].dim() == N - 1)
      chambers.push_back(flag);
    else
      for (VertexId w : up[v]) self(self, w);
    flag.pop_back();
  };
  for (std::size_t v = 0; v < D.subspaces.size(); ++v)
    if (D.subspaces[v].dim() == 1) extend(extend, static_cast<VertexId>(v));
  D.complex = std::make_shared<const PureComplex>(PureComplex::from_facets(chambers, labels));

  FqMatrix transvection = identity_matrix(N);
  transvection.at(0, 1) = 1;
  FqMatrix cycle{N, N, std::vector<std::uint8_t>(static_cast<std::size_t>(N * N), 0)};
  for (int i = 0; i + 1 < N; ++i) cycle.at(i, i + 1) = 1;
  cycle.at(N - 1, 0) = static_cast<std::uint8_t>(primitive_root(q));
  D.generator_matrices = {transvection, cycle};
  std::vector<Permutation> gens;
  for (const auto& g : D.generator_matrices) gens.push_back(induced_permutation(D, g));
  D.group = PermGroup(D.subspaces.size(), std::move(gens));
  return D;
}

std::vector<Apartment> enumerate_apartments(const FlagComplexA& D, std::uint64_t budget) {
  const int N = D.n + 2;
  std::vector<VertexId> lines;
  for (std::size_t v = 0; v < D.subspaces.size(); ++v)
    if (D.subspaces[v].dim() == 1) lines.push_back(static_cast<VertexId>(v));

  std::vector<Apartment> out;
  std::vector<VertexId> frame;
  auto rows_of = [&](const std::vector<VertexId>& ls) {
    FqMatrix m{0, N, {}};
    for (VertexId l : ls) m = stack(m, D.subspaces[l].basis());
    return m;
  };
  auto search = [&](auto&& self, std::size_t from) -> void {
    if (static_cast<int>(frame.size()) == N) {
      if (out.size() >= budget) throw Error(ErrorCode::BudgetExceeded, "more than " + std::to_string(budget) + " frames");
      const FqMatrix basis = rows_of(frame);
      Apartment A{frame, BitVector(D.subspaces.size())};
      for (std::uint32_t mask = 1; mask + 1 < (1u << N); ++mask)
        A.vertices.set(D.vertex_of(Subspace::span(select_rows(basis, mask), D.q)));
      out.push_back(std::move(A));
      return;
    }
    for (std::size_t i = from; i < lines.size(); ++i) {
      frame.push_back(lines[i]);
      if (static_cast<int>(rank_mod(rows_of(frame), D.q)) == static_cast<int>(frame.size())) self(self, i + 1);
      frame.pop_back();
    }
  };
  search(search, 0);
  return out;
}

Subcomplex apartment_subcomplex(const FlagComplexA& D, const Apartment& A) {
  return Subcomplex::induced(*D.complex, A.vertices);
}

std::vector<std::size_t> apartments_containing(const FlagComplexA& D, const std::vector<Apartment>& apartments,
                                               std::size_t chamber, FaceRef tau) {
  return containing(apartments, face_vertices(*D.complex, chamber, tau));
}

BuildingLikeStructure building_structure(const FlagComplexA& D, std::uint64_t budget) {
  auto apartments = std::make_shared<const std::vector<Apartment>>(enumerate_apartments(D, budget));
  auto X = D.complex;
  auto family = std::make_shared<SubcomplexFamily>("apartment-intersection", [X, apartments](std::size_t s, FaceRef tau) {
    const auto hits = containing(*apartments, face_vertices(*X, s, tau));
    if (hits.empty()) throw Error(ErrorCode::Inconsistent, "no apartment contains the chamber and the face");
    BitVector common = (*apartments)[hits.front()].vertices;
    for (std::size_t a : hits) common &= (*apartments)[a].vertices;
    return Subcomplex::induced(*X, common);
  });
  GSet s = GSet::faces(*X, D.group, X->dimension(), "chambers");
  return {X, D.group, std::move(s), std::move(family)};
}

std::vector<BoundCertificate> building_bounds(const FlagComplexA& D, int k, bool use_engine, std::uint64_t budget) {
  std::vector<BoundCertificate> out{bound_epsilon2(D.n, k, factorial(D.n + 2))};
  if (use_engine) {
    const BuildingLikeStructure st = building_structure(D, budget);
    const FillingFamily chains = build_filling(st, k);
    const std::uint64_t a_k = compute_a_k(st, k);
    const ThetaReport theta = compute_theta(*D.complex, chains, k);
    for (auto& c : certified_bounds(*D.complex, k, a_k, theta)) out.push_back(std::move(c));
  }
  return out;
}

std::vector<ConjectureRow> explore_conjecture(int n, const std::vector<int>& qs, const HkOptions& options) {
  std::vector<ConjectureRow> rows;
  for (int q : qs) {
    const auto start = std::chrono::steady_clock::now();
    const FlagComplexA D = build_building_A(n, q);
    const PureComplex& X = *D.complex;
    ConjectureRow row;
    row.q = q;
    row.f0 = X.face_count(0);
    row.f1 = X.face_count(1);
    row.lower_bound = bound_epsilon2(n, n - 1, factorial(n + 2)).value;
    try {
      const ExpansionResult r = h_exact(X, n - 1, options);
      row.exact = true;
      row.value = r.value;
      row.search_size = r.search_size;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::BudgetExceeded) throw;
      row.value = singleton_upper_bound(X, n - 1, options.budget).value;
    }
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_conjecture_csv(std::ostream& out, const std::vector<ConjectureRow>& rows) {
  out << "q,f_0,f_1,exact,h_exact,upper_bound,lower_bound,cosets,seconds\n";
  for (const auto& r : rows) {
    out << r.q << ',' << r.f0 << ',' << r.f1 << ',' << (r.exact ? "true" : "false") << ','
        << (r.exact ? to_fraction_string(r.value) : "") << ',' << to_fraction_string(r.value) << ','
        << to_fraction_string(r.lower_bound) << ',' << r.search_size << ',' << r.seconds << '\n';
  }
}

DegreeDisparity degree_disparity_report(const FlagComplexA& D) {
  const PureComplex& X = *D.complex;
  DegreeDisparity report;
  std::map<int, TypeDegree> by_type;
  BigInt total = 0;
  std::size_t min_degree = SIZE_MAX;
  for (VertexId v = 0; v < X.vertex_count(); ++v) {
    const std::uint64_t c = X.cofacet_count(0, v);
    total += c;
    auto [it, fresh] = by_type.try_emplace(D.type(v), TypeDegree{D.type(v), 0, c, c});
    it->second.vertices++;
    it->second.min_c = std::min(it->second.min_c, c);
    it->second.max_c = std::max(it->second.max_c, c);
    min_degree = std::min(min_degree, X.cofaces_of(0, v).size());
  }
  for (auto& [t, row] : by_type) report.types.push_back(row);
  report.uniform_average = Rational(total, BigInt(X.vertex_count()));
  std::uint64_t lo = UINT64_MAX, hi = 0;
  for (const auto& t : report.types) {
    lo = std::min(lo, t.min_c);
    hi = std::max(hi, t.max_c);
  }
  report.regular = lo == hi;
  report.uniform_singleton = Rational(BigInt(min_degree) * X.face_count(0), BigInt(X.face_count(1)));
  report.weighted_singleton = singleton_upper_bound(X, 0).value;
  report.note = report.regular ? "all vertices have the same cofacet count; uniform and weighted norms agree on C^0"
                               : "cofacet counts differ between vertex types; uniform weights distort the norm";
  return report;
}

}  // namespace cobound
