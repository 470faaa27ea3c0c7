#include "cobound/matroids.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <unordered_map>

#include "cobound/error.hpp"

namespace cobound {

namespace {

std::string part_label(int part, int element, int parts) {
  std::string base = parts <= 26 ? std::string(1, static_cast<char>('a' + part)) : "p" + std::to_string(part + 1) + "_";
  return base + std::to_string(element + 1);
}

Permutation from_cycle(std::size_t degree, const std::vector<VertexId>& cycle) {
  auto p = Permutation::identity(degree).images();
  for (std::size_t i = 0; i < cycle.size(); ++i) p[cycle[i]] = cycle[(i + 1) % cycle.size()];
  return Permutation(std::move(p));
}

}  // namespace

PartitionMatroid build_partition_matroid(int n, int m, std::uint64_t budget) {
  if (n < 1 || m < 1) throw Error(ErrorCode::InvalidArgument, "partition matroid needs n >= 1 and m >= 1");
  BigInt facets = 1;
  for (int i = 0; i <= n; ++i) facets *= m;
  if (facets > budget) throw Error(ErrorCode::BudgetExceeded, "m^{n+1} = " + facets.str() + " facets");

  PartitionMatroid X;
  X.n = n;
  X.m = m;
  const int parts = n + 1;
  const std::size_t degree = static_cast<std::size_t>(parts * m);
  std::vector<std::string> labels;
  for (int i = 0; i < parts; ++i)
    for (int j = 0; j < m; ++j) labels.push_back(part_label(i, j, parts));

  std::vector<std::vector<VertexId>> facet_list;
  const std::uint64_t count = static_cast<std::uint64_t>(facets);
  for (std::uint64_t code = 0; code < count; ++code) {
    std::vector<VertexId> f;
    std::uint64_t c = code;
    for (int i = 0; i < parts; ++i) {
      f.push_back(X.vertex(i, static_cast<int>(c % static_cast<std::uint64_t>(m))));
      c /= static_cast<std::uint64_t>(m);
    }
    facet_list.push_back(std::move(f));
  }
  X.complex = std::make_shared<const PureComplex>(PureComplex::from_facets(facet_list, labels));

  std::vector<Permutation> gens;
  if (m >= 2) gens.push_back(from_cycle(degree, {X.vertex(0, 0), X.vertex(0, 1)}));
  if (m >= 3) {
    std::vector<VertexId> cycle;
    for (int j = 0; j < m; ++j) cycle.push_back(X.vertex(0, j));
    gens.push_back(from_cycle(degree, cycle));
  }
  auto part_map = [&](const std::vector<int>& image_of_part) {
    std::vector<VertexId> p(degree);
    for (int i = 0; i < parts; ++i)
      for (int j = 0; j < m; ++j) p[X.vertex(i, j)] = X.vertex(image_of_part[i], j);
    return Permutation(std::move(p));
  };
  if (parts >= 2) {
    std::vector<int> swap(parts);
    for (int i = 0; i < parts; ++i) swap[i] = i;
    std::swap(swap[0], swap[1]);
    gens.push_back(part_map(swap));
  }
  if (parts >= 3) {
    std::vector<int> shift(parts);
    for (int i = 0; i < parts; ++i) shift[i] = (i + 1) % parts;
    gens.push_back(part_map(shift));
  }
  X.automorphisms = PermGroup(degree, std::move(gens));
  return X;
}

// ---------------------------------------------------------------------------

ExplicitChainTable::ExplicitChainTable(const PartitionMatroid& X) : n_(X.n) {
  const PureComplex& C = *X.complex;
  for (int k = -1; k <= n_ - 1; ++k) {
    auto& level = chains_.emplace_back(C.face_count(k));
    auto& prefix = prefix_.emplace_back(C.face_count(k), 0);
    for (std::size_t t = 0; t < C.face_count(k); ++t) {
      const Simplex& tau = C.face(k, t);
      // tau is sorted by id, hence by part.
      int j = 0;
      while (j < static_cast<int>(tau.size()) && X.part_of(tau[j]) == j) ++j;
      prefix[t] = j;
      bool degenerate = false;
      for (int i = 0; i < j; ++i) degenerate |= tau[i] == X.base(i);
      if (degenerate) continue;
      std::vector<VertexId> tail(tau.begin() + j, tau.end());
      std::vector<std::size_t> support;
      for (std::uint32_t T = 0; T < (1u << j); ++T) {
        std::vector<VertexId> face = tail;
        for (int i = 0; i < j; ++i) face.push_back(T >> i & 1u ? X.base(i) : tau[i]);
        face.push_back(X.base(j));
        support.push_back(C.index_of(Simplex(std::move(face))));
      }
      std::sort(support.begin(), support.end());
      level[t] = std::move(support);
    }
  }
}

std::vector<std::size_t> ExplicitChainTable::chain(std::size_t s, int k, std::size_t tau) const {
  if (s != 0 || k < -1 || k > max_level() || tau >= chains_[k + 1].size())
    throw Error(ErrorCode::MissingChain, "explicit chain index out of range");
  return chains_[k + 1][tau];
}

void ExplicitChainTable::set_chain(int k, std::size_t tau, std::vector<std::size_t> support) {
  std::sort(support.begin(), support.end());
  chains_.at(k + 1).at(tau) = std::move(support);
}

ExplicitChainTable explicit_chains(const PartitionMatroid& X) { return ExplicitChainTable(X); }

std::optional<FaceRef> verify_claim7(const PartitionMatroid& X, const ExplicitChainTable& table) {
  if (auto bad = verify_filling(*X.complex, table)) return FaceRef{bad->k, bad->tau};
  return std::nullopt;
}

std::optional<FaceRef> verify_support_counts(const PartitionMatroid& X, const ExplicitChainTable& table) {
  const PureComplex& C = *X.complex;
  for (int k = -1; k <= table.max_level(); ++k) {
    for (std::size_t t = 0; t < C.face_count(k); ++t) {
      const int j = table.prefix_length(k, t);
      bool all_differ = true;
      for (int i = 0; i < j; ++i) all_differ &= C.face(k, t)[i] != X.base(i);
      const std::size_t expected = all_differ ? std::size_t{1} << j : 0;
      if (table.chain(0, k, t).size() != expected) return FaceRef{k, t};
    }
  }
  return std::nullopt;
}

Rational support_total_closed_form(int n, int m, int k) {
  Rational power = 1, sum = 0;
  const Rational ratio(2 * (m - 1), m);
  for (int j = 0; j <= k + 1; ++j) {
    sum += power * Rational(binomial(n - j, n - k - 1));
    power *= ratio;
  }
  BigInt mk = 1;
  for (int i = 0; i <= k; ++i) mk *= m;
  return Rational(mk) * sum;
}

Rational theta_closed_form(int n, int m, int k) {
  if (n < 1 || k < 0 || k > n - 1 || m < 1)
    throw Error(ErrorCode::InvalidArgument, "theta closed form needs 0 <= k <= n-1, m >= 1");
  Rational power = 1, sum = 0;
  const Rational ratio(2 * (m - 1), m);
  for (int j = 0; j <= k + 1; ++j) {
    sum += power * Rational(binomial(n - j, n - k - 1));
    power *= ratio;
  }
  return sum / Rational(binomial(n + 1, k + 1));
}

// ---------------------------------------------------------------------------

LiftedChainFamily::LiftedChainFamily(const PartitionMatroid& X, const ExplicitChainTable& table,
                                     std::vector<Permutation> elements)
    : complex_(X.complex.get()), table_(&table), elements_(std::move(elements)) {
  for (const auto& g : elements_) inverses_.push_back(g.inverse());
}

std::vector<std::size_t> LiftedChainFamily::chain(std::size_t s, int k, std::size_t tau) const {
  const PureComplex& C = *complex_;
  const std::size_t moved = apply_to_face(C, elements_.at(s), k, tau);
  std::vector<std::size_t> out;
  for (std::size_t eta : table_->chain(0, k, moved)) out.push_back(apply_to_face(C, inverses_[s], k + 1, eta));
  std::sort(out.begin(), out.end());
  return out;
}

std::shared_ptr<const SubcomplexFamily> lifted_span_family(const PartitionMatroid& X,
                                                           std::vector<Permutation> elements) {
  auto complex = X.complex;
  std::vector<VertexId> base;
  for (int i = 0; i <= X.n; ++i) base.push_back(X.base(i));
  auto inverses = std::make_shared<std::vector<Permutation>>();
  for (const auto& g : elements) inverses->push_back(g.inverse());
  return std::make_shared<SubcomplexFamily>("lifted-span", [complex, base, inverses](std::size_t s, FaceRef tau) {
    BitVector vertices(complex->vertex_count());
    for (VertexId v : base) vertices.set((*inverses)[s](v));
    for (VertexId v : complex->face(tau)) vertices.set(v);
    return Subcomplex::induced(*complex, vertices);
  });
}

bool check_lifted_equivariance(const PartitionMatroid& X, const ExplicitChainTable& table,
                               std::span<const Permutation> sample) {
  const PureComplex& C = *X.complex;
  const auto& gens = X.automorphisms.generators();
  std::vector<Permutation> elements(sample.begin(), sample.end());
  for (const auto& s : sample)
    for (const auto& g : gens) elements.push_back(s * g.inverse());
  LiftedChainFamily lifted(X, table, elements);
  for (std::size_t si = 0; si < sample.size(); ++si) {
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
      const std::size_t moved_s = sample.size() + si * gens.size() + gi;
      for (int k = -1; k <= table.max_level(); ++k) {
        for (std::size_t t = 0; t < C.face_count(k); ++t) {
          std::vector<std::size_t> expected;
          for (std::size_t eta : lifted.chain(si, k, t)) expected.push_back(apply_to_face(C, gens[gi], k + 1, eta));
          std::sort(expected.begin(), expected.end());
          if (lifted.chain(moved_s, k, apply_to_face(C, gens[gi], k, t)) != expected) return false;
        }
      }
    }
  }
  return true;
}

ThetaReport theta_orbit_averaged(const PartitionMatroid& X, const ExplicitChainTable& table, int k) {
  const PureComplex& C = *X.complex;
  if (k < 0 || k > table.max_level()) throw Error(ErrorCode::MissingChain, "theta level out of range");
  const auto orbit = X.automorphisms.face_orbits(C, k + 1);
  std::unordered_map<std::size_t, std::uint64_t> orbit_size, load;
  for (std::size_t o : orbit) ++orbit_size[o];
  for (std::size_t t = 0; t < C.face_count(k); ++t)
    for (std::size_t eta : table.chain(0, k, t)) load[orbit[eta]] += C.cofacet_count(k, t);

  ThetaReport report;
  report.k = k;
  report.source = "explicit-lifted (orbit-averaged)";
  report.theta = 0;
  for (std::size_t eta = 0; eta < C.face_count(k + 1); ++eta) {
    const std::size_t o = orbit[eta];
    Rational lambda{BigInt{load[o]} * C.weight_denominator(k + 1),
                    BigInt(C.weight_denominator(k)) * C.cofacet_count(k + 1, eta) * orbit_size[o]};
    report.theta = std::max(report.theta, lambda);
    report.lambda.push_back(std::move(lambda));
  }
  report.lower_bound = 1 / report.theta;
  return report;
}

// ---------------------------------------------------------------------------

UpperBoundCochain upper_bound_cochain(const PartitionMatroid& X, int k, std::uint64_t budget) {
  if (k < 0 || k > X.n - 1) throw Error(ErrorCode::InvalidArgument, "need 0 <= k <= n-1");
  if (X.m % (k + 2) != 0)
    throw Error(ErrorCode::DivisibilityViolated, std::to_string(k + 2) + " does not divide m=" + std::to_string(X.m));
  const PureComplex& C = *X.complex;
  const int block = X.m / (k + 2);
  UpperBoundCochain out;
  out.alpha = BitChain::zero(C, k);
  for (std::size_t t = 0; t < C.face_count(k); ++t) {
    std::vector<bool> used(static_cast<std::size_t>(k + 2), false);
    bool ok = true;
    for (VertexId v : C.face(k, t)) {
      const int b = X.element_of(v) / block;
      if (b > k || used[b]) {
        ok = false;
        break;
      }
      used[b] = true;
    }
    if (ok) out.alpha.bits.set(t);
  }
  const BitChain d = coboundary(C, out.alpha);
  out.support_size = out.alpha.bits.count();
  out.coboundary_support_size = d.bits.count();
  out.coboundary_norm = norm(C, d);
  try {
    out.coset_norm = coset_norm(C, out.alpha, budget).value;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::BudgetExceeded) throw;
    out.coset_norm = norm(C, out.alpha);
    out.analytic = true;
  }
  out.ratio = out.coboundary_norm / out.coset_norm;
  return out;
}

std::size_t max_coboundary_containment(const PureComplex& X, const BitChain& alpha) {
  const BitChain d = coboundary(X, alpha);
  std::size_t best = 0;
  for (std::size_t t = 0; t < X.face_count(alpha.dim); ++t) {
    std::size_t c = 0;
    for (std::size_t eta : X.cofaces_of(alpha.dim, t)) c += d.bits.test(eta);
    best = std::max(best, c);
  }
  return best;
}

// ---------------------------------------------------------------------------

namespace {

void check_induced_purity(const PureComplex& X, std::uint64_t seed) {
  const std::size_t V = X.vertex_count();
  auto check = [&](const BitVector& mask) {
    if (!Subcomplex::induced(X, mask).is_pure())
      throw Error(ErrorCode::NotAMatroid, "an induced subcomplex is not pure");
  };
  if (V <= 14) {
    for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << V); ++bits) {
      BitVector mask(V);
      for (std::size_t v = 0; v < V; ++v)
        if (bits >> v & 1u) mask.set(v);
      check(mask);
    }
    return;
  }
  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < 4096; ++trial) {
    BitVector mask(V);
    for (std::size_t v = 0; v < V; ++v)
      if (rng() & 1u) mask.set(v);
    check(mask);
  }
}

}  // namespace

MatroidComplex build_matroid_complex(const MatroidSpec& spec, std::uint64_t seed) {
  std::map<std::string, VertexId> id;
  for (const auto& label : spec.ground_set) {
    if (!id.emplace(label, static_cast<VertexId>(id.size())).second)
      throw Error(ErrorCode::InvalidArgument, "duplicate ground-set label " + label);
  }
  std::set<Simplex> given;
  for (const auto& set : spec.sets) {
    std::vector<VertexId> ids;
    for (const auto& label : set) {
      auto it = id.find(label);
      if (it == id.end()) throw Error(ErrorCode::UnknownVertex, "label " + label + " not in ground set");
      ids.push_back(it->second);
    }
    given.insert(Simplex(std::move(ids)));
  }
  if (given.empty()) throw Error(ErrorCode::EmptyInput, "no independent sets");

  std::vector<std::vector<VertexId>> facets;
  if (spec.sets_are_bases) {
    for (const auto& s : given) facets.push_back(s.vertices());
  } else {
    for (const auto& s : given) {
      bool maximal = std::none_of(given.begin(), given.end(), [&](const Simplex& o) {
        return o.size() > s.size() && s.is_face_of(o);
      });
      if (maximal) facets.push_back(s.vertices());
    }
  }
  std::size_t width = facets.front().size();
  for (const auto& f : facets)
    if (f.size() != width) throw Error(ErrorCode::NotAMatroid, "maximal independent sets of different sizes");

  auto X = std::make_shared<const PureComplex>(PureComplex::from_facets(facets, spec.ground_set));
  if (X->vertex_count() != spec.ground_set.size())
    throw Error(ErrorCode::InvalidArgument, "ground set has loops (elements in no independent set)");
  if (!spec.sets_are_bases) {
    std::size_t faces = 0;
    for (int k = 0; k <= X->dimension(); ++k) faces += X->face_count(k);
    std::size_t nonempty_given = given.size() - (given.count(Simplex{}) ? 1 : 0);
    if (nonempty_given != faces) throw Error(ErrorCode::NotAMatroid, "independent sets are not closed under subsets");
  }
  check_induced_purity(*X, seed);

  std::vector<Permutation> gens;
  for (const auto& images : spec.aut_generators) {
    if (images.size() != X->vertex_count())
      throw Error(ErrorCode::NotAnAutomorphism, "generator length differs from ground set size");
    Permutation g{std::vector<VertexId>(images)};
    if (!is_automorphism(*X, g)) throw Error(ErrorCode::NotAnAutomorphism, "generator does not preserve bases");
    gens.push_back(std::move(g));
  }
  PermGroup G(X->vertex_count(), std::move(gens));
  if (!G.is_transitive_on_faces(*X, X->dimension()))
    throw Error(ErrorCode::NotBasisTransitive, "generators are not transitive on bases");

  std::vector<BoundCertificate> eps;
  for (int k = 0; k < X->dimension(); ++k) eps.push_back(bound_epsilon1(X->dimension(), k));
  return MatroidComplex{X, matroid_span_structure(X, std::move(G)), std::move(eps)};
}

}  // namespace cobound
