#include "cobound/building_like.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <unordered_map>

#include "cobound/error.hpp"

namespace cobound {

namespace {

constexpr std::size_t kMaxViolations = 64;

std::string describe_face(const PureComplex& X, int k, std::size_t i) {
  std::ostringstream out;
  out << "{";
  const Simplex& s = X.face(k, i);
  for (std::size_t j = 0; j < s.size(); ++j) out << (j ? " " : "") << X.label(s[j]);
  out << "}";
  return out.str();
}

void record(StructureReport& report, std::string message) {
  if (report.violations.size() < kMaxViolations) report.violations.push_back(std::move(message));
}

// Face permutations of one generator for dimensions -1..n.
std::vector<std::vector<std::size_t>> all_face_permutations(const PureComplex& X, const Permutation& g) {
  std::vector<std::vector<std::size_t>> out;
  out.push_back({0});
  for (int k = 0; k <= X.dimension(); ++k) out.push_back(face_permutation(X, g, k));
  return out;
}

Subcomplex image(const Subcomplex& B, const std::vector<std::vector<std::size_t>>& perms) {
  const PureComplex& X = B.parent();
  std::vector<FaceRef> faces;
  for (int k = -1; k <= X.dimension(); ++k)
    for (std::size_t i : B.face_indices(k)) faces.push_back({k, perms[k + 1][i]});
  return Subcomplex::closure(X, faces);
}

}  // namespace

GSet GSet::point(const PermGroup& G) {
  GSet s;
  s.description = "point";
  s.size = 1;
  s.generator_actions.assign(G.generators().size(), std::vector<std::size_t>{0});
  return s;
}

GSet GSet::faces(const PureComplex& X, const PermGroup& G, int k, std::string description) {
  GSet s;
  s.description = std::move(description);
  s.size = X.face_count(k);
  for (const auto& g : G.generators()) s.generator_actions.push_back(face_permutation(X, g, k));
  return s;
}

bool GSet::check_axioms() const {
  for (const auto& action : generator_actions) {
    if (action.size() != size) return false;
    std::vector<bool> hit(size, false);
    for (std::size_t t : action) {
      if (t >= size || hit[t]) return false;
      hit[t] = true;
    }
  }
  return true;
}

const Subcomplex& SubcomplexFamily::get(std::size_t s, FaceRef tau) const {
  const auto key = std::make_tuple(s, tau.dim, tau.index);
  {
    std::lock_guard lock(mutex_);
    if (auto it = memo_.find(key); it != memo_.end()) return *it->second;
  }
  auto built = std::make_unique<Subcomplex>(provider_(s, tau));
  std::lock_guard lock(mutex_);
  auto [it, inserted] = memo_.emplace(key, std::move(built));
  return *it->second;
}

std::size_t SubcomplexFamily::materialized() const {
  std::lock_guard lock(mutex_);
  return memo_.size();
}

BuildingLikeStructure whole_complex_structure(std::shared_ptr<const PureComplex> X, PermGroup G) {
  auto family = std::make_shared<SubcomplexFamily>(
      "whole-complex", [X](std::size_t, FaceRef) { return Subcomplex::full(*X); });
  GSet s = GSet::point(G);
  return {std::move(X), std::move(G), std::move(s), std::move(family)};
}

BuildingLikeStructure matroid_span_structure(std::shared_ptr<const PureComplex> X, PermGroup G) {
  auto family = std::make_shared<SubcomplexFamily>("matroid-span", [X](std::size_t s, FaceRef tau) {
    BitVector vertices(X->vertex_count());
    for (VertexId v : X->face(X->dimension(), s)) vertices.set(v);
    for (VertexId v : X->face(tau)) vertices.set(v);
    return Subcomplex::induced(*X, vertices);
  });
  GSet s = GSet::faces(*X, G, X->dimension(), "facets");
  return {std::move(X), std::move(G), std::move(s), std::move(family)};
}

const char* to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::Verified: return "verified";
    case CheckStatus::Sampled: return "sampled";
    case CheckStatus::Failed: return "failed";
  }
  return "failed";
}

bool StructureReport::passed() const {
  return generators_are_automorphisms && gset_axioms && c1_facet_transitive &&
         c2_equivariance != CheckStatus::Failed && c3_homology_vanishes && family_contains_tau && family_monotone;
}

StructureReport verify_structure(const BuildingLikeStructure& st, int k_max, const VerifyOptions& options) {
  const PureComplex& X = *st.complex;
  const int n = X.dimension();
  StructureReport report;
  report.k_max = std::min(k_max, n - 1);

  for (std::size_t gi = 0; gi < st.group.generators().size(); ++gi) {
    if (!is_automorphism(X, st.group.generators()[gi])) {
      report.generators_are_automorphisms = false;
      record(report, "generator " + std::to_string(gi) + " is not a simplicial automorphism");
    }
  }
  if (!report.generators_are_automorphisms) return report;

  report.gset_axioms = st.s_set.check_axioms() && st.s_set.generator_actions.size() == st.group.generators().size();
  if (!report.gset_axioms) record(report, "S action is not a permutation action of the generators");

  report.c1_facet_transitive = st.group.is_transitive_on_faces(X, n);
  if (!report.c1_facet_transitive) {
    auto orbits = st.group.face_orbits(X, n);
    std::size_t reached = static_cast<std::size_t>(std::count(orbits.begin(), orbits.end(), std::size_t{0}));
    record(report, "(C1) orbit of the first facet covers " + std::to_string(reached) + " of " +
                       std::to_string(X.face_count(n)) + " facets");
  }

  // (C2) equivariance g B_{s,tau} = B_{gs, g tau} on generators.
  std::vector<std::vector<std::vector<std::size_t>>> perms;
  for (const auto& g : st.group.generators()) perms.push_back(all_face_permutations(X, g));
  std::uint64_t faces_below_top = 0;
  for (int k = -1; k < n; ++k) faces_below_top += X.face_count(k);
  report.c2_total = perms.size() * st.s_set.size * faces_below_top;
  auto check_c2 = [&](std::size_t gi, std::size_t s, FaceRef tau) {
    const Subcomplex moved = image(st.family->get(s, tau), perms[gi]);
    const std::size_t gs = st.s_set.generator_actions[gi][s];
    const FaceRef gtau{tau.dim, perms[gi][tau.dim + 1][tau.index]};
    ++report.c2_checked;
    if (!(moved == st.family->get(gs, gtau))) {
      record(report, "(C2) generator " + std::to_string(gi) + " at s=" + std::to_string(s) + " tau=" +
                         describe_face(X, tau.dim, tau.index));
      return false;
    }
    return true;
  };
  bool c2_ok = report.gset_axioms;
  if (c2_ok) {
    if (report.c2_total <= options.exhaustive_limit) {
      for (std::size_t gi = 0; gi < perms.size(); ++gi)
        for (std::size_t s = 0; s < st.s_set.size; ++s)
          for (int k = -1; k < n; ++k)
            for (std::size_t t = 0; t < X.face_count(k); ++t) c2_ok = check_c2(gi, s, {k, t}) && c2_ok;
      report.c2_equivariance = c2_ok ? CheckStatus::Verified : CheckStatus::Failed;
    } else {
      std::mt19937_64 rng(options.seed);
      for (std::size_t i = 0; i < options.sample_size && !perms.empty(); ++i) {
        std::size_t gi = rng() % perms.size();
        std::size_t s = rng() % st.s_set.size;
        int k = static_cast<int>(rng() % static_cast<std::uint64_t>(n + 1)) - 1;
        std::size_t t = rng() % X.face_count(k);
        c2_ok = check_c2(gi, s, {k, t}) && c2_ok;
      }
      report.c2_equivariance = c2_ok ? CheckStatus::Sampled : CheckStatus::Failed;
    }
  }

  // tau in B_{s,tau} and B_{s,tau_i} inside B_{s,tau}.
  report.family_contains_tau = true;
  report.family_monotone = true;
  for (std::size_t s = 0; s < st.s_set.size; ++s) {
    for (int k = -1; k < n; ++k) {
      for (std::size_t t = 0; t < X.face_count(k); ++t) {
        const Subcomplex& B = st.family->get(s, {k, t});
        if (!B.contains(k, t)) {
          report.family_contains_tau = false;
          record(report, "tau=" + describe_face(X, k, t) + " not in B_{s,tau} for s=" + std::to_string(s));
        }
        if (k < 0) continue;
        for (std::size_t sub : X.facets_of(k, t)) {
          if (!st.family->get(s, {k - 1, sub}).is_subset_of(B)) {
            report.family_monotone = false;
            record(report, "B_{s,tau_i} not inside B_{s,tau} for s=" + std::to_string(s) +
                               " tau=" + describe_face(X, k, t));
          }
        }
      }
    }
  }

  // (C3) vanishing reduced homology up to dim tau.
  report.c3_homology_vanishes = true;
  for (int k = -1; k <= report.k_max; ++k) {
    for (std::size_t s = 0; s < st.s_set.size; ++s) {
      for (std::size_t t = 0; t < X.face_count(k); ++t) {
        const auto betti = reduced_betti_numbers(st.family->get(s, {k, t}));
        ++report.subcomplexes_checked;
        for (int i = -1; i <= k; ++i) {
          if (betti[i + 1] != 0) {
            report.c3_homology_vanishes = false;
            record(report, "(C3) H_" + std::to_string(i) + "(B_{s,tau}) != 0 for s=" + std::to_string(s) +
                               " tau=" + describe_face(X, k, t));
            break;
          }
        }
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------

FillingFamily::FillingFamily(const PureComplex& X, std::size_t s_count, int max_level, std::string source)
    : complex_(&X), s_count_(s_count), max_level_(max_level), source_(std::move(source)) {
  if (max_level < -1 || max_level >= X.dimension())
    throw Error(ErrorCode::DimensionMismatch, "filling level " + std::to_string(max_level));
  for (int k = -1; k <= max_level; ++k) {
    chains_.emplace_back(s_count * X.face_count(k));
    present_.emplace_back(s_count * X.face_count(k), false);
  }
}

std::size_t FillingFamily::slot(std::size_t s, int k, std::size_t tau) const {
  if (k < -1 || k > max_level_ || s >= s_count_ || tau >= complex_->face_count(k))
    throw Error(ErrorCode::MissingChain, "no chain for s=" + std::to_string(s) + " k=" + std::to_string(k));
  return s * complex_->face_count(k) + tau;
}

std::vector<std::size_t> FillingFamily::chain(std::size_t s, int k, std::size_t tau) const {
  const std::size_t i = slot(s, k, tau);
  if (!present_[k + 1][i])
    throw Error(ErrorCode::MissingChain, "chain not built for s=" + std::to_string(s) + " k=" + std::to_string(k));
  return chains_[k + 1][i];
}

void FillingFamily::set_chain(std::size_t s, int k, std::size_t tau, std::vector<std::size_t> support) {
  const std::size_t i = slot(s, k, tau);
  std::sort(support.begin(), support.end());
  chains_[k + 1][i] = std::move(support);
  present_[k + 1][i] = true;
}

FillingFamily build_filling(const BuildingLikeStructure& st, int max_level) {
  const PureComplex& X = *st.complex;
  FillingFamily out(X, st.s_set.size, max_level, "engine");
  for (std::size_t s = 0; s < st.s_set.size; ++s) {
    const Subcomplex& base = st.family->get(s, {-1, 0});
    const std::size_t v = base.mask(0).find_first();
    if (v == X.vertex_count())
      throw Error(ErrorCode::FillFailed, "B_{s,*} has no vertex for s=" + std::to_string(s));
    out.set_chain(s, -1, 0, {v});

    for (int k = 0; k <= max_level; ++k) {
      for (std::size_t t = 0; t < X.face_count(k); ++t) {
        BitChain z = BitChain::indicator(X, k, t);
        for (std::size_t sub : X.facets_of(k, t))
          for (std::size_t eta : out.chain(s, k - 1, sub)) z.bits.flip(eta);
        if (!boundary(X, z).is_zero())
          throw Error(ErrorCode::FillFailed, "tau + sum c_{s,tau_i} is not a cycle at s=" + std::to_string(s));

        const Subcomplex& B = st.family->get(s, {k, t});
        if (!z.bits.is_subset_of(B.mask(k)))
          throw Error(ErrorCode::FillFailed, "cycle leaves B_{s,tau} at s=" + std::to_string(s) +
                                                 " tau=" + describe_face(X, k, t));
        const auto rows = B.face_indices(k);
        const auto cols = B.face_indices(k + 1);
        BitVector rhs(rows.size());
        for (std::size_t r = 0; r < rows.size(); ++r)
          if (z.bits.test(rows[r])) rhs.set(r);
        SolveResult solved = rank_and_solve(boundary_matrix(B, k + 1), &rhs);
        if (!solved.consistent)
          throw Error(ErrorCode::FillFailed, "H_" + std::to_string(k) + "(B_{s,tau}) != 0 at s=" +
                                                 std::to_string(s) + " tau=" + describe_face(X, k, t));
        std::vector<std::size_t> support;
        for (std::size_t c : solved.solution->indices()) support.push_back(cols[c]);
        out.set_chain(s, k, t, std::move(support));
      }
    }
  }
  if (auto bad = verify_filling(X, out))
    throw Error(ErrorCode::FillFailed, "engine produced a chain violating the filling identity");
  return out;
}

std::optional<FillingViolation> verify_filling(const PureComplex& X, const ChainFamily& chains) {
  for (std::size_t s = 0; s < chains.s_count(); ++s) {
    for (int k = -1; k <= chains.max_level(); ++k) {
      for (std::size_t t = 0; t < X.face_count(k); ++t) {
        BitChain lhs = boundary(X, BitChain::from_faces(X, k + 1, chains.chain(s, k, t)));
        BitChain rhs = BitChain::indicator(X, k, t);
        for (std::size_t sub : X.facets_of(k, t))
          for (std::size_t eta : chains.chain(s, k - 1, sub)) rhs.bits.flip(eta);
        if (lhs != rhs) return FillingViolation{s, k, t};
      }
    }
  }
  return std::nullopt;
}

std::optional<FillingViolation> verify_support(const PureComplex& X, const ChainFamily& chains,
                                               const SubcomplexFamily& family) {
  for (std::size_t s = 0; s < chains.s_count(); ++s)
    for (int k = -1; k <= chains.max_level(); ++k)
      for (std::size_t t = 0; t < X.face_count(k); ++t) {
        const Subcomplex& B = family.get(s, {k, t});
        for (std::size_t eta : chains.chain(s, k, t))
          if (!B.contains(k + 1, eta)) return FillingViolation{s, k, t};
      }
  return std::nullopt;
}

BitChain contraction(const PureComplex& X, const ChainFamily& chains, std::size_t s, const BitChain& alpha) {
  const int k = alpha.dim;
  if (k < 0 || k - 1 > chains.max_level())
    throw Error(ErrorCode::MissingChain, "contraction of a " + std::to_string(k) + "-cochain needs level " +
                                             std::to_string(k - 1) + " chains");
  if (alpha.bits.size() != X.face_count(k)) throw Error(ErrorCode::DimensionMismatch, "cochain length");
  BitChain out = BitChain::zero(X, k - 1);
  for (std::size_t t = 0; t < X.face_count(k - 1); ++t) {
    bool parity = false;
    for (std::size_t eta : chains.chain(s, k - 1, t)) parity ^= alpha.bits.test(eta);
    if (parity) out.bits.set(t);
  }
  return out;
}

bool check_homotopy(const PureComplex& X, const ChainFamily& chains, std::size_t s, const BitChain& alpha) {
  if (alpha.dim < 0 || alpha.dim >= X.dimension())
    throw Error(ErrorCode::DimensionMismatch, "homotopy identity needs 0 <= k <= n-1");
  BitChain lhs = coboundary(X, contraction(X, chains, s, alpha));
  lhs += contraction(X, chains, s, coboundary(X, alpha));
  return lhs == alpha;
}

std::uint64_t compute_a_k(const BuildingLikeStructure& st, int k) {
  const PureComplex& X = *st.complex;
  if (k < 0 || k >= X.dimension()) throw Error(ErrorCode::DimensionMismatch, "a_k requires 0 <= k < n");
  const auto orbit = st.group.face_orbits(X, k + 1);
  std::unordered_map<std::size_t, std::uint64_t> counts;
  std::uint64_t best = 0;
  for (std::size_t s = 0; s < st.s_set.size; ++s) {
    for (std::size_t t = 0; t < X.face_count(k); ++t) {
      counts.clear();
      for (std::size_t eta : st.family->get(s, {k, t}).face_indices(k + 1))
        best = std::max(best, ++counts[orbit[eta]]);
    }
  }
  return best;
}

ThetaReport compute_theta(const PureComplex& X, const ChainFamily& chains, int k, const SubcomplexFamily* family) {
  if (k < 0 || k > chains.max_level() || k >= X.dimension())
    throw Error(ErrorCode::MissingChain, "theta_" + std::to_string(k) + " needs level-k chains");
  const std::size_t f1 = X.face_count(k + 1);
  std::vector<std::uint64_t> acc(f1, 0), acc_tilde(f1, 0);
  auto ck = X.cofacet_counts(k);
  for (std::size_t s = 0; s < chains.s_count(); ++s) {
    for (std::size_t t = 0; t < X.face_count(k); ++t) {
      for (std::size_t eta : chains.chain(s, k, t)) acc[eta] += ck[t];
      if (family)
        for (std::size_t eta : family->get(s, {k, t}).face_indices(k + 1)) acc_tilde[eta] += ck[t];
    }
  }
  ThetaReport report;
  report.k = k;
  report.source = chains.source();
  const Rational scale(X.weight_denominator(k + 1),
                       BigInt(chains.s_count()) * BigInt(X.weight_denominator(k)));
  report.theta = 0;
  for (std::size_t eta = 0; eta < f1; ++eta) {
    Rational lambda = scale * Rational(acc[eta], X.cofacet_count(k + 1, eta));
    report.theta = std::max(report.theta, lambda);
    report.lambda.push_back(std::move(lambda));
    if (family) report.lambda_tilde.push_back(scale * Rational(acc_tilde[eta], X.cofacet_count(k + 1, eta)));
  }
  if (report.theta == 0) throw Error(ErrorCode::InvalidArgument, "theta vanished; chains are empty");
  report.lower_bound = 1 / report.theta;
  return report;
}

std::vector<BoundCertificate> certified_bounds(const PureComplex& X, int k, std::uint64_t a_k,
                                               const ThetaReport& theta) {
  std::vector<BoundCertificate> out;
  out.push_back(bound_gromov(X.dimension(), k, a_k));
  out.push_back({"theta", BoundSide::Lower, theta.lower_bound,
                 {{"k", std::to_string(k)}, {"theta_k", to_fraction_string(theta.theta)}, {"chains", theta.source}}});
  return out;
}

}  // namespace cobound
