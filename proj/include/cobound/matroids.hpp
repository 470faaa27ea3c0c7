#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cobound/building_like.hpp"
#include "cobound/complex.hpp"
#include "cobound/expansion.hpp"
#include "cobound/group.hpp"

namespace cobound {

/// X_{n,m}: n+1 parts of m vertices each; a face picks at most one vertex per
/// part. Vertex (part i, element j) has id i*m + j.
struct PartitionMatroid {
  int n = 0;
  int m = 0;
  std::shared_ptr<const PureComplex> complex;
  /// Generators of the full automorphism group S_m wr S_{n+1}.
  PermGroup automorphisms{0, {}};

  VertexId vertex(int part, int element) const { return static_cast<VertexId>(part * m + element); }
  int part_of(VertexId v) const { return static_cast<int>(v) / m; }
  int element_of(VertexId v) const { return static_cast<int>(v) % m; }
  /// The fixed transversal v_1..v_{n+1}: element 0 of every part.
  VertexId base(int part) const { return vertex(part, 0); }
};

/// Throws BudgetExceeded when m^{n+1} facets exceed `budget`.
PartitionMatroid build_partition_matroid(int n, int m, std::uint64_t budget = kDefaultBudget);

/// The explicit chains c~_tau = z_tau v_{j+1} tau'' of the partition matroid,
/// one per face tau of dimension -1..n-1, viewed as a family over a single s.
class ExplicitChainTable final : public ChainFamily {
 public:
  explicit ExplicitChainTable(const PartitionMatroid& X);

  std::size_t s_count() const override { return 1; }
  int max_level() const override { return n_ - 1; }
  std::vector<std::size_t> chain(std::size_t s, int k, std::size_t tau) const override;
  std::string source() const override { return "explicit"; }

  /// j(tau): the largest l such that parts 1..l all meet tau.
  int prefix_length(int k, std::size_t tau) const { return prefix_[k + 1][tau]; }
  /// Overwrites one chain (used to build negative controls).
  void set_chain(int k, std::size_t tau, std::vector<std::size_t> support);

 private:
  int n_;
  std::vector<std::vector<std::vector<std::size_t>>> chains_;  // [k+1][tau]
  std::vector<std::vector<int>> prefix_;
};

ExplicitChainTable explicit_chains(const PartitionMatroid& X);

/// First face tau violating boundary c~_tau = tau + sum_i c~_{tau_i}, if any.
std::optional<FaceRef> verify_claim7(const PartitionMatroid& X, const ExplicitChainTable& table);

/// First face whose support size differs from 2^{j(tau)} (or 0 when some
/// u_t = v_t with t <= j), if any.
std::optional<FaceRef> verify_support_counts(const PartitionMatroid& X, const ExplicitChainTable& table);

/// m^{k+1} sum_{j=0}^{k+1} (2(m-1)/m)^j C(n-j, n-k-1): total support of the
/// explicit k-level chains.
Rational support_total_closed_form(int n, int m, int k);

/// (1/C(n+1,k+1)) sum_{j=0}^{k+1} (2(m-1)/m)^j C(n-j, n-k-1).
Rational theta_closed_form(int n, int m, int k);

/// c_{s,tau} = s^{-1} c~_{s tau} with S the listed automorphisms.
class LiftedChainFamily final : public ChainFamily {
 public:
  LiftedChainFamily(const PartitionMatroid& X, const ExplicitChainTable& table, std::vector<Permutation> elements);

  std::size_t s_count() const override { return elements_.size(); }
  int max_level() const override { return table_->max_level(); }
  std::vector<std::size_t> chain(std::size_t s, int k, std::size_t tau) const override;
  std::string source() const override { return "explicit-lifted"; }

  const std::vector<Permutation>& elements() const noexcept { return elements_; }

 private:
  const PureComplex* complex_;
  const ExplicitChainTable* table_;
  std::vector<Permutation> elements_;
  std::vector<Permutation> inverses_;
};

/// B_{s,tau} = X[s^{-1} b u tau] with b the base transversal, for s indexed
/// like `elements`. The lifted chains c_{s,tau} are supported there.
std::shared_ptr<const SubcomplexFamily> lifted_span_family(const PartitionMatroid& X,
                                                           std::vector<Permutation> elements);

/// Checks c_{s g^{-1}, g tau} = g c_{s,tau} for every generator g, every tau and
/// the listed s (the lift is equivariant for the action g.s = s g^{-1}).
bool check_lifted_equivariance(const PartitionMatroid& X, const ExplicitChainTable& table,
                               std::span<const Permutation> sample);

/// theta_k of the lifted family via orbit averaging: lambda(eta) equals
/// (1/(w(eta)|G eta|)) sum_tau w(tau) |supp c~_tau cap G eta|, which needs only
/// the face orbits of the group.
ThetaReport theta_orbit_averaged(const PartitionMatroid& X, const ExplicitChainTable& table, int k);

struct UpperBoundCochain {
  BitChain alpha;
  Rational ratio;
  Rational coboundary_norm;
  Rational coset_norm;
  /// True when ||[alpha]|| was not enumerated and ||alpha|| is reported instead.
  bool analytic = false;
  std::size_t support_size = 0;
  std::size_t coboundary_support_size = 0;
};

/// Indicator of the k-faces whose vertices sit in pairwise distinct blocks
/// 1..k+1, after cutting every part into k+2 consecutive blocks of m/(k+2).
/// Throws DivisibilityViolated unless (k+2) | m.
UpperBoundCochain upper_bound_cochain(const PartitionMatroid& X, int k, std::uint64_t budget = kDefaultBudget);

/// Largest number of faces of supp(d alpha) containing a single k-face.
std::size_t max_coboundary_containment(const PureComplex& X, const BitChain& alpha);

/// Matroid input: ground set labels plus either independent sets or bases.
struct MatroidSpec {
  std::vector<std::string> ground_set;
  std::vector<std::vector<std::string>> sets;
  bool sets_are_bases = false;
  /// Permutations of ground-set positions.
  std::vector<std::vector<VertexId>> aut_generators;
};

struct MatroidComplex {
  std::shared_ptr<const PureComplex> complex;
  BuildingLikeStructure structure;
  /// epsilon1(n, k) for k = 0..n-1.
  std::vector<BoundCertificate> epsilon1;
};

/// Throws NotAMatroid (an induced subcomplex is not pure), NotAnAutomorphism
/// or NotBasisTransitive.
MatroidComplex build_matroid_complex(const MatroidSpec& spec, std::uint64_t seed = 1);

}  // namespace cobound
