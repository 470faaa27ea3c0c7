#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "cobound/complex.hpp"
#include "cobound/expansion.hpp"
#include "cobound/f2.hpp"
#include "cobound/group.hpp"

namespace cobound {

/// Finite G-set. Each generator of G acts as a permutation of 0..size-1.
struct GSet {
  std::string description;
  std::size_t size = 0;
  std::vector<std::vector<std::size_t>> generator_actions;

  static GSet point(const PermGroup& G);
  /// The k-faces of X, acted on through the vertex permutations.
  static GSet faces(const PureComplex& X, const PermGroup& G, int k, std::string description);
  /// Every generator action is a bijection of 0..size-1.
  bool check_axioms() const;
};

/// The family (s, tau) -> B_{s,tau}, materialized on demand and memoized.
class SubcomplexFamily {
 public:
  using Provider = std::function<Subcomplex(std::size_t s, FaceRef tau)>;

  SubcomplexFamily(std::string name, Provider provider) : name_(std::move(name)), provider_(std::move(provider)) {}

  const std::string& name() const noexcept { return name_; }
  const Subcomplex& get(std::size_t s, FaceRef tau) const;
  std::size_t materialized() const;

 private:
  std::string name_;
  Provider provider_;
  mutable std::mutex mutex_;
  mutable std::map<std::tuple<std::size_t, int, std::size_t>, std::unique_ptr<Subcomplex>> memo_;
};

/// (X, S, G, B) candidate for a building-like complex.
struct BuildingLikeStructure {
  std::shared_ptr<const PureComplex> complex;
  PermGroup group;
  GSet s_set;
  std::shared_ptr<const SubcomplexFamily> family;
};

/// S a point and B_{s,tau} = X for every tau.
BuildingLikeStructure whole_complex_structure(std::shared_ptr<const PureComplex> X, PermGroup G);
/// S = X(n) and B_{s,tau} = X[s u tau], the induced subcomplex (matroid complexes).
BuildingLikeStructure matroid_span_structure(std::shared_ptr<const PureComplex> X, PermGroup G);

enum class CheckStatus { Verified, Sampled, Failed };
const char* to_string(CheckStatus status);

struct StructureReport {
  int k_max = 0;
  bool generators_are_automorphisms = true;
  bool gset_axioms = true;
  bool c1_facet_transitive = false;
  CheckStatus c2_equivariance = CheckStatus::Failed;
  std::uint64_t c2_checked = 0;
  std::uint64_t c2_total = 0;
  bool c3_homology_vanishes = false;
  bool family_contains_tau = false;
  bool family_monotone = false;
  std::uint64_t subcomplexes_checked = 0;
  std::vector<std::string> violations;

  bool passed() const;
};

struct VerifyOptions {
  /// Equivariance is checked exhaustively when generators * |S| * faces stays below this.
  std::uint64_t exhaustive_limit = 10'000'000;
  std::size_t sample_size = 100'000;
  std::uint64_t seed = 1;
};

/// Checks (C1)-(C3) plus tau-membership and codimension-one monotonicity of
/// the family for every face of dimension <= k_max. Violations are recorded,
/// never thrown.
StructureReport verify_structure(const BuildingLikeStructure& st, int k_max, const VerifyOptions& options = {});

/// A family of chains c_{s,tau} in C_{k+1}, indexed by s in S and tau in X(k).
class ChainFamily {
 public:
  virtual ~ChainFamily() = default;
  virtual std::size_t s_count() const = 0;
  /// Chains exist for -1 <= k <= max_level().
  virtual int max_level() const = 0;
  /// Sorted support of c_{s,tau} as indices into X(k+1).
  virtual std::vector<std::size_t> chain(std::size_t s, int k, std::size_t tau) const = 0;
  virtual std::string source() const = 0;
};

/// Stored chains, built by the filling engine or supplied explicitly.
class FillingFamily final : public ChainFamily {
 public:
  FillingFamily(const PureComplex& X, std::size_t s_count, int max_level, std::string source);

  std::size_t s_count() const override { return s_count_; }
  int max_level() const override { return max_level_; }
  std::vector<std::size_t> chain(std::size_t s, int k, std::size_t tau) const override;
  std::string source() const override { return source_; }

  void set_chain(std::size_t s, int k, std::size_t tau, std::vector<std::size_t> support);

 private:
  std::size_t slot(std::size_t s, int k, std::size_t tau) const;

  const PureComplex* complex_;
  std::size_t s_count_;
  int max_level_;
  std::string source_;
  std::vector<std::vector<std::vector<std::size_t>>> chains_;  // [k+1][s * f_k + tau]
  std::vector<std::vector<bool>> present_;
};

/// Inductive filling: c_{s,*} is the least vertex of B_{s,*}; for tau in X(k)
/// solves boundary c = tau + sum_i c_{s,tau_i} inside B_{s,tau}. Throws
/// FillFailed when a cycle does not bound in B_{s,tau}.
FillingFamily build_filling(const BuildingLikeStructure& st, int max_level);

struct FillingViolation {
  std::size_t s;
  int k;
  std::size_t tau;
};

/// Checks boundary c_{s,tau} = tau + sum_i c_{s,tau_i} for every stored chain.
std::optional<FillingViolation> verify_filling(const PureComplex& X, const ChainFamily& chains);
/// Checks supp(c_{s,tau}) lies in B_{s,tau}.
std::optional<FillingViolation> verify_support(const PureComplex& X, const ChainFamily& chains,
                                               const SubcomplexFamily& family);

/// (iota_s alpha)(tau) = alpha(c_{s,tau}) for tau in X(k-1); alpha in C^k, 0 <= k.
BitChain contraction(const PureComplex& X, const ChainFamily& chains, std::size_t s, const BitChain& alpha);

/// d iota_s alpha + iota_s d alpha == alpha, for alpha in C^k with 0 <= k <= n-1.
bool check_homotopy(const PureComplex& X, const ChainFamily& chains, std::size_t s, const BitChain& alpha);

/// a_k = max |G eta cap B_{s,tau}(k+1)| over eta in X(k+1), (s,tau) in S x X(k).
std::uint64_t compute_a_k(const BuildingLikeStructure& st, int k);

struct ThetaReport {
  int k = 0;
  std::string source;
  /// lambda(eta) for every (k+1)-face.
  std::vector<Rational> lambda;
  /// lambda-tilde(eta); empty when no family was supplied.
  std::vector<Rational> lambda_tilde;
  Rational theta;
  /// Certified h_k >= 1 / theta.
  Rational lower_bound;
};

/// Literal summation over S x X(k). `family`, when given, also yields lambda-tilde.
ThetaReport compute_theta(const PureComplex& X, const ChainFamily& chains, int k,
                          const SubcomplexFamily* family = nullptr);

/// Degree certificate 1/(C(n+1,k+2) a_k) and the theta certificate 1/theta_k.
std::vector<BoundCertificate> certified_bounds(const PureComplex& X, int k, std::uint64_t a_k,
                                               const ThetaReport& theta);

}  // namespace cobound
