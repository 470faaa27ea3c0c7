#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cobound/complex.hpp"
#include "cobound/f2.hpp"
#include "cobound/rational.hpp"

namespace cobound {

/// Default cap on any single exhaustive enumeration (2^26 states).
inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 26;

/// The coboundary space B^k = im d_{k-1} inside C^k, with a sparse basis made
/// of coboundaries of single (k-1)-faces and a complement spanned by unit
/// cochains on the non-pivot k-faces.
class CoboundarySpace {
 public:
  CoboundarySpace(const PureComplex& X, int k);

  int dim() const noexcept { return k_; }
  std::size_t rank() const noexcept { return generators_.size(); }
  /// (k-1)-faces psi whose coboundaries d 1_psi form the basis.
  const std::vector<std::size_t>& generators() const noexcept { return generators_; }
  const std::vector<std::size_t>& generator_support(std::size_t i) const { return supports_[i]; }
  /// k-faces whose indicators span a complement of B^k in C^k.
  const std::vector<std::size_t>& complement() const noexcept { return complement_; }
  bool contains(const BitChain& phi) const;

 private:
  int k_;
  std::vector<std::size_t> generators_;
  std::vector<std::vector<std::size_t>> supports_;
  std::vector<BitVector> echelon_;
  std::vector<std::size_t> pivots_;
  std::vector<std::size_t> complement_;
};

/// Sum of c(sigma) over the support; ||phi|| times the weight denominator.
std::uint64_t weighted_size(const PureComplex& X, const BitChain& phi);

/// ||phi||: total weight of the support.
Rational norm(const PureComplex& X, const BitChain& phi);

struct CosetNorm {
  Rational value;
  std::uint64_t weighted = 0;
  /// First minimizer of ||phi + b|| in Gray-code order over B^k.
  BitChain representative;
};

/// ||[phi]|| = min over b in B^k of ||phi + b||, by exhaustive Gray-code walk.
/// Throws BudgetExceeded when 2^rank(B^k) exceeds `budget`.
CosetNorm coset_norm(const PureComplex& X, const BitChain& phi, std::uint64_t budget = kDefaultBudget);
CosetNorm coset_norm(const PureComplex& X, const CoboundarySpace& space, const BitChain& phi,
                     std::uint64_t budget = kDefaultBudget);

struct HkOptions {
  std::uint64_t budget = kDefaultBudget;
  bool prune = true;
  unsigned threads = 1;
};

struct ExpansionResult {
  int k = 0;
  Rational value;
  /// Minimum-norm representative of the minimizing coset.
  BitChain witness;
  /// Number of nonzero cosets of C^k / B^k.
  std::uint64_t search_size = 0;
  bool exact = false;
  Rational coboundary_norm;  // ||d witness||
  Rational coset_norm;       // ||[witness]||
};

/// Exact k-th coboundary expansion constant by enumerating every nonzero coset
/// of C^k / B^k and minimizing ||d phi|| / ||[phi]||. Requires k < n.
ExpansionResult h_exact(const PureComplex& X, int k, const HkOptions& options = {});

enum class BoundSide { Lower, Upper };

struct BoundCertificate {
  std::string name;
  BoundSide side = BoundSide::Lower;
  Rational value;
  /// Quantities the bound was computed from, serialized ("a_k" -> "3", ...).
  std::vector<std::pair<std::string, std::string>> inputs;
};

const char* to_string(BoundSide side);

/// (n+1)/(n-k), lower bound for the n-simplex.
BoundCertificate bound_simplex(int n, int k);
/// 1 / (C(n+1,k+2) C(n+k+2,k+2)), lower bound for basis-transitive matroids.
BoundCertificate bound_epsilon1(int n, int k);
/// 1 / (C(n+1,k+2)^2 omega), lower bound for buildings of rank n+1.
BoundCertificate bound_epsilon2(int n, int k, const BigInt& weyl_order);
/// C(n+1,k+1) / sum_{j=0}^{k+1} (2(m-1)/m)^j C(n-j, n-k-1) for X_{n,m}.
BoundCertificate bound_expcolor(int n, int k, int m);
/// 1 / (C(n+1,k+2) a_k) for a building-like complex.
BoundCertificate bound_gromov(int n, int k, std::uint64_t a_k);
/// min over k-faces of ||d 1_sigma|| / ||[1_sigma]||.
BoundCertificate singleton_upper_bound(const PureComplex& X, int k, std::uint64_t budget = kDefaultBudget);

/// True when value respects the certificate's side.
bool respects(const BoundCertificate& bound, const Rational& value);

}  // namespace cobound
