#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cobound/complex.hpp"
#include "cobound/expansion.hpp"
#include "cobound/f2.hpp"

namespace cobound {

struct TesterConfig {
  int k = 0;
  std::uint64_t trials = 1;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

/// Draws (k+1)-faces with probability c(eta) / sum c, i.e. by weight.
class FaceSampler {
 public:
  FaceSampler(const PureComplex& X, int dim);

  int dim() const noexcept { return dim_; }
  std::size_t sample(std::mt19937_64& rng) const;

 private:
  int dim_;
  std::vector<std::uint64_t> cumulative_;
};

/// Seed of shard `index`, derived by SplitMix64.
std::uint64_t shard_seed(std::uint64_t seed, std::uint64_t index);

/// Reads alpha on the k+2 facets of eta and rejects on odd parity.
/// `queries`, when given, is incremented once per coordinate read.
bool test_once(const PureComplex& X, const BitChain& alpha, std::size_t eta, std::uint64_t* queries = nullptr);

struct TesterReport {
  int k = 0;
  std::uint64_t trials = 0;
  std::uint64_t rejections = 0;
  std::uint64_t queries = 0;
  std::uint64_t seed = 0;
  std::string rng = "mt19937_64/splitmix64-shards";
  /// Exact rejection probability ||d alpha||.
  Rational expected_rate;
  double empirical_rate = 0;
  /// (rejections - N p) / sqrt(N p (1-p)); zero when p is 0 or 1.
  double z_score = 0;
  bool consistent = false;
  /// ||[alpha]|| when the coset enumeration fits the budget.
  std::optional<Rational> distance;
  std::optional<BoundCertificate> epsilon;
  /// ||d alpha|| >= epsilon ||[alpha]||, when both are known.
  std::optional<bool> sound;
};

/// Runs `cfg.trials` independent tests. Without an `epsilon` certificate the
/// exact h_k is used when it fits the budget.
TesterReport run_tester(const PureComplex& X, const BitChain& alpha, const TesterConfig& cfg,
                        std::optional<BoundCertificate> epsilon = std::nullopt,
                        std::uint64_t budget = kDefaultBudget);

}  // namespace cobound
