#include "cobound/tester.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "cobound/error.hpp"

namespace cobound {

namespace {

constexpr std::uint64_t kShardTrials = 1u << 14;

}  // namespace

FaceSampler::FaceSampler(const PureComplex& X, int dim) : dim_(dim) {
  if (dim < 0 || dim > X.dimension()) throw Error(ErrorCode::DimensionMismatch, "sampling dimension out of range");
  std::uint64_t total = 0;
  for (std::uint64_t c : X.cofacet_counts(dim)) cumulative_.push_back(total += c);
}

std::size_t FaceSampler::sample(std::mt19937_64& rng) const {
  std::uniform_int_distribution<std::uint64_t> dist(0, cumulative_.back() - 1);
  const std::uint64_t r = dist(rng);
  return static_cast<std::size_t>(std::upper_bound(cumulative_.begin(), cumulative_.end(), r) - cumulative_.begin());
}

std::uint64_t shard_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + (index + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

bool test_once(const PureComplex& X, const BitChain& alpha, std::size_t eta, std::uint64_t* queries) {
  bool parity = false;
  for (std::size_t f : X.facets_of(alpha.dim + 1, eta)) {
    parity ^= alpha.bits.test(f);
    if (queries) ++*queries;
  }
  return parity;
}

TesterReport run_tester(const PureComplex& X, const BitChain& alpha, const TesterConfig& cfg,
                        std::optional<BoundCertificate> epsilon, std::uint64_t budget) {
  if (cfg.trials == 0) throw Error(ErrorCode::InvalidArgument, "trials must be >= 1");
  if (alpha.dim != cfg.k || alpha.bits.size() != X.face_count(cfg.k))
    throw Error(ErrorCode::DimensionMismatch, "cochain does not live in C^k");
  if (cfg.k < 0 || cfg.k >= X.dimension()) throw Error(ErrorCode::DimensionMismatch, "tester needs 0 <= k < n");

  const FaceSampler sampler(X, cfg.k + 1);
  const std::uint64_t shards = (cfg.trials + kShardTrials - 1) / kShardTrials;
  std::vector<std::uint64_t> rejections(shards, 0), queries(shards, 0);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t s; (s = next.fetch_add(1)) < shards;) {
      std::mt19937_64 rng(shard_seed(cfg.seed, s));
      const std::uint64_t count = std::min(kShardTrials, cfg.trials - s * kShardTrials);
      for (std::uint64_t t = 0; t < count; ++t) rejections[s] += test_once(X, alpha, sampler.sample(rng), &queries[s]);
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(shards)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  TesterReport r;
  r.k = cfg.k;
  r.trials = cfg.trials;
  r.seed = cfg.seed;
  for (std::uint64_t s = 0; s < shards; ++s) {
    r.rejections += rejections[s];
    r.queries += queries[s];
  }
  r.expected_rate = norm(X, coboundary(X, alpha));
  r.empirical_rate = static_cast<double>(r.rejections) / static_cast<double>(r.trials);
  const double p = r.expected_rate.convert_to<double>();
  const double N = static_cast<double>(r.trials);
  if (r.expected_rate == 0 || r.expected_rate == 1) {
    r.consistent = static_cast<double>(r.rejections) == N * p;
  } else {
    r.z_score = (static_cast<double>(r.rejections) - N * p) / std::sqrt(N * p * (1 - p));
    r.consistent = std::abs(r.z_score) <= 4.0;
  }

  try {
    r.distance = coset_norm(X, alpha, budget).value;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::BudgetExceeded) throw;
  }
  if (!epsilon) {
    try {
      const ExpansionResult h = h_exact(X, cfg.k, HkOptions{budget, true, cfg.threads});
      epsilon = BoundCertificate{"h_exact", BoundSide::Lower, h.value, {{"k", std::to_string(cfg.k)}}};
    } catch (const Error& e) {
      if (e.code() != ErrorCode::BudgetExceeded) throw;
    }
  }
  r.epsilon = epsilon;
  if (r.distance && r.epsilon) r.sound = r.expected_rate >= r.epsilon->value * *r.distance;
  return r;
}

}  // namespace cobound
