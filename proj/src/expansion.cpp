#include "cobound/expansion.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <mutex>
#include <optional>
#include <thread>

#include "cobound/error.hpp"

namespace cobound {

namespace {

using u128 = unsigned __int128;

std::uint64_t checked_power_of_two(std::size_t bits, std::uint64_t budget, const char* what) {
  if (bits >= 63 || (std::uint64_t{1} << bits) > budget)
    throw Error(ErrorCode::BudgetExceeded, std::string(what) + ": 2^" + std::to_string(bits) +
                                               " exceeds the enumeration cap " + std::to_string(budget));
  return std::uint64_t{1} << bits;
}

// Ratio num/den of two weighted sizes; comparisons by cross-multiplication.
struct Ratio {
  std::uint64_t num = 0;
  std::uint64_t den = 1;
};

bool less(const Ratio& a, const Ratio& b) { return u128(a.num) * b.den < u128(b.num) * a.den; }
bool at_least(std::uint64_t num, std::uint64_t den, const Ratio& best) {
  return u128(num) * best.den >= u128(best.num) * den;
}

}  // namespace

CoboundarySpace::CoboundarySpace(const PureComplex& X, int k) : k_(k) {
  if (k < 0 || k > X.dimension())
    throw Error(ErrorCode::DimensionMismatch, "coboundary space in degree " + std::to_string(k));
  const std::size_t fk = X.face_count(k);
  BitVector is_pivot(fk);
  for (std::size_t psi = 0; psi < X.face_count(k - 1); ++psi) {
    auto cof = X.cofaces_of(k - 1, psi);
    BitVector v(fk);
    for (std::size_t s : cof) v.set(s);
    BitVector reduced = v;
    for (std::size_t i = 0; i < echelon_.size(); ++i)
      if (reduced.test(pivots_[i])) reduced ^= echelon_[i];
    if (reduced.none()) continue;
    generators_.push_back(psi);
    supports_.emplace_back(cof.begin(), cof.end());
    pivots_.push_back(reduced.find_first());
    is_pivot.set(pivots_.back());
    echelon_.push_back(std::move(reduced));
  }
  for (std::size_t s = 0; s < fk; ++s)
    if (!is_pivot.test(s)) complement_.push_back(s);
}

bool CoboundarySpace::contains(const BitChain& phi) const {
  if (phi.dim != k_) throw Error(ErrorCode::DimensionMismatch, "membership test in another degree");
  BitVector v = phi.bits;
  for (std::size_t i = 0; i < echelon_.size(); ++i)
    if (v.test(pivots_[i])) v ^= echelon_[i];
  return v.none();
}

std::uint64_t weighted_size(const PureComplex& X, const BitChain& phi) {
  if (phi.bits.size() != X.face_count(phi.dim)) throw Error(ErrorCode::DimensionMismatch, "cochain length");
  auto c = X.cofacet_counts(phi.dim);
  std::uint64_t total = 0;
  for (std::size_t i : phi.support()) total += c[i];
  return total;
}

Rational norm(const PureComplex& X, const BitChain& phi) {
  return Rational(weighted_size(X, phi), X.weight_denominator(phi.dim));
}

CosetNorm coset_norm(const PureComplex& X, const BitChain& phi, std::uint64_t budget) {
  return coset_norm(X, CoboundarySpace(X, phi.dim), phi, budget);
}

CosetNorm coset_norm(const PureComplex& X, const CoboundarySpace& space, const BitChain& phi,
                     std::uint64_t budget) {
  if (phi.dim != space.dim()) throw Error(ErrorCode::DimensionMismatch, "coset norm degree");
  const std::uint64_t states = checked_power_of_two(space.rank(), budget, "coset_norm");
  auto c = X.cofacet_counts(phi.dim);
  BitVector cur = phi.bits;
  std::uint64_t weight = weighted_size(X, phi);
  std::uint64_t best = weight;
  std::uint64_t best_t = 0;
  for (std::uint64_t t = 1; t < states; ++t) {
    const auto& supp = space.generator_support(static_cast<std::size_t>(std::countr_zero(t)));
    for (std::size_t s : supp) {
      if (cur.test(s))
        weight -= c[s];
      else
        weight += c[s];
      cur.flip(s);
    }
    if (weight < best) {
      best = weight;
      best_t = t;
    }
  }
  CosetNorm out;
  out.weighted = best;
  out.value = Rational(best, X.weight_denominator(phi.dim));
  out.representative = phi;
  const std::uint64_t gray = best_t ^ (best_t >> 1);
  for (std::size_t i = 0; i < space.rank(); ++i)
    if (gray >> i & 1u)
      for (std::size_t s : space.generator_support(i)) out.representative.bits.flip(s);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct ShardBest {
  std::optional<Ratio> ratio;
  std::uint64_t t = 0;
};

class CosetSearch {
 public:
  CosetSearch(const PureComplex& X, int k, const CoboundarySpace& space, bool prune)
      : X_(X), k_(k), space_(space), prune_(prune), ck_(X.cofacet_counts(k)), ck1_(X.cofacet_counts(k + 1)) {}

  // Enumerates cosets gray(t) for t in [begin, end), begin >= 1.
  ShardBest run(std::uint64_t begin, std::uint64_t end) const {
    BitVector phi(X_.face_count(k_));
    BitVector dphi(X_.face_count(k_ + 1));
    std::uint64_t num = 0;   // weighted size of d phi
    std::uint64_t size = 0;  // weighted size of phi
    auto flip_outer = [&](std::size_t i) {
      const std::size_t sigma = space_.complement()[i];
      if (phi.test(sigma))
        size -= ck_[sigma];
      else
        size += ck_[sigma];
      phi.flip(sigma);
      for (std::size_t eta : X_.cofaces_of(k_, sigma)) {
        if (dphi.test(eta))
          num -= ck1_[eta];
        else
          num += ck1_[eta];
        dphi.flip(eta);
      }
    };
    const std::uint64_t start = begin ^ (begin >> 1);
    for (std::size_t i = 0; i < space_.complement().size(); ++i)
      if (start >> i & 1u) flip_outer(i);

    const std::uint64_t inner_states = std::uint64_t{1} << space_.rank();
    ShardBest best;
    BitVector scratch(phi.size());
    for (std::uint64_t t = begin; t < end; ++t) {
      if (t != begin) flip_outer(static_cast<std::size_t>(std::countr_zero(t)));
      if (prune_ && best.ratio && at_least(num, size, *best.ratio)) continue;

      scratch = phi;
      std::uint64_t cur = size;
      std::uint64_t low = size;
      bool abandoned = false;
      for (std::uint64_t u = 1; u < inner_states; ++u) {
        for (std::size_t s : space_.generator_support(static_cast<std::size_t>(std::countr_zero(u)))) {
          if (scratch.test(s))
            cur -= ck_[s];
          else
            cur += ck_[s];
          scratch.flip(s);
        }
        if (cur < low) {
          low = cur;
          if (prune_ && best.ratio && at_least(num, low, *best.ratio)) {
            abandoned = true;
            break;
          }
        }
      }
      if (abandoned) continue;
      Ratio r{num, low};
      if (!best.ratio || less(r, *best.ratio)) {
        best.ratio = r;
        best.t = t;
      }
    }
    return best;
  }

 private:
  const PureComplex& X_;
  int k_;
  const CoboundarySpace& space_;
  bool prune_;
  std::span<const std::uint64_t> ck_;
  std::span<const std::uint64_t> ck1_;
};

}  // namespace

ExpansionResult h_exact(const PureComplex& X, int k, const HkOptions& options) {
  if (k < 0 || k >= X.dimension())
    throw Error(ErrorCode::DimensionMismatch, "h_k requires 0 <= k < n, got k=" + std::to_string(k));
  CoboundarySpace space(X, k);
  const std::uint64_t cosets = checked_power_of_two(space.complement().size(), options.budget, "h_exact cosets");
  checked_power_of_two(space.rank(), options.budget, "h_exact coset norm");

  CosetSearch search(X, k, space, options.prune);
  const unsigned threads = std::max(1u, options.threads);
  const std::uint64_t shard_count = std::min<std::uint64_t>(cosets - 1, std::uint64_t{threads} * 16);
  const std::uint64_t per_shard = (cosets - 1 + shard_count - 1) / shard_count;

  std::vector<ShardBest> results(shard_count);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t s = next++; s < shard_count; s = next++) {
      const std::uint64_t begin = 1 + s * per_shard;
      const std::uint64_t end = std::min(cosets, begin + per_shard);
      if (begin < end) results[s] = search.run(begin, end);
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  ShardBest best;
  for (const auto& r : results) {
    if (!r.ratio) continue;
    if (!best.ratio || less(*r.ratio, *best.ratio) ||
        (!less(*best.ratio, *r.ratio) && r.t < best.t))
      best = r;
  }
  if (!best.ratio) throw Error(ErrorCode::InvalidArgument, "no non-coboundary cochains");

  BitChain phi = BitChain::zero(X, k);
  const std::uint64_t gray = best.t ^ (best.t >> 1);
  for (std::size_t i = 0; i < space.complement().size(); ++i)
    if (gray >> i & 1u) phi.bits.set(space.complement()[i]);
  CosetNorm cn = coset_norm(X, space, phi, options.budget);

  ExpansionResult out;
  out.k = k;
  out.value = Rational(best.ratio->num, best.ratio->den) *
              Rational(X.weight_denominator(k), X.weight_denominator(k + 1));
  out.witness = std::move(cn.representative);
  out.search_size = cosets - 1;
  out.exact = true;
  out.coboundary_norm = norm(X, coboundary(X, out.witness));
  out.coset_norm = cn.value;
  return out;
}

// ---------------------------------------------------------------------------

const char* to_string(BoundSide side) { return side == BoundSide::Lower ? "lower" : "upper"; }

namespace {

void require_range(int n, int k) {
  if (n < 1 || k < 0 || k > n - 1)
    throw Error(ErrorCode::InvalidArgument,
                "bound requires 0 <= k <= n-1, got n=" + std::to_string(n) + " k=" + std::to_string(k));
}

std::string str(const BigInt& v) { return v.str(); }

}  // namespace

BoundCertificate bound_simplex(int n, int k) {
  require_range(n, k);
  return {"simplex-bound", BoundSide::Lower, Rational(n + 1, n - k), {{"n", std::to_string(n)}, {"k", std::to_string(k)}}};
}

BoundCertificate bound_epsilon1(int n, int k) {
  require_range(n, k);
  BigInt a = binomial(n + 1, k + 2);
  BigInt b = binomial(n + k + 2, k + 2);
  return {"epsilon1", BoundSide::Lower, Rational(BigInt(1), a * b),
          {{"n", std::to_string(n)}, {"k", std::to_string(k)}, {"C(n+1,k+2)", str(a)}, {"C(n+k+2,k+2)", str(b)}}};
}

BoundCertificate bound_epsilon2(int n, int k, const BigInt& weyl_order) {
  require_range(n, k);
  if (weyl_order < 1) throw Error(ErrorCode::InvalidArgument, "Weyl group order must be >= 1");
  BigInt a = binomial(n + 1, k + 2);
  return {"epsilon2", BoundSide::Lower, Rational(BigInt(1), a * a * weyl_order),
          {{"n", std::to_string(n)}, {"k", std::to_string(k)}, {"omega", str(weyl_order)}}};
}

BoundCertificate bound_expcolor(int n, int k, int m) {
  require_range(n, k);
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "part size m must be >= 1");
  const Rational ratio(2 * (m - 1), m);
  Rational sum = 0;
  Rational power = 1;
  for (int j = 0; j <= k + 1; ++j) {
    sum += power * Rational(binomial(n - j, n - k - 1));
    power *= ratio;
  }
  return {"expcolor", BoundSide::Lower, Rational(binomial(n + 1, k + 1)) / sum,
          {{"n", std::to_string(n)}, {"k", std::to_string(k)}, {"m", std::to_string(m)}, {"theta_k", to_fraction_string(sum / Rational(binomial(n + 1, k + 1)))}}};
}

BoundCertificate bound_gromov(int n, int k, std::uint64_t a_k) {
  require_range(n, k);
  if (a_k == 0) throw Error(ErrorCode::InvalidArgument, "a_k must be positive");
  return {"gromov", BoundSide::Lower, Rational(BigInt(1), binomial(n + 1, k + 2) * a_k),
          {{"n", std::to_string(n)}, {"k", std::to_string(k)}, {"a_k", std::to_string(a_k)}}};
}

BoundCertificate singleton_upper_bound(const PureComplex& X, int k, std::uint64_t budget) {
  if (k < 0 || k >= X.dimension()) throw Error(ErrorCode::DimensionMismatch, "singleton bound requires k < n");
  CoboundarySpace space(X, k);
  auto ck1 = X.cofacet_counts(k + 1);
  std::optional<Ratio> best;
  std::size_t argmin = 0;
  for (std::size_t s = 0; s < X.face_count(k); ++s) {
    std::uint64_t num = 0;
    for (std::size_t eta : X.cofaces_of(k, s)) num += ck1[eta];
    CosetNorm cn = coset_norm(X, space, BitChain::indicator(X, k, s), budget);
    if (cn.weighted == 0) throw Error(ErrorCode::InvalidArgument, "an indicator cochain is a coboundary");
    Ratio r{num, cn.weighted};
    if (!best || less(r, *best)) {
      best = r;
      argmin = s;
    }
  }
  Rational value = Rational(best->num, best->den) * Rational(X.weight_denominator(k), X.weight_denominator(k + 1));
  return {"singleton-upper", BoundSide::Upper, value, {{"k", std::to_string(k)}, {"face_index", std::to_string(argmin)}}};
}

bool respects(const BoundCertificate& bound, const Rational& value) {
  return bound.side == BoundSide::Lower ? bound.value <= value : value <= bound.value;
}

}  // namespace cobound
