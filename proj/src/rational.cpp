#include "cobound/rational.hpp"

#include "cobound/error.hpp"

namespace cobound {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::NotPure: return "NotPure";
    case ErrorCode::FaceNotFound: return "FaceNotFound";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::Inconsistent: return "Inconsistent";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::FillFailed: return "FillFailed";
    case ErrorCode::MissingChain: return "MissingChain";
    case ErrorCode::DivisibilityViolated: return "DivisibilityViolated";
    case ErrorCode::NotAMatroid: return "NotAMatroid";
    case ErrorCode::NotBasisTransitive: return "NotBasisTransitive";
    case ErrorCode::NotAnAutomorphism: return "NotAnAutomorphism";
    case ErrorCode::NonPrimeField: return "NonPrimeField";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

BigInt binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

std::uint64_t binomial_u64(std::int64_t n, std::int64_t k) {
  BigInt b = binomial(n, k);
  if (b > std::numeric_limits<std::uint64_t>::max())
    throw Error(ErrorCode::BudgetExceeded, "binomial overflows 64 bits");
  return static_cast<std::uint64_t>(b);
}

BigInt factorial(std::int64_t n) {
  BigInt r = 1;
  for (std::int64_t i = 2; i <= n; ++i) r *= i;
  return r;
}

std::string to_fraction_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

Rational parse_fraction(const std::string& s) {
  try {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(BigInt(s));
    BigInt p(s.substr(0, slash));
    BigInt q(s.substr(slash + 1));
    if (q == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + s + "'");
    return Rational(p, q);
  } catch (const std::runtime_error& e) {
    if (dynamic_cast<const Error*>(&e)) throw;
    throw Error(ErrorCode::ParseError, "bad fraction '" + s + "'");
  }
}

}  // namespace cobound
