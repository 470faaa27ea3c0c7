#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace cobound {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Binomial coefficient C(n, k); zero outside 0 <= k <= n.
BigInt binomial(std::int64_t n, std::int64_t k);

std::uint64_t binomial_u64(std::int64_t n, std::int64_t k);

BigInt factorial(std::int64_t n);

/// "p/q" with an explicit denominator, also for integers ("2/1").
std::string to_fraction_string(const Rational& r);

/// Accepts "p/q" or "p".
Rational parse_fraction(const std::string& s);

}  // namespace cobound
