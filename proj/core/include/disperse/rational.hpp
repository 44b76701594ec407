#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace disperse {

/// Arbitrary-precision signed integer.
using BigInt = boost::multiprecision::cpp_int;

/// Exact fraction, always stored in lowest terms with a positive denominator.
using Rational = boost::multiprecision::cpp_rational;

inline BigInt numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

double to_double(const Rational& q);

/// Largest integer <= q.
BigInt floor(const Rational& q);
/// Smallest integer >= q.
BigInt ceil(const Rational& q);

BigInt pow(const BigInt& base, unsigned exponent);
std::uint64_t ipow(std::uint64_t base, unsigned exponent);

/// `num/den` (or a bare integer) formatting used by the point-set files.
std::string format_rational(const Rational& q);

/// Parses `num/den` or an integer literal. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// Parses a decimal literal exactly, e.g. "0.125" -> 1/8, "1e-3" -> 1/1000.
Rational parse_decimal_exact(std::string_view text);

/// Hash on the normalized representation.
struct RationalHash {
  std::size_t operator()(const Rational& q) const;
};

}  // namespace disperse
