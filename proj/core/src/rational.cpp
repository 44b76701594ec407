#include "disperse/rational.hpp"

#include <cctype>
#include <functional>
#include <stdexcept>

#include "disperse/error.hpp"

namespace disperse {

std::string_view to_string(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::invalid_argument: return "invalid_argument";
    case ErrorCategory::dimension_mismatch: return "dimension_mismatch";
    case ErrorCategory::precondition: return "precondition";
    case ErrorCategory::resource_limit: return "resource_limit";
    case ErrorCategory::parse: return "parse";
    case ErrorCategory::out_of_range: return "out_of_range";
    case ErrorCategory::io: return "io";
    case ErrorCategory::internal: return "internal";
  }
  return "unknown";
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

BigInt floor(const Rational& q) {
  BigInt num = numerator(q);
  BigInt den = denominator(q);
  BigInt quot = num / den;  // truncates toward zero
  if (num < 0 && quot * den != num) --quot;
  return quot;
}

BigInt ceil(const Rational& q) {
  BigInt f = floor(q);
  return f * denominator(q) == numerator(q) ? f : f + 1;
}

BigInt pow(const BigInt& base, unsigned exponent) {
  return boost::multiprecision::pow(base, exponent);
}

std::uint64_t ipow(std::uint64_t base, unsigned exponent) {
  std::uint64_t result = 1;
  for (unsigned i = 0; i < exponent; ++i) result *= base;
  return result;
}

std::string format_rational(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

// Leading zeros are stripped because the BigInt parser reads them as octal.
BigInt parse_int(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
  const auto nz = s.find_first_not_of('0');
  BigInt v{nz == std::string_view::npos ? std::string("0") : std::string(s.substr(nz))};
  return negative ? BigInt(-v) : v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  BigInt num = parse_int(text.substr(0, slash));
  BigInt den = parse_int(text.substr(slash + 1));
  if (den <= 0) throw std::invalid_argument("denominator must be positive");
  return Rational(num, den);
}

Rational parse_decimal_exact(std::string_view text) {
  std::string_view mantissa = text;
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    exponent = std::stol(std::string(text.substr(e + 1)));
  }
  bool negative = false;
  if (!mantissa.empty() && (mantissa.front() == '-' || mantissa.front() == '+')) {
    negative = mantissa.front() == '-';
    mantissa.remove_prefix(1);
  }
  std::string digits;
  long frac_digits = 0;
  auto dot = mantissa.find('.');
  if (dot == std::string_view::npos) {
    digits = std::string(mantissa);
  } else {
    digits = std::string(mantissa.substr(0, dot)) + std::string(mantissa.substr(dot + 1));
    frac_digits = static_cast<long>(mantissa.size() - dot - 1);
  }
  if (!all_digits(digits)) throw std::invalid_argument("not a decimal: '" + std::string(text) + "'");
  const auto nz = digits.find_first_not_of('0');
  BigInt num{nz == std::string::npos ? std::string("0") : digits.substr(nz)};
  long shift = exponent - frac_digits;
  Rational value = shift >= 0 ? Rational(num * pow(BigInt(10), static_cast<unsigned>(shift)))
                              : Rational(num, pow(BigInt(10), static_cast<unsigned>(-shift)));
  return negative ? Rational(-value) : value;
}

std::size_t RationalHash::operator()(const Rational& q) const {
  std::hash<std::string> h;
  return h(numerator(q).str()) * 1000003u ^ h(denominator(q).str());
}

}  // namespace disperse
