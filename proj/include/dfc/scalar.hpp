#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <system_error>

#include "dfc/errors.hpp"

namespace dfc {

using BigInt = boost::multiprecision::cpp_int;

/// Arbitrary-precision rational with plain value semantics (no expression
/// templates), so it behaves like a numeric type in generic code.
using Rational = boost::multiprecision::number<
    boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

/// Everything the generic operator and identity code needs to know about a
/// scalar type. Two instantiations exist: Rational (exact) and double (float).
template <typename S>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
  static constexpr bool is_exact = true;
  static constexpr const char* mode_name = "exact";

  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static Rational from_long(long v) { return Rational(v); }

  // den must be nonzero; sign is carried by num.
  static Rational ratio(long num, long den) {
    if (den == 0) throw InvalidArgument("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    return Rational(BigInt(num), BigInt(den));
  }

  static Rational abs(const Rational& v) { return v < 0 ? Rational(-v) : v; }
  static bool is_integer(const Rational& v) { return denominator(v) == 1; }

  static long to_long(const Rational& v) {
    if (!is_integer(v)) throw InvalidArgument("rational is not an integer: " + v.str());
    return numerator(v).convert_to<long>();
  }

  static double to_double(const Rational& v) { return v.convert_to<double>(); }
  static bool is_finite(const Rational&) { return true; }
};

template <>
struct scalar_traits<double> {
  static constexpr bool is_exact = false;
  static constexpr const char* mode_name = "float";

  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static double from_long(long v) { return static_cast<double>(v); }

  static double ratio(long num, long den) {
    if (den == 0) throw InvalidArgument("rational with zero denominator");
    return static_cast<double>(num) / static_cast<double>(den);
  }

  static double abs(double v) { return std::fabs(v); }

  static bool is_integer(double v) {
    return std::isfinite(v) && std::floor(v) == v;
  }

  static long to_long(double v) {
    if (!is_integer(v)) throw InvalidArgument("value is not an integer");
    return static_cast<long>(v);
  }

  static double to_double(double v) { return v; }
  static bool is_finite(double v) { return std::isfinite(v); }
};

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

// Splits "p/q" at the slash. Returns false when there is no slash.
inline bool split_fraction(std::string_view text, std::string_view& num, std::string_view& den) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return false;
  num = text.substr(0, slash);
  den = text.substr(slash + 1);
  return true;
}

}  // namespace detail

/// Parses a scalar literal. Both modes accept optionally signed integers and
/// fractions "p/q" with a positive, unsigned denominator. Float mode also
/// accepts decimal and scientific notation; exact mode rejects those with a
/// ParseError since they have no canonical rational reading.
template <typename S>
S parse_scalar(std::string_view text);

template <>
inline Rational parse_scalar<Rational>(std::string_view text) {
  std::string_view num = text, den;
  bool fraction = detail::split_fraction(text, num, den);

  std::string_view digits = num;
  bool negative = false;
  if (!digits.empty() && (digits.front() == '+' || digits.front() == '-')) {
    negative = digits.front() == '-';
    digits.remove_prefix(1);
  }
  if (!detail::all_digits(digits))
    throw ParseError("exact mode expects an integer or p/q: '" + std::string(text) + "'");

  BigInt n{std::string(digits)};
  if (negative) n = -n;
  if (!fraction) return Rational(n);

  // The denominator must be a bare positive integer; a sign there is an error
  // rather than something to normalize away.
  if (!detail::all_digits(den))
    throw ParseError("denominator must be a positive integer: '" + std::string(text) + "'");
  BigInt d{std::string(den)};
  if (d == 0) throw ParseError("zero denominator: '" + std::string(text) + "'");
  return Rational(n, d);
}

template <>
inline double parse_scalar<double>(std::string_view text) {
  std::string_view num = text, den;
  if (detail::split_fraction(text, num, den)) {
    std::string_view digits = num;
    if (!digits.empty() && (digits.front() == '+' || digits.front() == '-')) digits.remove_prefix(1);
    if (!detail::all_digits(digits) || !detail::all_digits(den))
      throw ParseError("malformed fraction: '" + std::string(text) + "'");
    double d = parse_scalar<double>(den);
    if (d == 0.0) throw ParseError("zero denominator: '" + std::string(text) + "'");
    return parse_scalar<double>(num) / d;
  }

  std::string_view body = text;
  if (!body.empty() && body.front() == '+') body.remove_prefix(1);
  double value = 0.0;
  auto res = std::from_chars(body.data(), body.data() + body.size(), value);
  if (res.ec != std::errc() || res.ptr != body.data() + body.size())
    throw ParseError("malformed number: '" + std::string(text) + "'");
  if (!std::isfinite(value))
    throw ParseError("non-finite literal: '" + std::string(text) + "'");
  return value;
}

/// Formats a scalar for CSV and JSON output. Rationals render as "p" or
/// "p/q"; doubles use the shortest digit string that round-trips.
inline std::string format_scalar(const Rational& v) { return v.str(); }

inline std::string format_scalar(double v) {
  if (!std::isfinite(v)) throw NonFiniteError("cannot format a non-finite value");
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace dfc
