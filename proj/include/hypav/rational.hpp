#pragma once

// Exact integer and rational arithmetic used by every report that promises
// exact values. Built on Boost.Multiprecision's cpp_int backend, which is
// header-only and needs no GMP at link time.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include "hypav/error.hpp"

namespace hypav {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt numerator_of(const Rational& x) { return boost::multiprecision::numerator(x); }
inline BigInt denominator_of(const Rational& x) { return boost::multiprecision::denominator(x); }

// Accepts "p/q", "p" and a leading '-'. Decimal notation is rejected so that
// callers never smuggle a float into an exact computation.
inline Rational parse_rational(std::string_view text) {
  auto digits_only = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
      if (c < '0' || c > '9') return false;
    }
    return true;
  };
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!digits_only(num) || !digits_only(den)) {
    throw ValidationError("malformed rational '" + std::string(text) +
                          "': expected p/q with integer p and q (decimals are not accepted)");
  }
  BigInt p{std::string(num)};
  BigInt q{std::string(den)};
  if (q == 0) throw ValidationError("malformed rational '" + std::string(text) + "': zero denominator");
  Rational value(p, q);
  return negative ? Rational(-value) : value;
}

inline std::string to_string(const Rational& x) { return x.str(); }
inline std::string to_string(const BigInt& x) { return x.str(); }

// Decimal rendering truncated toward zero after `digits` fractional digits,
// with trailing zeros removed.
inline std::string to_decimal(const Rational& x, int digits = 15) {
  BigInt num = numerator_of(x);
  const BigInt den = denominator_of(x);
  std::string sign;
  if (num < 0) {
    sign = "-";
    num = -num;
  }
  const BigInt whole = num / den;
  BigInt rem = num % den;
  std::string frac;
  for (int i = 0; i < digits && rem != 0; ++i) {
    rem *= 10;
    frac.push_back(static_cast<char>('0' + static_cast<int>(rem / den)));
    rem %= den;
  }
  while (!frac.empty() && frac.back() == '0') frac.pop_back();
  if (sign == "-" && whole == 0 && frac.empty()) sign.clear();
  return sign + whole.str() + (frac.empty() ? "" : "." + frac);
}

// Natural log of a positive big integer without overflowing double.
inline double log_of(const BigInt& x) {
  if (x <= 0) return -std::numeric_limits<double>::infinity();
  const auto bits = boost::multiprecision::msb(x) + 1;
  if (bits <= 900) return std::log(x.convert_to<double>());
  const auto shift = bits - 64;
  const BigInt top = x >> shift;
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

inline double log_of(const Rational& x) {
  if (x <= 0) return -std::numeric_limits<double>::infinity();
  return log_of(numerator_of(x)) - log_of(denominator_of(x));
}

inline double to_double(const Rational& x) {
  if (x == 0) return 0.0;
  const BigInt num = numerator_of(x);
  const BigInt den = denominator_of(x);
  if (boost::multiprecision::msb(num < 0 ? BigInt(-num) : num) < 1000 && boost::multiprecision::msb(den) < 1000) {
    return num.convert_to<double>() / den.convert_to<double>();
  }
  const double magnitude = std::exp(log_of(x < 0 ? Rational(-x) : x));
  return x < 0 ? -magnitude : magnitude;
}

inline Rational pow(const Rational& base, std::uint64_t exponent) {
  Rational result = 1;
  Rational b = base;
  while (exponent != 0) {
    if (exponent & 1U) result *= b;
    exponent >>= 1U;
    if (exponent != 0) b *= b;
  }
  return result;
}

inline BigInt factorial(int n) {
  BigInt result = 1;
  for (int i = 2; i <= n; ++i) result *= i;
  return result;
}

inline BigInt binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt result = 1;
  for (int i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

// Machine-width binomial; throws on overflow instead of wrapping.
inline std::uint64_t binomial_u64(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 result = 1;
  for (int i = 1; i <= k; ++i) {
    result = result * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (result > std::numeric_limits<std::uint64_t>::max()) {
      throw CapExceeded("C(" + std::to_string(n) + "," + std::to_string(k) + ") overflows 64 bits");
    }
  }
  return static_cast<std::uint64_t>(result);
}

inline std::uint64_t factorial_u64(int n) {
  std::uint64_t result = 1;
  for (int i = 2; i <= n; ++i) {
    if (result > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(i)) {
      throw CapExceeded(std::to_string(n) + "! overflows 64 bits");
    }
    result *= static_cast<std::uint64_t>(i);
  }
  return result;
}

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  if (a > std::numeric_limits<std::uint64_t>::max() - b) throw CapExceeded("64-bit count overflow");
  return a + b;
}

}  // namespace hypav
