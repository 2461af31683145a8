#pragma once

// Numeric scalar support. Every core type is templated on the scalar:
// `Rational` (exact, arbitrary precision) or `double` (float mode, compared
// with a 1e-9 relative tolerance).

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace hpfire {

using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;

enum class NumericMode { Rational, Float };

inline std::string_view to_string(NumericMode mode) {
  return mode == NumericMode::Rational ? "rational" : "float";
}

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <typename Scalar>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr NumericMode mode = NumericMode::Float;
  static constexpr bool exact = false;
  static constexpr double tolerance = 1e-9;

  static bool is_finite(double x) { return std::isfinite(x); }
  static double to_double(double x) { return x; }
  static double from_double(double x) { return x; }

  static double parse(std::string_view text) {
    double value = 0.0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
      // Accept "p/q" in float mode as a convenience.
      const auto slash = text.find('/');
      if (slash != std::string_view::npos) {
        return parse(text.substr(0, slash)) / parse(text.substr(slash + 1));
      }
      throw ParseError("not a number: '" + std::string(text) + "'");
    }
    return value;
  }

  static std::string format(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, ptr);
  }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr NumericMode mode = NumericMode::Rational;
  static constexpr bool exact = true;

  static bool is_finite(const Rational&) { return true; }
  static double to_double(const Rational& x) { return x.convert_to<double>(); }

  // Exact conversion of the binary value of `x`.
  static Rational from_double(double x) {
    if (!std::isfinite(x)) throw std::domain_error("non-finite value has no rational form");
    int exponent = 0;
    const double mantissa = std::frexp(x, &exponent);
    const auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
    Rational r{BigInt(scaled)};
    const int shift = exponent - 53;
    const BigInt power = BigInt(1) << std::abs(shift);
    return shift >= 0 ? r * Rational(power) : r / Rational(power);
  }

  // Accepts "p/q", integers, and finite decimals such as "-7.25" (exactly).
  static Rational parse(std::string_view text) {
    if (text.empty()) throw ParseError("empty rational");
    const auto slash = text.find('/');
    if (slash != std::string_view::npos) {
      const BigInt num = parse_integer(text.substr(0, slash));
      const BigInt den = parse_integer(text.substr(slash + 1));
      if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
      return Rational(num, den);
    }
    const auto dot = text.find('.');
    if (dot == std::string_view::npos) return Rational(parse_integer(text));
    const std::string_view whole = text.substr(0, dot);
    const std::string_view frac = text.substr(dot + 1);
    if (frac.empty() || frac.find_first_not_of("0123456789") != std::string_view::npos) {
      throw ParseError("malformed decimal '" + std::string(text) + "'");
    }
    std::string digits(whole);
    if (digits.empty() || digits == "-" || digits == "+") digits += "0";
    digits += frac;
    BigInt den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    return Rational(parse_integer(digits), den);
  }

  static std::string format(const Rational& x) {
    const BigInt num = boost::multiprecision::numerator(x);
    const BigInt den = boost::multiprecision::denominator(x);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
  }

 private:
  static BigInt parse_integer(std::string_view text) {
    std::string_view digits = text;
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string_view::npos) {
      throw ParseError("malformed integer '" + std::string(text) + "'");
    }
    // boost reads a leading 0 as octal
    const auto first = std::min(digits.find_first_not_of('0'), digits.size() - 1);
    const BigInt magnitude(std::string(digits.substr(first)));
    return text.front() == '-' ? BigInt(-magnitude) : magnitude;
  }
};

template <typename Scalar>
inline constexpr bool is_exact_v = ScalarTraits<Scalar>::exact;

template <typename Scalar>
double to_double(const Scalar& x) {
  return ScalarTraits<Scalar>::to_double(x);
}

template <typename Scalar>
Scalar parse_scalar(std::string_view text) {
  return ScalarTraits<Scalar>::parse(text);
}

template <typename Scalar>
std::string format_scalar(const Scalar& x) {
  return ScalarTraits<Scalar>::format(x);
}

template <typename Scalar>
Scalar abs_value(const Scalar& x) {
  return x < Scalar(0) ? Scalar(-x) : x;
}

template <typename Scalar>
Scalar max_value(const Scalar& a, const Scalar& b) {
  return a < b ? b : a;
}

template <typename Scalar>
Scalar min_value(const Scalar& a, const Scalar& b) {
  return b < a ? b : a;
}

/// Tolerant equality: exact for rationals, 1e-9 relative (floor 1) for doubles.
template <typename Scalar>
bool approx_equal(const Scalar& a, const Scalar& b) {
  if constexpr (is_exact_v<Scalar>) {
    return a == b;
  } else {
    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) <= ScalarTraits<double>::tolerance * scale;
  }
}

/// a < b by more than the comparison tolerance.
template <typename Scalar>
bool definitely_less(const Scalar& a, const Scalar& b) {
  return a < b && !approx_equal(a, b);
}

template <typename Scalar>
bool less_or_approx(const Scalar& a, const Scalar& b) {
  return a < b || approx_equal(a, b);
}

}  // namespace hpfire
