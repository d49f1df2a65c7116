#ifndef OPERT_SCALAR_HPP
#define OPERT_SCALAR_HPP

#include <algorithm>
#include <charconv>
#include <cmath>
#include <concepts>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "opert/error.hpp"

namespace opert {

/// Arbitrary precision rational. Expression templates are disabled so that
/// `auto` always yields a value.
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                              boost::multiprecision::et_off>;

/// Relative tolerance for floating mode: |x - y| <= relative * max(1, |x|, |y|).
/// Ignored in exact mode.
struct Tolerance {
  double relative = 1e-10;
};

template <class T>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
  static constexpr bool exact = true;
  static constexpr std::string_view mode = "exact";

  static bool equal(const Rational& x, const Rational& y, const Tolerance&) { return x == y; }

  static Rational abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }

  static double to_double(const Rational& x) { return x.convert_to<double>(); }

  static std::string format(const Rational& x) {
    const Integer num = boost::multiprecision::numerator(x);
    const Integer den = boost::multiprecision::denominator(x);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
  }

  static std::optional<Rational> sqrt(const Rational& x) {
    if (x < 0) return std::nullopt;
    const Integer num = boost::multiprecision::numerator(x);
    const Integer den = boost::multiprecision::denominator(x);
    const Integer rn = boost::multiprecision::sqrt(num);
    const Integer rd = boost::multiprecision::sqrt(den);
    if (rn * rn != num || rd * rd != den) return std::nullopt;
    return Rational(rn, rd);
  }

  static Rational parse(std::string_view text);
};

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  static constexpr std::string_view mode = "float";

  static bool equal(double x, double y, const Tolerance& tol) {
    const double scale = std::max({1.0, std::fabs(x), std::fabs(y)});
    return std::fabs(x - y) <= tol.relative * scale;
  }

  static double abs(double x) { return std::fabs(x); }

  static double to_double(double x) { return x; }

  static std::string format(double x) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, end);
  }

  static std::optional<double> sqrt(double x) {
    if (x < 0) return std::nullopt;
    return std::sqrt(x);
  }

  static double parse(std::string_view text);
};

/// Field types the library is instantiated with.
template <class T>
concept Scalar = std::regular<T> && requires(const T& a, const T& b) {
  { a + b } -> std::convertible_to<T>;
  { a - b } -> std::convertible_to<T>;
  { a * b } -> std::convertible_to<T>;
  { a / b } -> std::convertible_to<T>;
  { -a } -> std::convertible_to<T>;
  { scalar_traits<T>::exact } -> std::convertible_to<bool>;
};

template <Scalar T>
bool equal(const T& x, const T& y, const Tolerance& tol = {}) {
  return scalar_traits<T>::equal(x, y, tol);
}

template <Scalar T>
bool is_zero(const T& x, const Tolerance& tol = {}) {
  return scalar_traits<T>::equal(x, T(0), tol);
}

template <Scalar T>
T abs(const T& x) {
  return scalar_traits<T>::abs(x);
}

template <Scalar T>
std::string format_scalar(const T& x) {
  return scalar_traits<T>::format(x);
}

template <Scalar T>
T parse_scalar(std::string_view text) {
  return scalar_traits<T>::parse(text);
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

inline bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

// Exact value of a decimal literal: [-+]digits[.digits][e[-+]digits]
inline Rational parse_decimal(std::string_view s) {
  const std::string original(s);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp = s.substr(e + 1);
    bool exp_negative = false;
    if (!exp.empty() && (exp.front() == '-' || exp.front() == '+')) {
      exp_negative = exp.front() == '-';
      exp.remove_prefix(1);
    }
    if (!all_digits(exp) || exp.size() > 6) throw Error(ErrorKind::ParseError, "bad exponent in '" + original + "'");
    exponent = std::stol(std::string(exp));
    if (exp_negative) exponent = -exponent;
    s = s.substr(0, e);
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
        (whole.empty() && frac.empty()))
      throw Error(ErrorKind::ParseError, "bad decimal '" + original + "'");
    digits = std::string(whole) + std::string(frac);
    exponent -= static_cast<long>(frac.size());
  } else {
    if (!all_digits(s)) throw Error(ErrorKind::ParseError, "bad number '" + original + "'");
    digits = std::string(s);
  }
  // A leading zero would select octal in the Integer string constructor.
  const auto first = digits.find_first_not_of('0');
  digits = first == std::string::npos ? "0" : digits.substr(first);
  Rational value{Integer(digits)};
  Integer ten_power = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(std::labs(exponent)));
  if (exponent >= 0)
    value *= Rational(ten_power);
  else
    value /= Rational(ten_power);
  return negative ? Rational(-value) : value;
}

}  // namespace detail

inline Rational scalar_traits<Rational>::parse(std::string_view text) {
  std::string_view s = detail::trim(text);
  if (s.empty()) throw Error(ErrorKind::ParseError, "empty scalar");
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    const Rational num = detail::parse_decimal(detail::trim(s.substr(0, slash)));
    const Rational den = detail::parse_decimal(detail::trim(s.substr(slash + 1)));
    if (den == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + std::string(s) + "'");
    return num / den;
  }
  return detail::parse_decimal(s);
}

inline double scalar_traits<double>::parse(std::string_view text) {
  // Parse exactly first so "1/3" and "0.1" go through a single rounding.
  return scalar_traits<Rational>::parse(text).convert_to<double>();
}

/// Converts between the two scalar modes (exact -> float rounds).
template <Scalar To, Scalar From>
To scalar_cast(const From& x) {
  if constexpr (std::is_same_v<To, From>) {
    return x;
  } else if constexpr (std::is_same_v<To, double>) {
    return scalar_traits<From>::to_double(x);
  } else {
    return To(x);
  }
}

}  // namespace opert

#endif  // OPERT_SCALAR_HPP
