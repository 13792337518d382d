#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace heis {

/// Exact scalar used by the algebraic suites. Arithmetic is closed and
/// normalized; denominators are never zero.
using Rational = boost::multiprecision::cpp_rational;

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
  static constexpr bool is_exact = true;
  static Rational abs(const Rational& v) { return v < 0 ? Rational(-v) : v; }
  static double to_double(const Rational& v) { return v.convert_to<double>(); }
  static const char* mode_name() { return "exact"; }
};

template <>
struct scalar_traits<double> {
  static constexpr bool is_exact = false;
  static double abs(double v) { return std::fabs(v); }
  static double to_double(double v) { return v; }
  static const char* mode_name() { return "float"; }
};

/// Parses "p/q" or a plain integer literal. The denominator must be nonzero.
inline Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      return Rational(boost::multiprecision::cpp_int(text));
    }
    boost::multiprecision::cpp_int num(text.substr(0, slash));
    boost::multiprecision::cpp_int den(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a rational literal: \"" + text + "\"");
  }
}

/// Renders p when q == 1, "p/q" otherwise.
inline std::string format_rational(const Rational& v) {
  const auto num = boost::multiprecision::numerator(v);
  const auto den = boost::multiprecision::denominator(v);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace heis
