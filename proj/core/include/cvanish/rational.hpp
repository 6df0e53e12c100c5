#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include <string>
#include <vector>

namespace cvanish {

// Overflow raises std::overflow_error instead of wrapping.
using Integer = boost::multiprecision::checked_int128_t;
using Rational = boost::rational<Integer>;

using RationalMatrix = std::vector<std::vector<Rational>>;

inline double to_double(const Rational& q) {
  return q.numerator().convert_to<double>() / q.denominator().convert_to<double>();
}

inline std::string to_string(const Rational& q) {
  if (q.denominator() == 1) return q.numerator().str();
  return q.numerator().str() + "/" + q.denominator().str();
}

inline Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Exact inverse by Gauss-Jordan elimination. Throws std::domain_error when singular.
RationalMatrix invert(RationalMatrix m);

/// Solves m x = b exactly (m square, nonsingular).
std::vector<Rational> solve(const RationalMatrix& m, const std::vector<Rational>& b);

}  // namespace cvanish

// boost 1.74 spells rational-vs-integer equality as the reversed call, which
// C++20 rewrites back into itself. Exact non-template overloads win overload
// resolution and break the cycle.
namespace boost {
inline bool operator==(const cvanish::Rational& a, int b) { return a == cvanish::Rational(b); }
inline bool operator==(int a, const cvanish::Rational& b) { return cvanish::Rational(a) == b; }
inline bool operator!=(const cvanish::Rational& a, int b) { return !(a == b); }
inline bool operator!=(int a, const cvanish::Rational& b) { return !(a == b); }
}  // namespace boost
