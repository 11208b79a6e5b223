#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>

namespace ptope {

/// Exact scalar for integer-valued inputs. All minor and Gram computations
/// stay in this type until a caller asks for a floating approximation.
using Rational = boost::multiprecision::cpp_rational;

/// Arbitrary-precision integer used by the invariant-factor routine, where
/// intermediate entries can outgrow any fixed width.
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.convert_to<double>(); }
inline double to_double(const BigInt& x) { return x.convert_to<double>(); }

inline double abs_value(double x) { return std::fabs(x); }
inline double abs_value(const Rational& x) {
  return std::fabs(x.convert_to<double>());
}

}  // namespace ptope
