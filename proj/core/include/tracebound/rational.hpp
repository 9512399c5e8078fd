#ifndef TRACEBOUND_RATIONAL_HPP_
#define TRACEBOUND_RATIONAL_HPP_

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace tracebound {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer numerator_of(const Rational& q) {
  return boost::multiprecision::numerator(q);
}

inline Integer denominator_of(const Rational& q) {
  return boost::multiprecision::denominator(q);
}

inline Integer ipow(unsigned base, std::size_t exponent) {
  Integer result = 1;
  for (std::size_t i = 0; i < exponent; ++i) {
    result *= base;
  }
  return result;
}

// "p/q" with q > 0; integers print as "p/1".
inline std::string to_string(const Rational& q) {
  return numerator_of(q).str() + "/" + denominator_of(q).str();
}

inline double to_double(const Rational& q) {
  return q.convert_to<double>();
}

// True iff q is the square of a rational; writes the non-negative root.
inline bool rational_sqrt(const Rational& q, Rational& root) {
  if (q < 0) {
    return false;
  }
  Integer num = numerator_of(q);
  Integer den = denominator_of(q);
  Integer rn = boost::multiprecision::sqrt(num);
  Integer rd = boost::multiprecision::sqrt(den);
  if (rn * rn != num || rd * rd != den) {
    return false;
  }
  root = Rational(rn, rd);
  return true;
}

}  // namespace tracebound

#endif  // TRACEBOUND_RATIONAL_HPP_
