#ifndef DOFCOUNT_RATIONAL_HPP
#define DOFCOUNT_RATIONAL_HPP

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace dofcount {

// Arbitrary-precision, always kept in lowest terms with a positive denominator.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational make_rational(std::uint64_t num, std::uint64_t den) {
  return Rational(BigInt(num), BigInt(den));
}

/// "p/q", or "p" when the denominator is one.
inline std::string to_fraction_string(const Rational& r) {
  const auto den = boost::multiprecision::denominator(r);
  std::string s = boost::multiprecision::numerator(r).str();
  if (den != 1) {
    s += '/';
    s += den.str();
  }
  return s;
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace dofcount

#endif  // DOFCOUNT_RATIONAL_HPP
