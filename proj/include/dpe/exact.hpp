#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>

namespace dpe {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

namespace exact {

inline BigInt factorial(long long n) {
  if (n < 0) throw std::domain_error("factorial: negative argument");
  BigInt r = 1;
  for (long long k = 2; k <= n; ++k) r *= k;
  return r;
}

inline BigInt binomial(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (long long i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;
  }
  return r;
}

inline Rational pow(const Rational& base, long long e) {
  if (e < 0) {
    if (base == 0) throw std::domain_error("pow: zero to negative power");
    Rational inv = Rational(denominator(base), numerator(base));
    return pow(inv, -e);
  }
  Rational r = 1, b = base;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

}  // namespace exact
}  // namespace dpe
