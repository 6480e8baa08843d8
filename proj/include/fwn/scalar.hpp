#pragma once

// Scalar arithmetic used throughout the library.
//
// Every algebraic object is templated on a scalar type T. Three are
// supported:
//   Rational              exact, real (GMP rationals); integer norm exponents
//   double                binary64; real exponents
//   std::complex<double>  binary64 complex; real exponents
//
// Eigenvalue weights and norms are always real (`real_type`).

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <type_traits>

#include <gmpxx.h>

namespace fwn {

using Rational = mpq_class;

template <typename T>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
  using real_type = Rational;
  using exponent_type = long;
  static constexpr bool exact = true;
  static constexpr bool is_complex = false;

  static Rational conj(const Rational& x) { return x; }
  static Rational abs2(const Rational& x) { return x * x; }
  static Rational from_real(const Rational& x) { return x; }
  static Rational real(const Rational& x) { return x; }
  static bool is_zero(const Rational& x) { return sgn(x) == 0; }

  static Rational pow(const Rational& base, long e) {
    Rational result = 1;
    Rational b = base;
    if (e < 0) {
      if (sgn(b) == 0) throw std::domain_error("zero raised to a negative power");
      b = 1 / b;
      e = -e;
    }
    while (e > 0) {
      if (e & 1) result *= b;
      b *= b;
      e >>= 1;
    }
    return result;
  }
};

template <>
struct scalar_traits<double> {
  using real_type = double;
  using exponent_type = double;
  static constexpr bool exact = false;
  static constexpr bool is_complex = false;

  static double conj(double x) { return x; }
  static double abs2(double x) { return x * x; }
  static double from_real(double x) { return x; }
  static double real(double x) { return x; }
  static bool is_zero(double x) { return x == 0.0; }
  static double pow(double base, double e) { return std::pow(base, e); }
};

template <>
struct scalar_traits<std::complex<double>> {
  using real_type = double;
  using exponent_type = double;
  static constexpr bool exact = false;
  static constexpr bool is_complex = true;

  static std::complex<double> conj(std::complex<double> x) { return std::conj(x); }
  static double abs2(std::complex<double> x) { return std::norm(x); }
  static std::complex<double> from_real(double x) { return {x, 0.0}; }
  static double real(std::complex<double> x) { return x.real(); }
  static bool is_zero(std::complex<double> x) { return x == std::complex<double>{}; }
  static double pow(double base, double e) { return std::pow(base, e); }
};

template <typename T>
using real_t = typename scalar_traits<T>::real_type;

template <typename T>
using exponent_t = typename scalar_traits<T>::exponent_type;

template <typename T>
concept Scalar = requires { typename scalar_traits<T>::real_type; };

template <Scalar T>
bool is_zero(const T& x) {
  return scalar_traits<T>::is_zero(x);
}

template <Scalar T>
T conj(const T& x) {
  return scalar_traits<T>::conj(x);
}

/// s * v for a sign s in {-1, 0, +1}.
template <Scalar T>
T with_sign(int s, const T& v) {
  if (s > 0) return v;
  if (s < 0) return T(0) - v;
  return T(0);
}

/// n! as a scalar of type T. Only small n occur (n <= 2 * mode count).
template <Scalar T>
T factorial(int n) {
  if (n < 0) throw std::domain_error("factorial of a negative number");
  T result = T(1);
  for (int k = 2; k <= n; ++k) result = result * T(k);
  return result;
}

/// Binomial coefficient C(n, k) as a scalar.
template <Scalar T>
T binomial(int n, int k) {
  if (k < 0 || k > n) return T(0);
  T result = T(1);
  for (int i = 1; i <= k; ++i) {
    result = result * T(n - k + i);
    result = result / T(i);
  }
  return result;
}

/// Converts a real value to double (for reporting).
inline double to_double(const Rational& x) { return x.get_d(); }
inline double to_double(double x) { return x; }

}  // namespace fwn
