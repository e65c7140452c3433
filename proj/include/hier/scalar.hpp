#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace hier {

using Rational = mpq_class;

// Gaussian rational re + i*im.
struct Complex {
  Rational re;
  Rational im;

  Complex() = default;
  Complex(long v) : re(v), im(0) {}
  Complex(Rational r) : re(std::move(r)), im(0) {}
  Complex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static Complex i_unit() { return Complex(Rational(0), Rational(1)); }

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }

  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Complex& operator*=(const Complex& o);
  Complex& operator/=(const Complex& o);
  Complex operator-() const { return Complex(-re, -im); }

  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
  friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
};

Rational make_rational(long num, long den);
Rational parse_rational(std::string_view text);
// Always "p/q" with q > 0.
std::string rational_string(const Rational& q);

// (-i)^n, i^n
Complex i_power(int n);

Rational factorial(int n);
Rational binomial(int n, int k);
// Generalized binomial for negative upper argument.
Rational binomial_general(long n, int k);
// B_0 = 1, B_1 = -1/2, B_2 = 1/6, ...
Rational bernoulli(int n);

using Matrix = std::vector<std::vector<Complex>>;
// Throws std::domain_error when singular.
Matrix inverse(const Matrix& m);

}  // namespace hier
