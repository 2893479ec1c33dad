#pragma once

#include "sgue/precision.hpp"

#include <array>
#include <ostream>

namespace sgue {

// boundary-value selector for points on a cut: plus = limit from the upper half-plane
enum class Side { none, plus, minus };

// minimal complex arithmetic over Real; std::complex is not specified for mpfr numbers
struct Complex {
  Real re, im;

  Complex() : re(0), im(0) {}
  Complex(const Real& r) : re(r), im(0) {}  // NOLINT
  Complex(int r) : re(r), im(0) {}          // NOLINT
  Complex(const Real& r, const Real& i) : re(r), im(i) {}

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
  Complex& operator*=(const Complex& o) {
    Real r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  Complex& operator*=(const Real& s) {
    re *= s;
    im *= s;
    return *this;
  }
  Complex& operator/=(const Complex& o);
  Complex& operator/=(const Real& s) {
    re /= s;
    im /= s;
    return *this;
  }
};

inline Complex operator+(Complex a, const Complex& b) { return a += b; }
inline Complex operator-(Complex a, const Complex& b) { return a -= b; }
inline Complex operator*(Complex a, const Complex& b) { return a *= b; }
inline Complex operator*(Complex a, const Real& s) { return a *= s; }
inline Complex operator*(const Real& s, Complex a) { return a *= s; }
inline Complex operator/(Complex a, const Complex& b) { return a /= b; }
inline Complex operator/(Complex a, const Real& s) { return a /= s; }
inline Complex operator-(const Complex& a) { return {-a.re, -a.im}; }

inline Complex I_unit() { return {Real(0), Real(1)}; }
inline Complex conj(const Complex& a) { return {a.re, -a.im}; }
inline Real norm2(const Complex& a) { return a.re * a.re + a.im * a.im; }
Real abs(const Complex& a);
Real arg(const Complex& a);
Complex exp(const Complex& a);
Complex log(const Complex& a);    // principal branch
Complex sqrt(const Complex& a);   // principal branch, Re >= 0
Complex root4(const Complex& a);  // principal fourth root, arg in (-pi/4, pi/4]
Complex polar(const Real& r, const Real& theta);
bool is_finite(const Complex& a);

std::ostream& operator<<(std::ostream& os, const Complex& a);

// 2x2 complex matrix, row-major
struct Matrix2 {
  std::array<Complex, 4> e;

  Complex& operator()(int i, int j) { return e[2 * i + j]; }
  const Complex& operator()(int i, int j) const { return e[2 * i + j]; }

  static Matrix2 identity();
  static Matrix2 diag(const Complex& a, const Complex& b);
  Complex det() const;
  Matrix2 inverse() const;
  Complex trace() const { return e[0] + e[3]; }
  Real max_abs() const;
};

Matrix2 operator*(const Matrix2& a, const Matrix2& b);
Matrix2 operator+(const Matrix2& a, const Matrix2& b);
Matrix2 operator-(const Matrix2& a, const Matrix2& b);

}  // namespace sgue
