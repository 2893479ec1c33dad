#include "sgue/precision.hpp"
#include "sgue/complex.hpp"

#include <cstdlib>
#include <sstream>

namespace sgue {

PrecisionContext PrecisionContext::with_bits(unsigned bits) {
  PrecisionContext c;
  c.mantissa_bits = bits;
  c.rel_tol_log2 = -static_cast<double>(bits) / 2;
  c.validate();
  return c;
}

void PrecisionContext::validate() const {
  if (mantissa_bits < 64) throw InputError("mantissa_bits must be >= 64");
  if (!(rel_tol_log2 < 0)) throw InputError("rel_tol must be < 1");
  if (max_quad_depth < 1) throw InputError("max_quad_depth must be >= 1");
}

Real PrecisionContext::rel_tol() const { return pow2(static_cast<long>(std::floor(rel_tol_log2))); }
Real PrecisionContext::eps() const { return pow2(-static_cast<long>(mantissa_bits)); }

unsigned default_bits() {
  if (const char* s = std::getenv("SGUE_DEFAULT_PREC")) {
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (end != s && *end == '\0' && v >= 64) return static_cast<unsigned>(v);
  }
  return 512;
}

unsigned digits10_for_bits(unsigned bits) {
  // boost converts digits10 back to bits with a small surplus; aim slightly above
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

PrecisionScope::PrecisionScope(unsigned bits) : saved_digits_(Real::default_precision()) {
  Real::default_precision(digits10_for_bits(bits));
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_digits_); }

Real pi() {
  Real r;
  mpfr_const_pi(r.backend().data(), MPFR_RNDN);
  return r;
}

Real ln2() {
  Real r;
  mpfr_const_log2(r.backend().data(), MPFR_RNDN);
  return r;
}

Real pow2(long e) {
  Real r(1);
  mpfr_mul_2si(r.backend().data(), r.backend().data(), e, MPFR_RNDN);
  return r;
}

Real real_from_string(const std::string& s) {
  // to_string writes precision() + 2 digits; read such strings back at the precision they were written with
  std::size_t digits = 0;
  bool leading = true;
  for (char c : s) {
    if (c == 'e' || c == 'E') break;
    if (c < '0' || c > '9') continue;
    if (leading && c == '0') continue;
    leading = false;
    ++digits;
  }
  const unsigned saved = Real::default_precision();
  try {
    if (digits > saved + 2) {
      Real::default_precision(static_cast<unsigned>(digits - 2));
      Real r(s);
      Real::default_precision(saved);
      return r;
    }
    return Real(s);
  } catch (const std::exception&) {
    Real::default_precision(saved);
    throw InputError("not a number: '" + s + "'");
  }
}

std::string to_string(const Real& x, int digits) {
  if (x == 0) return "0";
  return x.str(digits, std::ios_base::scientific);
}

std::string to_string(const Real& x) { return to_string(x, static_cast<int>(x.precision()) + 2); }

bool is_finite(const Real& x) { return mpfr_number_p(x.backend().data()) != 0; }

// --- Complex ---

Complex& Complex::operator/=(const Complex& o) {
  // Smith's algorithm
  if (boost::multiprecision::abs(o.re) >= boost::multiprecision::abs(o.im)) {
    Real r = o.im / o.re;
    Real den = o.re + o.im * r;
    Real nr = (re + im * r) / den;
    im = (im - re * r) / den;
    re = std::move(nr);
  } else {
    Real r = o.re / o.im;
    Real den = o.re * r + o.im;
    Real nr = (re * r + im) / den;
    im = (im * r - re) / den;
    re = std::move(nr);
  }
  return *this;
}

Real abs(const Complex& a) {
  Real r;
  mpfr_hypot(r.backend().data(), a.re.backend().data(), a.im.backend().data(), MPFR_RNDN);
  return r;
}

Real arg(const Complex& a) {
  Real r;
  mpfr_atan2(r.backend().data(), a.im.backend().data(), a.re.backend().data(), MPFR_RNDN);
  return r;
}

Complex polar(const Real& r, const Real& theta) {
  Real s, c;
  mpfr_sin_cos(s.backend().data(), c.backend().data(), theta.backend().data(), MPFR_RNDN);
  return {r * c, r * s};
}

Complex exp(const Complex& a) { return polar(boost::multiprecision::exp(a.re), a.im); }

Complex log(const Complex& a) { return {boost::multiprecision::log(abs(a)), arg(a)}; }

Complex sqrt(const Complex& a) {
  if (a.re == 0 && a.im == 0) return {};
  Real m = abs(a);
  if (a.re >= 0) {
    Real s = boost::multiprecision::sqrt((m + a.re) / 2);
    return {s, a.im / (2 * s)};
  }
  Real s = boost::multiprecision::sqrt((m - a.re) / 2);
  if (a.im < 0) s = -s;
  return {a.im / (2 * s), s};
}

Complex root4(const Complex& a) {
  if (a.re == 0 && a.im == 0) return {};
  Real m = boost::multiprecision::sqrt(boost::multiprecision::sqrt(abs(a)));
  return polar(m, arg(a) / 4);
}

bool is_finite(const Complex& a) { return is_finite(a.re) && is_finite(a.im); }

std::ostream& operator<<(std::ostream& os, const Complex& a) {
  return os << '(' << to_string(a.re, 20) << ", " << to_string(a.im, 20) << ')';
}

Matrix2 Matrix2::identity() { return diag(Complex(1), Complex(1)); }

Matrix2 Matrix2::diag(const Complex& a, const Complex& b) {
  Matrix2 m;
  m.e = {a, Complex(), Complex(), b};
  return m;
}

Complex Matrix2::det() const { return e[0] * e[3] - e[1] * e[2]; }

Matrix2 Matrix2::inverse() const {
  Complex d = det();
  Matrix2 m;
  m.e = {e[3] / d, -e[1] / d, -e[2] / d, e[0] / d};
  return m;
}

Real Matrix2::max_abs() const {
  Real best(0);
  for (const auto& c : e) {
    Real a = abs(c);
    if (a > best) best = a;
  }
  return best;
}

Matrix2 operator*(const Matrix2& a, const Matrix2& b) {
  Matrix2 m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j);
  return m;
}

Matrix2 operator+(const Matrix2& a, const Matrix2& b) {
  Matrix2 m;
  for (int k = 0; k < 4; ++k) m.e[k] = a.e[k] + b.e[k];
  return m;
}

Matrix2 operator-(const Matrix2& a, const Matrix2& b) {
  Matrix2 m;
  for (int k = 0; k < 4; ++k) m.e[k] = a.e[k] - b.e[k];
  return m;
}

}  // namespace sgue
