#pragma once

// Reference values computed without the library's own algorithms.

#include "sgue/complex.hpp"

#include <vector>

namespace oracle {

using sgue::Real;
namespace mp = boost::multiprecision;

inline Real rel(const Real& a, const Real& b) { return mp::abs(a - b) / mp::abs(b); }

// K_{n+1/2}(z) by upward recurrence from K_{1/2} and K_{3/2}
inline Real bessel_k_half(int n, const Real& z) {
  Real k0 = mp::sqrt(sgue::pi() / (2 * z)) * mp::exp(-z);
  if (n == 0) return k0;
  Real k1 = k0 * (1 + 1 / z);
  for (int m = 1; m < n; ++m) {
    Real k2 = k0 + (2 * m + 1) * k1 / z;
    k0 = k1;
    k1 = k2;
  }
  return k1;
}

// int_R x^(2k) exp(-z^2/(2x^2) - x^2/2) dx = 2 z^(k+1/2) K_{k+1/2}(z)
inline Real even_moment(int k, const Real& z) { return 2 * mp::pow(z, Real(k) + Real(1) / 2) * bessel_k_half(k, z); }

// E_1(z, 0), E_2(z, 0)
inline Real e1(const Real& z) { return mp::exp(-z); }
inline Real e2(const Real& z) { return (1 + z) * mp::exp(-2 * z); }
// t^2 coefficient of E_1(z, t): (1/2) E[x^-2 e^{-z^2/(2x^2)}] = e^{-z} / (2z)
inline Real e1_t2(const Real& z) { return mp::exp(-z) / (2 * z); }

// log Z_N = (N/2) log 2 pi + sum_{k<N} log k!
inline Real log_z_gue(int N) {
  Real s = Real(N) / 2 * mp::log(2 * sgue::pi());
  for (int k = 1; k < N; ++k) s += mp::lgamma(Real(k + 1));
  return s;
}

// determinant by Gaussian elimination with partial pivoting
inline Real det(std::vector<std::vector<Real>> a) {
  const std::size_t n = a.size();
  Real d(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (mp::abs(a[r][c]) > mp::abs(a[piv][c])) piv = r;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      d = -d;
    }
    d *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      Real f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return d;
}

inline std::vector<std::vector<Real>> hankel(const std::vector<Real>& mu, int n) {
  std::vector<std::vector<Real>> h(n, std::vector<Real>(n));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) h[j][k] = mu[j + k];
  return h;
}

// sum_{|m| <= M} exp(i pi Pi m^2 + 2 pi i s m) for purely imaginary Pi = i b, real s
inline double theta_brute(double s, double b, int M = 12) {
  double sum = 0;
  for (int m = -M; m <= M; ++m) sum += std::exp(-M_PI * b * m * m) * std::cos(2 * M_PI * s * m);
  return sum;
}

// composite Simpson rule in double precision
template <class F>
double simpson(F f, double a, double b, int n) {
  double h = (b - a) / n, s = f(a) + f(b);
  for (int k = 1; k < n; ++k) s += f(a + k * h) * (k % 2 ? 4 : 2);
  return s * h / 3;
}

}  // namespace oracle
