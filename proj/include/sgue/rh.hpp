#pragma once

#include "sgue/complex.hpp"
#include "sgue/hankel.hpp"

#include <array>

namespace sgue {

// Finite-N Riemann-Hilbert solution built from the monic orthogonal polynomials of
// w_N(x) = exp(-N (v2/(2x^2) + x^2/2) + v1/x)
class RHSolution {
 public:
  RHSolution(const ModelParams& p, const PrecisionContext& ctx, const MomentCache* cache = nullptr);

  Matrix2 Y(const Complex& y, Side side = Side::none) const;
  Matrix2 Y_prime(const Complex& y, Side side = Side::none) const;
  Complex alpha(const Complex& y) const;  // tr(Y^-1 Y' sigma3)

  Real weight(const Real& x) const;
  Complex weight(const Complex& x) const;
  Real log_weight(const Real& x) const;
  Complex kappa() const;  // -2 pi i / h_{N-1}

  // pi_0..pi_n and derivatives at complex y
  void polys(const Complex& y, int n, std::vector<Complex>& p, std::vector<Complex>* dp = nullptr) const;

  const HankelFactorization& factorization() const { return fact_; }
  const ModelParams& params() const { return params_; }
  const PrecisionContext& context() const { return ctx_; }

  static constexpr double kDirectIm = 0.05;  // |Im y| above which Cauchy transforms are taken on R directly
  static constexpr double kDentRadius = 0.01;

 private:
  // (1/2 pi i) int pi_j(s) w(s) / (s - y)^k ds for j = N, N-1 and k = 1, 2
  std::array<Complex, 4> cauchy(const Complex& y, Side side) const;

  ModelParams params_;
  PrecisionContext ctx_;
  WeightShape shape_;
  HankelFactorization fact_;
};

struct KernelValue {
  Real sum_route;
  Real cd_route;
  Real difference;
};
KernelValue kernel_value(const Real& x, const Real& y, const RHSolution& rh);
// K_N(x, x): sum of squares and the l'Hospital limit through Y+
KernelValue kernel_diagonal(const Real& x, const RHSolution& rh);
// int K_N(x, x) dx
Real kernel_trace(const RHSolution& rh);

struct IdentityCheck {
  Real contour;
  Real finite_diff;
  Real rel_err;
};

struct RHCheckReport {
  ModelParams params;
  Real radius;
  Real jump_residual_max;
  Real det_residual_max;
  IdentityCheck id_v1;
  IdentityCheck id_v2;
};

// largest r with w_N(+-x) < 2^-(bits+16) on 0 < x <= r
Real contour_radius(const RHSolution& rh);
RHCheckReport check_identities(const ModelParams& p, const PrecisionContext& ctx, const MomentCache* cache = nullptr);

}  // namespace sgue
