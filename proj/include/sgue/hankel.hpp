#pragma once

#include "sgue/moments.hpp"

#include <vector>

namespace sgue {

struct PositiveDefinitenessError : PrecisionError {
  using PrecisionError::PrecisionError;
};

struct HankelFactorization {
  ModelParams params;
  Variables variables = Variables::original;
  unsigned mantissa_bits = 0;
  std::vector<Real> norms;  // h_0 .. h_{n-1}
  std::vector<Real> alpha;  // a_j
  std::vector<Real> beta;   // b_j = h_j / h_{j-1}; beta[0] = h_0
  Real log_det;
  double condition_log2 = 0;  // log2 of the worst relative rounding amplification seen

  int size() const { return static_cast<int>(norms.size()); }
  // monic pi_0..pi_n at x from the recurrence
  std::vector<Real> eval_polys(const Real& x, int n) const;
};

struct PartitionResult {
  ModelParams params;
  Real E_N;
  Real log_E_N;
  Real log_G_N;
  Real log_Z_N;
  std::vector<Real> h;
  unsigned mantissa_bits_used = 0;
  int retries = 0;
};

Real z_gue(int N, const PrecisionContext& ctx);  // log Z_N

// Chebyshev's modified-moment algorithm on mu_0..mu_{M-1}: floor((M+1)/2) norms and
// floor(M/2) recurrence coefficients.  Throws PrecisionError when the propagated
// rounding amplification exceeds 2^(bits-64).
HankelFactorization factorize(const MomentTable& table, const PrecisionContext& ctx);

PartitionResult partition_exact(const ModelParams& p, const PrecisionContext& ctx,
                                const MomentCache* cache = nullptr);
// log G_N from the moments of w_N directly
Real log_g_scaled(const ModelParams& p, const PrecisionContext& ctx, const MomentCache* cache = nullptr);
// log G_N at (v1, v2) through the original-variable route
Real log_g(int N, const Real& v1, const Real& v2, const PrecisionContext& ctx, const MomentCache* cache = nullptr);

Real b_n(int N, const PrecisionContext& ctx, const MomentCache* cache = nullptr);

struct TaylorCoeff {
  Real value;
  Real step;
  Real richardson_delta;  // |D(h) - D(h/2)|
};
TaylorCoeff taylor_coeff(int N, const Real& z, int m, const PrecisionContext& ctx,
                         const MomentCache* cache = nullptr);

// E_{N,0..order}(z) from a power-series-in-t determinant built on the Bessel moments
std::vector<Real> taylor_jet(int N, const Real& z, int order, const PrecisionContext& ctx);

struct BerryShukla {
  Real value;
  Real error_bound;
  Real z_min;  // integral taken over [z_min, inf); the rest is inside error_bound
};
BerryShukla berry_shukla_moment(int N, int m, const PrecisionContext& ctx);

}  // namespace sgue
