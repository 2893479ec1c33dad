#pragma once

#include "sgue/elliptic.hpp"
#include "sgue/hankel.hpp"

#include <iosfwd>
#include <vector>

namespace sgue {

struct RegimeConstants {
  double c1 = 1;
  double c2 = 1;
};

bool in_regime(int N, const Real& z, const RegimeConstants& rc = {});

// exp(z^2/4 - 9/2^(10/3) (N^(2/3) z^(4/3) - 1) + t^2 N^(1/3) / (2^(5/3) z^(4/3)))
Real theorem1_factor(int N, const Real& z, const Real& t, const PrecisionContext& ctx);
Real theorem1_exponent(int N, const Real& z, const Real& t, const PrecisionContext& ctx);

// sqrt(theta(u_inf + s - a) theta(u_inf + s + a)), s = -N/2 - 1/4, a = t xi / (2 pi i sqrt N)
Real theta_correction(int N, const Real& z, const Real& t, const CurveData& cd, const PrecisionContext& ctx);

struct AsymptoticReport {
  ModelParams params;
  Real exact;
  Real b_n;
  Real leading_factor;
  Real theta_factor;
  Real prediction;  // b_n * leading_factor * theta_factor
  Real ratio;       // exact / prediction
  bool regime_ok = false;
  RegimeConstants regime;
  unsigned mantissa_bits = 0;
};

AsymptoticReport predict(const ModelParams& p, const PrecisionContext& ctx, const MomentCache* cache = nullptr,
                         const RegimeConstants& rc = {});

// leading coefficient of t^(2m): B_N exp(z^2/4 - 9/2^(10/3)(N^(2/3) z^(4/3) - 1)) N^(m/3) / (2^(5m/3) m! z^(4m/3))
Real corollary_coeff(int N, const Real& z, int m, const PrecisionContext& ctx, const MomentCache* cache = nullptr);
Real corollary_coeff(int N, const Real& z, int m, const Real& b_n, const PrecisionContext& ctx);
// same, indexed by the Taylor order; odd orders have no leading term and are rejected
Real corollary_taylor(int N, const Real& z, int order, const PrecisionContext& ctx, const MomentCache* cache = nullptr);

struct AsymDerivatives {
  Real d_v1;            // d log G_N / d v1
  Real d_v2_over_N;     // N^-1 d log G_N / d v2
  Real theta_log_derivative;
  Real fd_step;
  Real fd_delta;        // |D(h) - D(h/2)| of the theta derivative
  Real C;
  bool regime_ok = false;  // v2 in [0.1, 10]
};
AsymDerivatives asym_derivatives(int N, const Real& v1, const CurveData& cd, const PrecisionContext& ctx);

struct SmallV2Row {
  Real v2;
  Real lambda1_ratio;  // |l1| / (2^(-1/6) v2^(1/3))
  Real lambda2_ratio;  // l2 / (2^(-1/2) |l1|)
  Real lambda3_dev;    // |l3 - 2|
  Real K0_ratio;       // K0 l3 / (2 pi)
  Real Pi_ratio;       // Pi / ((log l2 - log(16 l3^2)) / (pi i))
  Real u_inf;
  Real u_inf_error;
  // deviation columns
  Real dev_lambda, dev_K0, dev_Pi, dev_u_inf;
};

struct SmallV2Report {
  std::vector<SmallV2Row> rows;
  bool lambda_decreasing = false, K0_decreasing = false, Pi_decreasing = false;
  // u_inf is identically 1/4; the column decreases or sits inside its error bound everywhere
  bool u_inf_decreasing = false, u_inf_exact = false;
  bool monotone() const;
};
SmallV2Report small_v2_report(const std::vector<Real>& v2_list, const PrecisionContext& ctx);

struct CompareRow {
  int N;
  Real z, t, exact, prediction, ratio, deviation;
};
std::vector<CompareRow> compare_table(std::vector<int> Ns, const Real& z, const Real& t, const PrecisionContext& ctx,
                                      const MomentCache* cache = nullptr);
void write_compare_csv(std::ostream& os, const std::vector<CompareRow>& rows);

// precision for an N-point Hankel run: 512 bits up to N = 32, 1024 above
PrecisionContext hankel_context(int N, const PrecisionContext& base);

}  // namespace sgue
