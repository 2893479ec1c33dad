#pragma once

#include "sgue/complex.hpp"
#include "sgue/precision.hpp"
#include "sgue/quadrature.hpp"

#include <optional>
#include <vector>

namespace sgue {

struct EquilibriumData {
  Real v2;
  Real A1, A2, A3;
  Complex lambda1;  // i sqrt(-A1)
  Real lambda2, lambda3;
  std::optional<Real> l;
  unsigned mantissa_bits = 0;
};

struct AjResiduals {
  Real quartic;  // A1^4 - 2 A1^3 - v2^2
  Real sum;      // lambda1^2 + (lambda2^2 + lambda3^2)/2 - 2
  Real inverse;  // lambda1^-2 + (lambda2^-2 + lambda3^-2)/2
  Real product;  // lambda1^2 lambda2 lambda3 + v2
  Real max() const;
};

EquilibriumData solve_branch_points(const Real& v2, const PrecisionContext& ctx);
AjResiduals aj_residuals(const EquilibriumData& eq);

// sqrt((y^2 - l2^2)(y^2 - l3^2)) ~ y^2 at infinity, cut on [-l3,-l2] U [l2,l3]
Complex q_value(const Complex& y, Side side, const Real& l2, const Real& l3);
Complex q_value(const PathPoint& p, const Real& l2, const Real& l3);
bool on_support(const Real& x, const Real& l2, const Real& l3);

Complex potential_v0(const Complex& y, const Real& v2);
Complex nu_value(const Complex& y, Side side, const EquilibriumData& eq);

// regularized: l = -2 (l3^2/4 - log l3 - int_{l3}^inf (nu - s/2 + 1/s) ds)
Real lagrange_l(EquilibriumData& eq, const PrecisionContext& ctx);
// -2 [V0(Y)/2 - log Y - int_{l3}^Y nu]; converges like Y^-2
Real lagrange_l_truncated(const EquilibriumData& eq, const Real& Y, const PrecisionContext& ctx);

// int_{l3}^y nu(s) ds along l3 -> l3 + i kappa -> Re y + i kappa -> y (mirrored below the axis)
class GTilde {
 public:
  GTilde(const EquilibriumData& eq, const PrecisionContext& ctx);
  Complex operator()(const Complex& y, Side side) const;
  Complex g(const Complex& y, Side side) const;  // V0/2 - g~ + l/2
  const EquilibriumData& eq() const { return eq_; }

 private:
  Complex upper(const Complex& y) const;
  EquilibriumData eq_;
  PrecisionContext ctx_;
  Real kappa_;
  Complex base_;  // int_{l3}^{l3 + i kappa}
};

Complex g_value(const Complex& y, Side side, const EquilibriumData& eq, const PrecisionContext& ctx);

struct EquilibriumReport {
  Real v2;
  Real lambda2, lambda3;
  Complex lambda1;
  Real l;
  Real aj_residual;
  Real support_residual;  // (i)  |g+ + g- - V0 - l| on Sigma
  Real outer_jump;        // (ii) |g+ - g- - 2 pi i| on (-inf, -l3)
  Real gap_jump;          // (iii) |g+ - g- - pi i| on (-l2, l2)
  Real margin_max;        // (iv) max of Re(g+ + g-) - V0 - l off Sigma; must be < 0
  Real residue_infinity;  // (1/2 pi i) oint nu on a large circle, expect -1
  Real residue_zero;      // same on a small circle around 0, expect 0
  int grid_points = 0;
  bool passed(double tol) const;
};

EquilibriumReport verify_equilibrium(EquilibriumData& eq, int grid_n, const PrecisionContext& ctx);

struct ResidueChecks {
  Complex at_infinity;
  Complex at_zero;
};
ResidueChecks residue_checks(const EquilibriumData& eq, const PrecisionContext& ctx);

}  // namespace sgue
