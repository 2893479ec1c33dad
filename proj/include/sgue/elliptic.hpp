#pragma once

#include "sgue/equilibrium.hpp"

#include <functional>

namespace sgue {

struct CurveData {
  EquilibriumData eq;
  Real K0;
  Complex xi;  // -2 pi i / (K0 l2 l3)
  Complex Pi;  // b-period, Im Pi > 0
  Real u_inf;
  Real d;  // -1/4
  Real K0_error, Pi_error, u_inf_error;
};

CurveData curve_data(const EquilibriumData& eq, const PrecisionContext& ctx);

struct ThetaValue {
  Complex value;
  int terms = 0;         // |m| <= terms
  Real tail_bound;       // geometric bound on the dropped terms
};
ThetaValue theta_series(const Complex& s, const Complex& Pi, const PrecisionContext& ctx);
Complex theta(const Complex& s, const Complex& Pi, const PrecisionContext& ctx);

// u(y) = int_{l3}^y ds / (K0 q(s)) along the same polyline as g~
class AbelMap {
 public:
  AbelMap(const CurveData& cd, const PrecisionContext& ctx);
  Complex operator()(const Complex& y, Side side) const;

 private:
  Complex upper(const Complex& y) const;
  CurveData cd_;
  PrecisionContext ctx_;
  Real kappa_;
  Complex base_;
};

// ((y - l2)(y + l3) / ((y + l2)(y - l3)))^(1/4), factor by factor
Complex gamma_factor(const Complex& y, Side side, const Real& l2, const Real& l3);

// int of f(p, q(p)) dp over the half circle |p| = l2 from -l2 to l2, through +i l2 when upper
Complex gap_arc_integral(const std::function<Complex(const Complex&, const Complex&)>& f, bool upper,
                         const CurveData& cd, const PrecisionContext& ctx);

Complex f_value(const Complex& y, Side side, const Real& v1, const CurveData& cd, const PrecisionContext& ctx);

class OuterParametrix {
 public:
  OuterParametrix(int N, const Real& v1, const CurveData& cd, const PrecisionContext& ctx);
  Matrix2 operator()(const Complex& y, Side side) const;
  Matrix2 gap_jump() const;    // diag(e^{N pi i + xi v1}, e^{-N pi i - xi v1})
  static Matrix2 cut_jump();   // (0 1; -1 0)
  const Matrix2& H() const { return H_; }

 private:
  Complex th(const Complex& s) const;
  int N_;
  Real v1_;
  CurveData cd_;
  PrecisionContext ctx_;
  AbelMap abel_;
  Real W_;  // -N/2 - v1 xi / (2 pi i)
  Matrix2 H_;
};

Matrix2 outer_parametrix(const Complex& y, Side side, int N, const Real& v1, const CurveData& cd,
                         const PrecisionContext& ctx);

struct OuterReport {
  int N = 0;
  Real v1, v2;
  Real cut_jump;       // max |S+ - S- J| on Sigma
  Real gap_jump;       // max |S+ - S- J| on (-l2, l2)
  Real det_residual;   // max |det S - 1| on a complex grid
  Real infinity_1e3;   // |S(i 10^3) - I|
  Real infinity_1e4;   // |S(i 10^4) - I|
  Real decay_ratio;
  int grid_points = 0;
  bool passed(double jump_tol, double det_tol) const;
};

OuterReport verify_outer(int N, const Real& v1, const CurveData& cd, int grid_n, const PrecisionContext& ctx);

}  // namespace sgue
