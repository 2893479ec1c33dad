#include "sgue/equilibrium.hpp"

#include "sgue/special.hpp"

#include <algorithm>
#include <cmath>

namespace sgue {

namespace mp = boost::multiprecision;

Real AjResiduals::max() const {
  return std::max({Real(mp::abs(quartic)), Real(mp::abs(sum)), Real(mp::abs(inverse)), Real(mp::abs(product))});
}

EquilibriumData solve_branch_points(const Real& v2_in, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  Real v2 = v2_in;
  if (!(v2 > 0)) throw DomainError("solve_branch_points: v2 must be positive");
  Real v2sq = v2 * v2;
  auto quartic = [&](const Real& A) { return A * A * A * (A - 2) - v2sq; };
  Real lo = -mp::sqrt(v2);
  EquilibriumData eq;
  eq.v2 = v2;
  try {
    eq.A1 = find_root_bracketed(quartic, lo, Real(0), ctx,
                                pow2(-static_cast<long>(ctx.mantissa_bits) + 8) * mp::abs(lo));
  } catch (const BracketError& e) {
    throw Error(std::string("internal: quartic root not bracketed: ") + e.what());
  }
  Real b = 2 - eq.A1;
  Real c = v2sq / (eq.A1 * eq.A1);
  Real disc = b * b - c;
  if (disc < 0) throw Error("internal: complex roots for A2, A3");
  eq.A3 = b + mp::sqrt(disc);
  eq.A2 = c / eq.A3;
  eq.lambda2 = mp::sqrt(eq.A2);
  eq.lambda3 = mp::sqrt(eq.A3);
  eq.lambda1 = Complex(Real(0), mp::sqrt(-eq.A1));
  eq.mantissa_bits = ctx.mantissa_bits;
  return eq;
}

AjResiduals aj_residuals(const EquilibriumData& eq) {
  AjResiduals r;
  r.quartic = eq.A1 * eq.A1 * eq.A1 * (eq.A1 - 2) - eq.v2 * eq.v2;
  r.sum = eq.A1 + (eq.A2 + eq.A3) / 2 - 2;
  r.inverse = 1 / eq.A1 + (1 / eq.A2 + 1 / eq.A3) / 2;
  r.product = eq.A1 * eq.lambda2 * eq.lambda3 + eq.v2;
  return r;
}

namespace {

Complex sqrt_side(const Real& r, Side side) {
  if (r >= 0) return Complex(mp::sqrt(r));
  Real s = mp::sqrt(-r);
  return side == Side::minus ? Complex(Real(0), -s) : Complex(Real(0), s);
}

}  // namespace

bool on_support(const Real& x, const Real& l2, const Real& l3) {
  Real a = mp::abs(x);
  return a >= l2 && a <= l3;
}

Complex q_value(const Complex& y, Side side, const Real& l2, const Real& l3) {
  if (y.im == 0) {
    const Real& x = y.re;
    if (side == Side::none && on_support(x, l2, l3))
      throw BranchError("q on the cut needs a side");
    Side s = side == Side::none ? Side::plus : side;
    return sqrt_side(x - l2, s) * sqrt_side(x + l2, s) * sqrt_side(x - l3, s) * sqrt_side(x + l3, s);
  }
  return sqrt(y - l2) * sqrt(y + l2) * (sqrt(y - l3) * sqrt(y + l3));
}

Complex q_value(const PathPoint& p, const Real& l2, const Real& l3) {
  Complex d1 = p.minus(Complex(l2)), d2 = p.minus(Complex(-l2)), d3 = p.minus(Complex(l3)),
          d4 = p.minus(Complex(-l3));
  return sqrt(d1) * sqrt(d2) * (sqrt(d3) * sqrt(d4));
}

Complex potential_v0(const Complex& y, const Real& v2) {
  Complex y2 = y * y;
  return Complex(v2 / 2) / y2 + y2 / Real(2);
}

Complex nu_value(const Complex& y, Side side, const EquilibriumData& eq) {
  if (y.re == 0 && y.im == 0) throw DomainError("nu has a pole at 0");
  Complex q = q_value(y, side, eq.lambda2, eq.lambda3);
  Complex y2 = y * y;
  return (y2 - eq.A1) * q / (Real(2) * y2 * y);
}

namespace {

Complex nu_at(const PathPoint& p, const EquilibriumData& eq) {
  Complex q = q_value(p, eq.lambda2, eq.lambda3);
  Complex y2 = p.z * p.z;
  return (y2 - eq.A1) * q / (Real(2) * y2 * p.z);
}

}  // namespace

Real lagrange_l(EquilibriumData& eq, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  const Real a = eq.A2, b = eq.A3, ab = a * b, apb = a + b;
  const Real& l3 = eq.lambda3;
  // nu - s/2 + 1/s = (s/2)(D1 - A1 u D), u = 1/s^2, D = sqrt(P) - 1, D1 = D + (a+b)u/2
  auto r = [&](const RealPoint& p) {
    const Real& s = p.x;
    Real u = 1 / (s * s);
    Real P = (1 - a * u) * (p.minus(l3) * (s + l3)) * u;
    Real sp = mp::sqrt(P);
    Real D = u * (ab * u - apb) / (sp + 1);
    Real D1 = (ab * u * u + apb * u * D / 2) / (sp + 1);
    return s / 2 * (D1 - eq.A1 * u * D);
  };
  auto I = integrate_real(r, HalfLine{l3, Endpoint::inv_sqrt}, ctx);
  Real l = -2 * (l3 * l3 / 4 - mp::log(l3) - I.value);
  eq.l = l;
  return l;
}

Real lagrange_l_truncated(const EquilibriumData& eq, const Real& Y, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  auto f = [&](const RealPoint& p) {
    Real s = p.x;
    Real q = mp::sqrt(p.minus(eq.lambda3) * (s + eq.lambda3) * (s - eq.lambda2) * (s + eq.lambda2));
    return (s * s - eq.A1) * q / (2 * s * s * s);
  };
  auto I = integrate_real(f, Interval{eq.lambda3, Y, Endpoint::inv_sqrt, Endpoint::regular}, ctx);
  Real v0 = eq.v2 / (2 * Y * Y) + Y * Y / 2;
  return -2 * (v0 / 2 - mp::log(Y) - I.value);
}

GTilde::GTilde(const EquilibriumData& eq, const PrecisionContext& ctx) : eq_(eq), ctx_(ctx) {
  PrecisionScope scope(ctx);
  kappa_ = eq.lambda2;
  Complex a(eq.lambda3), b(eq.lambda3, kappa_);
  auto f = [this](const PathPoint& p) { return nu_at(p, eq_); };
  base_ = integrate_path(f, {Segment{a, b, Endpoint::inv_sqrt, Endpoint::regular}}, ctx).value;
}

Complex GTilde::upper(const Complex& y) const {
  PrecisionScope scope(ctx_);
  if (y.re == eq_.lambda3 && y.im == 0) return Complex();
  Complex p1(eq_.lambda3, kappa_), p2(y.re, kappa_);
  bool ends_at_branch = y.im == 0 && (mp::abs(y.re) == eq_.lambda2 || mp::abs(y.re) == eq_.lambda3);
  auto f = [this](const PathPoint& p) { return nu_at(p, eq_); };
  std::vector<Segment> path{Segment{p1, p2},
                            Segment{p2, y, Endpoint::regular, ends_at_branch ? Endpoint::inv_sqrt : Endpoint::regular}};
  return base_ + integrate_path(f, path, ctx_).value;
}

Complex GTilde::operator()(const Complex& y, Side side) const {
  if (y.re == 0 && y.im == 0) throw DomainError("g~ is singular at 0");
  if (y.im > 0) return upper(y);
  if (y.im < 0) return conj(upper(conj(y)));
  const Real& x = y.re;
  if (side == Side::none) {
    bool cut = on_support(x, eq_.lambda2, eq_.lambda3) || x < -eq_.lambda3 || mp::abs(x) < eq_.lambda2;
    if (cut) throw BranchError("g on a cut needs a side");
    return upper(y);
  }
  Complex v = upper(y);
  return side == Side::plus ? v : conj(v);
}

Complex GTilde::g(const Complex& y, Side side) const {
  if (!eq_.l) throw InputError("g needs the Lagrange constant; call lagrange_l first");
  PrecisionScope scope(ctx_);
  return potential_v0(y, eq_.v2) / Real(2) - (*this)(y, side) + Complex(*eq_.l / 2);
}

Complex g_value(const Complex& y, Side side, const EquilibriumData& eq, const PrecisionContext& ctx) {
  return GTilde(eq, ctx).g(y, side);
}

ResidueChecks residue_checks(const EquilibriumData& eq, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  auto nu = [&](const Complex& y) { return nu_value(y, Side::none, eq); };
  Complex two_pi_i(Real(0), 2 * pi());
  ResidueChecks r;
  r.at_infinity = integrate_circle(nu, Complex(), 2 * eq.lambda3 + 1, ctx).value / two_pi_i;
  r.at_zero = integrate_circle(nu, Complex(), eq.lambda2 / 2, ctx).value / two_pi_i;
  return r;
}

bool EquilibriumReport::passed(double tol) const {
  Real t(tol);
  return support_residual < t && outer_jump < t && gap_jump < t && margin_max < 0;
}

EquilibriumReport verify_equilibrium(EquilibriumData& eq, int n, const PrecisionContext& ctx) {
  if (n < 2) throw InputError("verify_equilibrium: grid needs at least 2 points");
  PrecisionScope scope(ctx);
  if (!eq.l) lagrange_l(eq, ctx);
  GTilde gt(eq, ctx);
  const Real& l2 = eq.lambda2;
  const Real& l3 = eq.lambda3;
  const Real l = *eq.l;
  const Real m = l2 / 1000;
  const Complex pi_i(Real(0), pi());

  EquilibriumReport rep;
  rep.v2 = eq.v2;
  rep.lambda1 = eq.lambda1;
  rep.lambda2 = l2;
  rep.lambda3 = l3;
  rep.l = l;
  rep.aj_residual = aj_residuals(eq).max();
  rep.support_residual = 0;
  rep.outer_jump = 0;
  rep.gap_jump = 0;
  rep.margin_max = -std::numeric_limits<Real>::infinity();

  auto upd = [](Real& acc, const Real& v) {
    if (v > acc) acc = v;
  };
  auto v0 = [&](const Real& x) { return eq.v2 / (2 * x * x) + x * x / 2; };
  auto gplus = [&](const Real& x) { return gt.g(Complex(x), Side::plus); };

  // (i) support, both intervals
  for (int k = 0; k < n; ++k) {
    Real x = (l2 + m) + (l3 - l2 - 2 * m) * k / (n - 1);
    for (int sgn : {1, -1}) {
      Real xs = sgn * x;
      Complex gp = gplus(xs);
      Complex gm = conj(gp);
      upd(rep.support_residual, abs(gp + gm - Complex(v0(xs) + l)));
      ++rep.grid_points;
    }
  }
  // (ii) and (iv) outside the support
  Real span = 10 * l3 / m;
  for (int k = 0; k < n; ++k) {
    Real x = l3 + m * mp::pow(span, Real(k) / (n - 1));
    Complex gp = gplus(-x);
    upd(rep.outer_jump, abs(gp - conj(gp) - Real(2) * pi_i));
    upd(rep.margin_max, 2 * gp.re - v0(x) - l);
    Complex gr = gt.g(Complex(x), Side::none);
    upd(rep.margin_max, 2 * gr.re - v0(x) - l);
    rep.grid_points += 2;
  }
  // (iii) and (iv) in the gap; n midpoints never hit 0 for even n
  int ng = n % 2 == 0 ? n : n + 1;
  for (int k = 0; k < ng; ++k) {
    Real x = -l2 + m + (2 * l2 - 2 * m) * (Real(k) + Real(0.5)) / ng;
    Complex gp = gplus(x);
    upd(rep.gap_jump, abs(gp - conj(gp) - pi_i));
    upd(rep.margin_max, 2 * gp.re - v0(x) - l);
    ++rep.grid_points;
  }
  auto res = residue_checks(eq, ctx);
  rep.residue_infinity = res.at_infinity.re;
  rep.residue_zero = abs(res.at_zero);
  return rep;
}

}  // namespace sgue
