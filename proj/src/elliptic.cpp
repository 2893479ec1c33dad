#include "sgue/elliptic.hpp"

#include <algorithm>

namespace sgue {

namespace mp = boost::multiprecision;

namespace {

Complex sqrt_side(const Real& r, Side side) {
  if (r >= 0) return Complex(mp::sqrt(r));
  Real s = mp::sqrt(-r);
  return side == Side::minus ? Complex(Real(0), -s) : Complex(Real(0), s);
}

Complex root4_side(const Real& r, Side side) { return sqrt(sqrt_side(r, side)); }

}  // namespace

CurveData curve_data(const EquilibriumData& eq, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  const Real& l2 = eq.lambda2;
  const Real& l3 = eq.lambda3;
  CurveData cd;
  cd.eq = eq;
  cd.d = Real(-1) / 4;

  // on the gap q = -sqrt((l2^2 - s^2)(l3^2 - s^2)) < 0, so K0 = 2 int ds / |q|
  auto gap = [&](const RealPoint& p) {
    return 1 / mp::sqrt(-p.minus(l2) * p.minus(-l2) * (l3 - p.x) * (l3 + p.x));
  };
  auto k0 = integrate_real(gap, Interval{-l2, l2, Endpoint::inv_sqrt, Endpoint::inv_sqrt}, ctx);
  cd.K0 = 2 * k0.value;
  cd.K0_error = 2 * k0.error_bound;

  // q+ = i |q| on (l2, l3); int_{l3}^{l2} ds / q+ = i int_{l2}^{l3} ds / |q|
  auto band = [&](const RealPoint& p) {
    return 1 / mp::sqrt(p.minus(l2) * (p.x + l2) * -p.minus(l3) * (p.x + l3));
  };
  auto pb = integrate_real(band, Interval{l2, l3, Endpoint::inv_sqrt, Endpoint::inv_sqrt}, ctx);
  cd.Pi = Complex(Real(0), 2 * pb.value / cd.K0);
  cd.Pi_error = 2 * (pb.error_bound + pb.value * cd.K0_error / cd.K0) / cd.K0;
  if (!(cd.Pi.im > 0)) throw BranchError("b-period with Im Pi <= 0");

  auto outer = [&](const RealPoint& p) {
    return 1 / mp::sqrt(p.minus(l3) * (p.x + l3) * (p.x - l2) * (p.x + l2));
  };
  auto ui = integrate_real(outer, HalfLine{l3, Endpoint::inv_sqrt}, ctx);
  cd.u_inf = ui.value / cd.K0;
  cd.u_inf_error = (ui.error_bound + ui.value * cd.K0_error / cd.K0) / cd.K0;

  cd.xi = Complex(Real(0), -2 * pi() / (cd.K0 * l2 * l3));
  return cd;
}

ThetaValue theta_series(const Complex& s, const Complex& Pi, const PrecisionContext& ctx) {
  if (!(Pi.im > 0)) throw DomainError("theta needs Im Pi > 0");
  PrecisionScope scope(ctx);
  const Real tol = ctx.rel_tol();
  Complex a = exp(I_unit() * pi() * Pi);
  Complex b = exp(I_unit() * (2 * pi()) * s);
  Complex binv = Complex(1) / b;
  Complex a2 = a * a;
  Complex pw = a;  // a^(2m-1)
  Complex tp(1), tm(1);
  ThetaValue out;
  out.value = Complex(1);
  Real biggest(1);
  for (int m = 1; m < 1000000; ++m) {
    tp = tp * pw * b;
    tm = tm * pw * binv;
    out.value += tp + tm;
    pw *= a2;
    Real atp = abs(tp), atm = abs(tm);
    biggest = std::max({biggest, atp, atm});
    Real rp = abs(pw * b), rm = abs(pw * binv);
    if (rp < Real(0.5) && rm < Real(0.5)) {
      Real tail = atp * rp / (1 - rp) + atm * rm / (1 - rm);
      Real scale = std::max(abs(out.value), Real(biggest * ctx.eps()));
      if (tail <= tol * scale) {
        out.terms = m;
        out.tail_bound = tail;
        return out;
      }
    }
  }
  throw ConvergenceError("theta series did not converge", to_double(abs(out.value)), 0.0);
}

Complex theta(const Complex& s, const Complex& Pi, const PrecisionContext& ctx) {
  return theta_series(s, Pi, ctx).value;
}

AbelMap::AbelMap(const CurveData& cd, const PrecisionContext& ctx) : cd_(cd), ctx_(ctx) {
  PrecisionScope scope(ctx);
  kappa_ = cd.eq.lambda2;
  Complex a(cd.eq.lambda3), b(cd.eq.lambda3, kappa_);
  auto f = [this](const PathPoint& p) { return Complex(1) / (cd_.K0 * q_value(p, cd_.eq.lambda2, cd_.eq.lambda3)); };
  base_ = integrate_path(f, {Segment{a, b, Endpoint::inv_sqrt, Endpoint::regular}}, ctx).value;
}

Complex AbelMap::upper(const Complex& y) const {
  PrecisionScope scope(ctx_);
  const Real& l2 = cd_.eq.lambda2;
  const Real& l3 = cd_.eq.lambda3;
  if (y.re == l3 && y.im == 0) return Complex();
  Complex p1(l3, kappa_), p2(y.re, kappa_);
  bool branch = y.im == 0 && (mp::abs(y.re) == l2 || mp::abs(y.re) == l3);
  auto f = [this](const PathPoint& p) { return Complex(1) / (cd_.K0 * q_value(p, cd_.eq.lambda2, cd_.eq.lambda3)); };
  std::vector<Segment> path{Segment{p1, p2},
                            Segment{p2, y, Endpoint::regular, branch ? Endpoint::inv_sqrt : Endpoint::regular}};
  return base_ + integrate_path(f, path, ctx_).value;
}

Complex AbelMap::operator()(const Complex& y, Side side) const {
  if (y.im > 0) return upper(y);
  if (y.im < 0) return conj(upper(conj(y)));
  if (side == Side::none) {
    if (mp::abs(y.re) <= cd_.eq.lambda3) throw BranchError("Abel map on a cut needs a side");
    return upper(y);
  }
  Complex v = upper(y);
  return side == Side::plus ? v : conj(v);
}

Complex gamma_factor(const Complex& y, Side side, const Real& l2, const Real& l3) {
  if (y.im == 0) {
    const Real& x = y.re;
    if (side == Side::none) {
      if (mp::abs(x) <= l3) throw BranchError("gamma on [-l3, l3] needs a side");
      side = Side::plus;
    }
    return root4_side(x - l2, side) * root4_side(x + l3, side) /
           (root4_side(x + l2, side) * root4_side(x - l3, side));
  }
  return root4(y - l2) * root4(y + l3) / (root4(y + l2) * root4(y - l3));
}

Complex gap_arc_integral(const std::function<Complex(const Complex&, const Complex&)>& f, bool upper,
                         const CurveData& cd, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  const Real& l2 = cd.eq.lambda2;
  const Real& l3 = cd.eq.lambda3;
  // p = l2 e^{i phi} with phi in [pi, 2 pi] (lower) or [0, pi] (upper, traversed backwards);
  // e^{i off} - 1 is formed without cancellation next to the endpoints
  Real a = upper ? Real(0) : pi(), b = upper ? pi() : 2 * pi();
  const Real pi_v = pi();
  auto g = [&](const RealPoint& pt) {
    Real s = mp::sin(pt.off);
    Real h = mp::sin(pt.off / 2);
    Complex em1(-2 * h * h, s);  // e^{i off} - 1
    Complex p = polar(l2, pt.x);
    Complex dm, dp;  // p - l2, p + l2
    const Real& end = pt.anchor == 0 ? *pt.a : *pt.b;
    if (end == pi_v) {  // p = -l2 e^{i off}
      dp = -(em1 * l2);
      dm = p - Complex(l2);
    } else {  // p = l2 e^{i off}
      dm = em1 * l2;
      dp = p + Complex(l2);
    }
    Complex q = sqrt(dm) * sqrt(dp) * (sqrt(p - Complex(l3)) * sqrt(p + Complex(l3)));
    return f(p, q) * (I_unit() * p);
  };
  Complex v = integrate_complex(g, Interval{a, b, Endpoint::inv_sqrt, Endpoint::inv_sqrt}, ctx).value;
  return upper ? -v : v;
}

namespace {

// int_{Sigma_j} ds / (s q+(s) (s - y)) and int_{-l2}^{l2} ds / (q(s)(s - y)) with the
// contour moved away from y when y is close
struct CauchyParts {
  const CurveData& cd;
  const PrecisionContext& ctx;
  Real l2, l3, m;

  CauchyParts(const CurveData& c, const PrecisionContext& x)
      : cd(c), ctx(x), l2(c.eq.lambda2), l3(c.eq.lambda3) {
    m = std::min(Real(l2 / 2), Real((l3 - l2) / 4));
  }

  Complex band(const Complex& y, Side side, int sgn) const {
    Real c = sgn * (l2 + l3) / 2;
    Real rho = (l3 - l2) / 2 + m;
    if (abs(y - Complex(c)) < rho - m / 2) {
      auto h = [&](const Complex& s) { return Complex(1) / (s * q_value(s, Side::none, l2, l3) * (s - y)); };
      Complex ccw = integrate_circle(h, Complex(c), rho, ctx).value;
      Complex qy = q_value(y, side, l2, l3);
      return -ccw / Real(2) + Complex(Real(0), pi()) / (y * qy);
    }
    if (sgn > 0) {
      // q+ = i R on (l2, l3)
      auto f = [&](const RealPoint& p) {
        Real R = mp::sqrt(p.minus(l2) * (p.x + l2) * -p.minus(l3) * (p.x + l3));
        return Complex(1) / (Complex(Real(0), p.x * R) * (Complex(p.x) - y));
      };
      return integrate_complex(f, Interval{l2, l3, Endpoint::inv_sqrt, Endpoint::inv_sqrt}, ctx).value;
    }
    // q+ = -i R on (-l3, -l2)
    auto f = [&](const RealPoint& p) {
      Real R = mp::sqrt(-p.minus(-l2) * (l2 - p.x) * (l3 - p.x) * p.minus(-l3));
      return Complex(1) / (Complex(Real(0), -p.x * R) * (Complex(p.x) - y));
    };
    return integrate_complex(f, Interval{-l3, -l2, Endpoint::inv_sqrt, Endpoint::inv_sqrt}, ctx).value;
  }

  Complex gap(const Complex& y, Side side) const {
    bool near = mp::abs(y.im) < m / 2 && mp::abs(y.re) < l2 + m / 2;
    if (near) {
      bool from_above = y.im > 0 || (y.im == 0 && side != Side::minus);
      if (y.im == 0 && side == Side::none && mp::abs(y.re) < l2) throw BranchError("F on the gap needs a side");
      auto f = [&](const Complex& p, const Complex& q) { return Complex(1) / (q * (p - y)); };
      return gap_arc_integral(f, !from_above, cd, ctx);
    }
    auto f = [&](const RealPoint& p) {
      Real G = mp::sqrt(-p.minus(l2) * p.minus(-l2) * (l3 - p.x) * (l3 + p.x));
      return Complex(-1) / (G * (Complex(p.x) - y));
    };
    return integrate_complex(f, Interval{-l2, l2, Endpoint::inv_sqrt, Endpoint::inv_sqrt}, ctx).value;
  }
};

}  // namespace

Complex f_value(const Complex& y, Side side, const Real& v1, const CurveData& cd, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  if (v1 == 0) return Complex();
  if (y.re == 0 && y.im == 0 && side == Side::none) throw BranchError("F on the gap needs a side");
  CauchyParts parts(cd, ctx);
  Complex q = q_value(y, side == Side::none ? Side::plus : side, parts.l2, parts.l3);
  if (y.im == 0 && side == Side::none && on_support(y.re, parts.l2, parts.l3))
    throw BranchError("F on a cut needs a side");
  Complex sum = parts.band(y, side, -1) + parts.band(y, side, 1) + cd.xi * parts.gap(y, side);
  return v1 * q * sum / Complex(Real(0), 2 * pi());
}

OuterParametrix::OuterParametrix(int N, const Real& v1, const CurveData& cd, const PrecisionContext& ctx)
    : N_(N), v1_(v1), cd_(cd), ctx_(ctx), abel_(cd, ctx) {
  PrecisionScope scope(ctx);
  // xi / (2 pi i) is real
  W_ = Real(-N) / 2 - v1 * cd.xi.im / (2 * pi());
  const Real& d = cd.d;
  Complex ui(cd.u_inf);
  Complex t0 = th(ui + Complex(d));
  H_ = Matrix2::diag(t0 / th(ui + Complex(W_ + d)), t0 / th(-ui + Complex(W_ - d)));
}

Complex OuterParametrix::th(const Complex& s) const {
  Complex v = theta(s, cd_.Pi, ctx_);
  if (abs(v) < pow2(-static_cast<long>(ctx_.mantissa_bits) / 2))
    throw SingularPointError("theta vanishes at argument " + to_string(s.re, 12) + " + " + to_string(s.im, 12) + "i");
  return v;
}

Matrix2 OuterParametrix::operator()(const Complex& y, Side side) const {
  PrecisionScope scope(ctx_);
  const Real& l2 = cd_.eq.lambda2;
  const Real& l3 = cd_.eq.lambda3;
  Real margin = l2 / 1000000;
  for (Real b : {l2, l3, Real(-l2), Real(-l3)})
    if (abs(y - Complex(b)) < margin) throw SingularPointError("outer parametrix evaluated at a branch point");
  Complex u = abel_(y, side);
  Complex g = gamma_factor(y, side, l2, l3);
  Complex gi = Complex(1) / g;
  Complex cp = (g + gi) / Real(2);
  Complex cm = g - gi;
  Complex W(W_), d(cd_.d);
  Complex den_plus = th(u + d);
  Matrix2 S;
  S(0, 0) = cp * th(u + W + d) / den_plus;
  S(0, 1) = cm / Complex(Real(0), -2) * th(-u + W + d) / th(-u + d);
  S(1, 0) = cm / Complex(Real(0), 2) * th(u + W - d) / th(u - d);
  S(1, 1) = cp * th(-u + W - d) / den_plus;
  return H_ * S;
}

Matrix2 OuterParametrix::gap_jump() const {
  PrecisionScope scope(ctx_);
  Complex e = exp(Complex(Real(0), N_ * pi()) + cd_.xi * v1_);
  return Matrix2::diag(e, Complex(1) / e);
}

Matrix2 OuterParametrix::cut_jump() { return Matrix2{{Complex(0), Complex(1), Complex(-1), Complex(0)}}; }

Matrix2 outer_parametrix(const Complex& y, Side side, int N, const Real& v1, const CurveData& cd,
                         const PrecisionContext& ctx) {
  return OuterParametrix(N, v1, cd, ctx)(y, side);
}

bool OuterReport::passed(double jump_tol, double det_tol) const {
  Real r = decay_ratio;
  return cut_jump < jump_tol && gap_jump < jump_tol && det_residual < det_tol && r > 8 && r < 12;
}

OuterReport verify_outer(int N, const Real& v1, const CurveData& cd, int n, const PrecisionContext& ctx) {
  if (n < 2) throw InputError("verify_outer: grid needs at least 2 points");
  PrecisionScope scope(ctx);
  OuterParametrix S(N, v1, cd, ctx);
  const Real& l2 = cd.eq.lambda2;
  const Real& l3 = cd.eq.lambda3;
  const Real m = l2 / 1000;
  OuterReport rep;
  rep.N = N;
  rep.v1 = v1;
  rep.v2 = cd.eq.v2;
  rep.cut_jump = 0;
  rep.gap_jump = 0;
  rep.det_residual = 0;
  auto upd = [](Real& acc, const Real& v) {
    if (v > acc) acc = v;
  };
  const Matrix2 Jc = OuterParametrix::cut_jump();
  const Matrix2 Jg = S.gap_jump();
  for (int k = 0; k < n; ++k) {
    Real x = (l2 + m) + (l3 - l2 - 2 * m) * k / (n - 1);
    for (int sgn : {1, -1}) {
      Complex y(sgn * x);
      upd(rep.cut_jump, (S(y, Side::plus) - S(y, Side::minus) * Jc).max_abs());
      ++rep.grid_points;
    }
  }
  for (int k = 0; k < n; ++k) {
    Complex y(-l2 + m + (2 * l2 - 2 * m) * (Real(k) + Real(0.5)) / n);
    upd(rep.gap_jump, (S(y, Side::plus) - S(y, Side::minus) * Jg).max_abs());
    ++rep.grid_points;
  }
  Real two_pi = 2 * pi();
  for (int k = 0; k < n; ++k) {
    Real r = l2 / 2 + (3 * l3 - l2 / 2) * k / (n - 1);
    Complex y = polar(r, two_pi * (Real(k) + Real(0.37)) / n);
    upd(rep.det_residual, abs(S(y, Side::none).det() - Complex(1)));
    ++rep.grid_points;
  }
  rep.infinity_1e3 = (S(Complex(Real(0), Real(1000)), Side::none) - Matrix2::identity()).max_abs();
  rep.infinity_1e4 = (S(Complex(Real(0), Real(10000)), Side::none) - Matrix2::identity()).max_abs();
  rep.decay_ratio = rep.infinity_1e3 / rep.infinity_1e4;
  return rep;
}

}  // namespace sgue
