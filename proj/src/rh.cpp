#include "sgue/rh.hpp"

#include "sgue/equilibrium.hpp"
#include "sgue/special.hpp"

#include <algorithm>

namespace sgue {

namespace mp = boost::multiprecision;

RHSolution::RHSolution(const ModelParams& p, const PrecisionContext& ctx, const MomentCache* cache)
    : params_(p), ctx_(ctx) {
  if (p.N > 12) throw InputError("RH checks are limited to N <= 12");
  if (!(p.z > 0)) throw DomainError("RH solution needs z > 0");
  PrecisionScope scope(ctx);
  shape_ = WeightShape::scaled(p);
  auto table = moment_table(p, 2 * static_cast<std::size_t>(p.N), Variables::scaled, ctx, cache);
  fact_ = factorize(table, ctx);
}

Real RHSolution::log_weight(const Real& x) const { return shape_.exponent(x); }

Real RHSolution::weight(const Real& x) const {
  if (x == 0) return Real(0);
  return mp::exp(shape_.exponent(x));
}

Complex RHSolution::weight(const Complex& s) const {
  if (s.im == 0) return Complex(weight(s.re));
  Complex inv = Complex(1) / s;
  Complex e = inv * inv * -shape_.alpha + inv * shape_.beta - s * s * shape_.gamma;
  return exp(e);
}

Complex RHSolution::kappa() const {
  PrecisionScope scope(ctx_);
  return Complex(Real(0), -2 * pi() / fact_.norms[params_.N - 1]);
}

void RHSolution::polys(const Complex& y, int n, std::vector<Complex>& p, std::vector<Complex>* dp) const {
  p.assign(n + 1, Complex());
  p[0] = Complex(1);
  if (dp) dp->assign(n + 1, Complex());
  if (n == 0) return;
  p[1] = y - Complex(fact_.alpha[0]);
  if (dp) (*dp)[1] = Complex(1);
  for (int k = 1; k < n; ++k) {
    Complex a = y - Complex(fact_.alpha[k]);
    p[k + 1] = a * p[k] - p[k - 1] * fact_.beta[k];
    if (dp) (*dp)[k + 1] = p[k] + a * (*dp)[k] - (*dp)[k - 1] * fact_.beta[k];
  }
}

std::array<Complex, 4> RHSolution::cauchy(const Complex& y, Side side) const {
  PrecisionScope scope(ctx_);
  const int N = params_.N;
  const Real x0 = y.re;
  const long thresh_bits = static_cast<long>(ctx_.mantissa_bits) + 16;
  const bool negligible = y.re == 0 || log_weight(x0) < -thresh_bits * ln2();

  // reflect s -> -s so that the dent, if any, sits on the positive axis
  const int refl = x0 < 0 ? -1 : 1;
  bool dent = false;
  Real radius(0);
  bool below = false;  // dent passes below the centre in the s variable
  if (!negligible) {
    if (y.im == 0) {
      if (side == Side::none) throw BranchError("Cauchy transform on the real axis needs a side");
      dent = true;
      radius = Real(kDentRadius);
      below = side == Side::plus;
    } else if (mp::abs(y.im) < Real(kDirectIm)) {
      dent = true;
      radius = Real(kDirectIm);
      below = y.im > 0;
    }
  }
  if (dent && mp::abs(x0) < 2 * radius) throw InputError("Cauchy transform: point too close to 0 for a contour dent");
  if (refl < 0) below = !below;
  const Real c = mp::abs(x0);

  std::vector<Complex> pv;
  // s = refl * u; the u-line runs the opposite way when refl < 0, so int g(s) ds = int g(refl u) du
  auto accumulate = [&](const Complex& u, const Complex& du, std::vector<Real>& out) {
    Complex s = u * Real(refl);
    Complex w = weight(s);
    polys(s, N, pv);
    Complex inv = Complex(1) / (s - y);
    Complex f1 = w * inv * du;
    Complex f2 = f1 * inv;
    Complex v[4] = {pv[N] * f1, pv[N - 1] * f1, pv[N] * f2, pv[N - 1] * f2};
    for (int k = 0; k < 4; ++k) {
      out[2 * k] += v[k].re;
      out[2 * k + 1] += v[k].im;
    }
  };

  std::vector<Real> total(8, Real(0));
  auto add = [&](const VectorQuadratureResult& r) {
    for (int k = 0; k < 8; ++k) total[k] += r.value[k];
  };
  auto on_line = [&](int sign) {
    return [&accumulate, sign](const RealPoint& p, std::vector<Real>& out) {
      std::fill(out.begin(), out.end(), Real(0));
      accumulate(Complex(sign * p.x), Complex(1), out);
    };
  };
  if (!dent) {
    auto both = [&](const RealPoint& p, std::vector<Real>& out) {
      std::fill(out.begin(), out.end(), Real(0));
      accumulate(Complex(p.x), Complex(1), out);
      accumulate(Complex(-p.x), Complex(1), out);
    };
    add(integrate_vector(both, 8, HalfLine{Real(0)}, ctx_));
  } else {
    add(integrate_vector(on_line(-1), 8, HalfLine{Real(0)}, ctx_));
    add(integrate_vector(on_line(1), 8, Interval{Real(0), c - radius}, ctx_));
    add(integrate_vector(on_line(1), 8, HalfLine{c + radius}, ctx_));
    // u = c + radius e^{i phi}: phi from pi to 2 pi passes below, pi to 0 above
    auto arc = [&](const RealPoint& p, std::vector<Real>& out) {
      std::fill(out.begin(), out.end(), Real(0));
      Complex e = polar(Real(1), p.x);
      accumulate(Complex(c) + e * radius, I_unit() * e * radius, out);
    };
    Real a = pi(), b = below ? Real(2 * pi()) : Real(0);
    add(integrate_vector(arc, 8, Interval{a, b}, ctx_));
  }
  Complex two_pi_i(Real(0), 2 * pi());
  std::array<Complex, 4> r;
  for (int k = 0; k < 4; ++k) r[k] = Complex(total[2 * k], total[2 * k + 1]) / two_pi_i;
  return r;
}

Matrix2 RHSolution::Y(const Complex& y, Side side) const {
  PrecisionScope scope(ctx_);
  const int N = params_.N;
  std::vector<Complex> p;
  polys(y, N, p);
  auto c = cauchy(y, side);
  Complex k = kappa();
  Matrix2 m;
  m(0, 0) = p[N];
  m(0, 1) = c[0];
  m(1, 0) = k * p[N - 1];
  m(1, 1) = k * c[1];
  return m;
}

Matrix2 RHSolution::Y_prime(const Complex& y, Side side) const {
  PrecisionScope scope(ctx_);
  const int N = params_.N;
  std::vector<Complex> p, dp;
  polys(y, N, p, &dp);
  auto c = cauchy(y, side);
  Complex k = kappa();
  Matrix2 m;
  m(0, 0) = dp[N];
  m(0, 1) = c[2];
  m(1, 0) = k * dp[N - 1];
  m(1, 1) = k * c[3];
  return m;
}

Complex RHSolution::alpha(const Complex& y) const {
  PrecisionScope scope(ctx_);
  const int N = params_.N;
  std::vector<Complex> p, dp;
  polys(y, N, p, &dp);
  auto c = cauchy(y, Side::none);
  Complex k = kappa();
  Matrix2 Ym, Yp;
  Ym(0, 0) = p[N];
  Ym(0, 1) = c[0];
  Ym(1, 0) = k * p[N - 1];
  Ym(1, 1) = k * c[1];
  Yp(0, 0) = dp[N];
  Yp(0, 1) = c[2];
  Yp(1, 0) = k * dp[N - 1];
  Yp(1, 1) = k * c[3];
  Matrix2 A = Ym.inverse() * Yp;
  return A(0, 0) - A(1, 1);
}

KernelValue kernel_value(const Real& x, const Real& y, const RHSolution& rh) {
  if (x == y) throw InputError("kernel_value: x == y; use kernel_diagonal");
  PrecisionScope scope(rh.context());
  const auto& f = rh.factorization();
  const int N = rh.params().N;
  std::vector<Real> px = f.eval_polys(x, N - 1), py = f.eval_polys(y, N - 1);
  Real sw = mp::sqrt(rh.weight(x) * rh.weight(y));
  Real s(0);
  for (int j = 0; j < N; ++j) s += px[j] * py[j] / f.norms[j];
  KernelValue kv;
  kv.sum_route = sw * s;
  Matrix2 M = rh.Y(Complex(y), Side::plus).inverse() * rh.Y(Complex(x), Side::plus);
  Complex cd = M(1, 0) * sw / Complex(Real(0), 2 * pi() * (x - y));
  kv.cd_route = cd.re;
  kv.difference = mp::abs(kv.sum_route - kv.cd_route);
  return kv;
}

KernelValue kernel_diagonal(const Real& x, const RHSolution& rh) {
  PrecisionScope scope(rh.context());
  const auto& f = rh.factorization();
  const int N = rh.params().N;
  std::vector<Real> px = f.eval_polys(x, N - 1);
  Real w = rh.weight(x);
  Real s(0);
  for (int j = 0; j < N; ++j) s += px[j] * px[j] / f.norms[j];
  KernelValue kv;
  kv.sum_route = w * s;
  Matrix2 M = rh.Y(Complex(x), Side::plus).inverse() * rh.Y_prime(Complex(x), Side::plus);
  Complex v = M(1, 0) * w / Complex(Real(0), 2 * pi());
  kv.cd_route = v.re;
  kv.difference = mp::abs(kv.sum_route - kv.cd_route);
  return kv;
}

Real kernel_trace(const RHSolution& rh) {
  PrecisionScope scope(rh.context());
  const auto& f = rh.factorization();
  const int N = rh.params().N;
  auto k = [&](const Real& x) {
    std::vector<Real> px = f.eval_polys(x, N - 1);
    Real s(0);
    for (int j = 0; j < N; ++j) s += px[j] * px[j] / f.norms[j];
    return rh.weight(x) * s;
  };
  auto both = [&](const RealPoint& p) { return k(p.x) + k(Real(-p.x)); };
  return integrate_real(both, HalfLine{Real(0)}, rh.context()).value;
}

Real contour_radius(const RHSolution& rh) {
  PrecisionScope scope(rh.context());
  const auto& ctx = rh.context();
  Real T = (static_cast<long>(ctx.mantissa_bits) + 16) * ln2();
  auto f = [&](const Real& r) { return std::max(rh.log_weight(r), rh.log_weight(Real(-r))) + T; };
  auto eq = solve_branch_points(rh.params().v2(), ctx);
  Real hi = eq.lambda2 / 2;
  if (f(hi) <= 0) return hi;
  Real lo = hi;
  for (int k = 0; k < 200 && f(lo) > 0; ++k) lo /= 2;
  if (f(lo) > 0) throw Error("contour_radius: no circle with negligible weight");
  return find_root_bracketed(f, lo, hi, ctx, hi * pow2(-40));
}

RHCheckReport check_identities(const ModelParams& p, const PrecisionContext& ctx, const MomentCache* cache) {
  if (p.N > 10) throw InputError("check_identities: N must be <= 10");
  PrecisionScope scope(ctx);
  RHSolution rh(p, ctx, cache);
  RHCheckReport rep;
  rep.params = p;
  rep.radius = contour_radius(rh);
  const Complex two_pi_i(Real(0), 2 * pi());

  auto a1 = [&](const Complex& y) { return rh.alpha(y) / y; };
  auto a2 = [&](const Complex& y) { return rh.alpha(y) / (y * y); };
  Complex c1 = integrate_circle(a1, Complex(), rep.radius, ctx).value;
  Complex c2 = integrate_circle(a2, Complex(), rep.radius, ctx).value;
  rep.id_v1.contour = (-c1 / (Real(2) * two_pi_i)).re;
  rep.id_v2.contour = (c2 * Real(p.N) / (Real(4) * two_pi_i)).re;

  const Real h("1e-6");
  const Real v1 = p.v1(), v2 = p.v2();
  rep.id_v1.finite_diff = (log_g(p.N, v1 + h, v2, ctx) - log_g(p.N, v1 - h, v2, ctx)) / (2 * h);
  rep.id_v2.finite_diff = (log_g(p.N, v1, v2 + h, ctx) - log_g(p.N, v1, v2 - h, ctx)) / (2 * h);
  for (IdentityCheck* c : {&rep.id_v1, &rep.id_v2}) {
    Real d = mp::abs(c->contour - c->finite_diff);
    c->rel_err = c->finite_diff == 0 ? d : Real(d / mp::abs(c->finite_diff));
  }

  rep.det_residual_max = 0;
  for (int k = 0; k < 8; ++k) {
    Complex y = polar(Real(0.4) + Real(k) / 4, 2 * pi() * (Real(k) + Real(0.3)) / 8);
    if (mp::abs(y.im) < Real(RHSolution::kDirectIm)) y.im = y.im < 0 ? Real(-0.1) : Real(0.1);
    rep.det_residual_max = std::max(rep.det_residual_max, abs(rh.Y(y).det() - Complex(1)));
  }
  rep.jump_residual_max = 0;
  for (const char* xs : {"0.5", "-0.7", "1.3"}) {
    Real x(xs);
    Matrix2 J = Matrix2::identity();
    J(0, 1) = Complex(rh.weight(x));
    Matrix2 r = rh.Y(Complex(x), Side::plus) - rh.Y(Complex(x), Side::minus) * J;
    rep.jump_residual_max = std::max(rep.jump_residual_max, r.max_abs());
  }
  return rep;
}

}  // namespace sgue
