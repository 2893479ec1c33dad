#include "oracles.hpp"
#include "sgue/elliptic.hpp"

#include <doctest.h>

#include <cmath>

using namespace sgue;
namespace mp = boost::multiprecision;

namespace {

const PrecisionContext ctx = PrecisionContext::with_bits(128);

// complete elliptic integral of the first kind by the AGM
double ellint_k(double k) {
  double a = 1, b = std::sqrt(1 - k * k);
  for (int i = 0; i < 40; ++i) {
    double an = (a + b) / 2;
    b = std::sqrt(a * b);
    a = an;
  }
  return M_PI / (2 * a);
}

const CurveData& curve() {
  static const CurveData cd = [] {
    PrecisionScope s(ctx);
    return curve_data(solve_branch_points(Real(1), ctx), ctx);
  }();
  return cd;
}

Complex iy(double r) { return {Real(0), Real(r)}; }

}  // namespace

TEST_CASE("periods at v2 = 1") {
  const auto& cd = curve();
  PrecisionScope s(ctx);
  CHECK(mp::abs(cd.K0 - Real("2.85249092437082513319")) < 1e-19);
  CHECK(mp::abs(cd.Pi.re) == 0);
  CHECK(mp::abs(cd.Pi.im - Real("0.844269634345457")) < 1e-14);
  CHECK(mp::abs(cd.u_inf - Real(1) / 4) < 1e-30);
  CHECK(mp::abs(cd.xi.im - Real("-1.578615956")) < 1e-9);
  CHECK(cd.d == Real(-1) / 4);
  // xi = -2 pi i / (K0 l2 l3)
  CHECK(abs(cd.xi - Complex(Real(0), -2 * pi() / (cd.K0 * cd.eq.lambda2 * cd.eq.lambda3))) < pow2(-110));
}

TEST_CASE("periods against the AGM") {
  for (double v2 : {1e-3, 0.1, 1.0, 10.0}) {
    PrecisionScope s(ctx);
    auto cd = curve_data(solve_branch_points(Real(v2), ctx), ctx);
    double l2 = to_double(cd.eq.lambda2), l3 = to_double(cd.eq.lambda3);
    double k = l2 / l3, kp = std::sqrt(1 - k * k);
    double K0 = 4 / l3 * ellint_k(k);
    CHECK(std::abs(to_double(cd.K0) - K0) < 1e-12 * K0);
    CHECK(std::abs(to_double(cd.Pi.im) - ellint_k(kp) / (2 * ellint_k(k))) < 1e-12);
    CHECK(cd.K0_error < 1e-18);
  }
}

TEST_CASE("small v2 limits of the periods") {
  PrecisionScope s(ctx);
  auto cd = curve_data(solve_branch_points(Real("1e-6"), ctx), ctx);
  CHECK(mp::abs(cd.K0 * cd.eq.lambda3 / (2 * pi()) - 1) < 1e-2);
  CHECK(mp::abs(cd.u_inf - Real(1) / 4) < 1e-2);
  Real dev_prev(1);
  for (const char* v2 : {"1e-4", "1e-6"}) {
    auto c = curve_data(solve_branch_points(Real(v2), ctx), ctx);
    // Pi ~ (log(4 l3) - log l2) i / pi
    Real lim = (mp::log(4 * c.eq.lambda3) - mp::log(c.eq.lambda2)) / pi();
    Real dev = mp::abs(c.Pi.im / lim - 1);
    CHECK(dev < dev_prev);
    CHECK(dev < 1e-2);
    dev_prev = dev;
  }
}

TEST_CASE("theta series") {
  PrecisionScope s(ctx);
  Complex i1 = iy(1);
  Complex a(Real("0.3"), Real("0.1"));
  CHECK(abs(theta(a, i1, ctx) - theta(-a, i1, ctx)) < pow2(-120));
  CHECK(abs(theta(Complex(Real("1.2")), i1, ctx) - theta(Complex(Real("0.2")), i1, ctx)) < pow2(-120));
  auto t0 = theta_series(Complex(), i1, ctx);
  CHECK(mp::abs(t0.value.re - Real("1.0864348112")) < 1e-10);
  CHECK(std::abs(to_double(t0.value.re) - oracle::theta_brute(0, 1)) < 1e-15);
  CHECK(t0.tail_bound < pow2(-64) * abs(t0.value));
  CHECK(std::abs(to_double(theta(Complex(Real("0.37")), Complex(Real(0), Real("0.4")), ctx).re) -
                 oracle::theta_brute(0.37, 0.4, 30)) < 1e-14);
  CHECK_THROWS_AS(theta(Complex(), Complex(Real(0), Real(-1)), ctx), DomainError);
}

TEST_CASE("scalar function F") {
  const auto& cd = curve();
  PrecisionScope s(ctx);
  Real v1("0.3");
  CHECK(abs(f_value(iy(2), Side::none, Real(0), cd, ctx)) == 0);
  Complex mid((cd.eq.lambda2 + cd.eq.lambda3) / 2);
  Complex jump = f_value(mid, Side::plus, v1, cd, ctx) + f_value(mid, Side::minus, v1, cd, ctx) - v1 / mid;
  CHECK(abs(jump) < 1e-8);
  Real r = abs(f_value(iy(100), Side::none, v1, cd, ctx)) / abs(f_value(iy(1000), Side::none, v1, cd, ctx));
  CHECK(mp::abs(r - 10) < 0.5);
  CHECK(abs(f_value(iy(1000), Side::none, v1, cd, ctx)) * 1000 < 10);
}

TEST_CASE("gamma factor") {
  const auto& cd = curve();
  PrecisionScope s(ctx);
  const Real& l2 = cd.eq.lambda2;
  const Real& l3 = cd.eq.lambda3;
  Complex g = gamma_factor(Complex(Real("0.4"), Real("0.7")), Side::none, l2, l3);
  CHECK(abs(g * (Complex(1) / g) - Complex(1)) < pow2(-120));
  // continuous off the bands, jump by a factor i on them
  for (const char* x : {"0.2", "-0.3", "3", "-5"}) {
    Complex y{Real(x)};
    CHECK(abs(gamma_factor(y, Side::plus, l2, l3) - gamma_factor(y, Side::minus, l2, l3)) < pow2(-120));
  }
  Complex b{Real("1.5")};
  Complex ratio = gamma_factor(b, Side::plus, l2, l3) / gamma_factor(b, Side::minus, l2, l3);
  CHECK(mp::abs(abs(ratio) - 1) < pow2(-120));
  CHECK(mp::abs(ratio.re) < pow2(-120));
  // gamma -> 1 at infinity
  CHECK(abs(gamma_factor(iy(1e6), Side::none, l2, l3) - Complex(1)) < 1e-5);
}

TEST_CASE("Abel map normalization") {
  const auto& cd = curve();
  PrecisionScope s(ctx);
  AbelMap u(cd, ctx);
  Complex a = u(Complex(-cd.eq.lambda2), Side::plus), b = u(Complex(cd.eq.lambda2), Side::plus);
  CHECK(mp::abs(mp::abs(2 * (a - b).re) - 1) < 1e-25);
  CHECK(mp::abs((a - b).im) < 1e-25);
  CHECK(abs(u(Complex(cd.eq.lambda3), Side::plus)) < 1e-30);
  // u(inf) along the imaginary axis approaches u_inf
  CHECK(mp::abs(u(iy(1e8), Side::none).re - cd.u_inf) < 1e-7);
}

TEST_CASE("outer parametrix examples") {
  const auto& cd = curve();
  PrecisionScope s(ctx);
  OuterParametrix S(8, Real(0), cd, ctx);
  CHECK((S(iy(1e3), Side::none) - Matrix2::identity()).max_abs() < 1e-2);
  CHECK((S(iy(1e4), Side::none) - Matrix2::identity()).max_abs() < 1e-3);
  for (auto y : {Complex(Real(1), Real(1)), Complex(Real(-2), Real("0.3")), Complex(Real("0.1"), Real(-1))})
    CHECK(abs(S(y, Side::none).det() - Complex(1)) < 1e-20);
  Complex mid((cd.eq.lambda2 + cd.eq.lambda3) / 2);
  Matrix2 res = S(mid, Side::plus) - S(mid, Side::minus) * OuterParametrix::cut_jump();
  CHECK(res.max_abs() < 1e-8);
  Complex gap{Real("0.2")};
  Matrix2 g = S(gap, Side::plus) - S(gap, Side::minus) * S.gap_jump();
  CHECK(g.max_abs() < 1e-8);
  CHECK_THROWS_AS(S(Complex(cd.eq.lambda3), Side::plus), SingularPointError);
}

TEST_CASE("H prefactor is real") {
  const auto& cd = curve();
  PrecisionScope s(ctx);
  for (int N : {8, 9, 10}) {
    for (const char* v1 : {"0", "0.2", "-0.7"}) {
      OuterParametrix S(N, Real(v1), cd, ctx);
      for (int k : {0, 3}) CHECK(mp::abs(S.H().e[k].im) <= 1e-10 * mp::abs(S.H().e[k].re));
    }
  }
}

TEST_CASE("verify_outer") {
  const auto& cd = curve();
  PrecisionScope s(ctx);
  for (auto [N, v1] : {std::pair{8, "0"}, std::pair{9, "0"}, std::pair{8, "0.2"}, std::pair{9, "0.2"}}) {
    auto rep = verify_outer(N, Real(v1), cd, 20, ctx);
    CHECK(rep.passed(1e-8, 1e-10));
    CHECK(rep.cut_jump < 1e-8);
    CHECK(rep.gap_jump < 1e-8);
    CHECK(rep.det_residual < 1e-10);
    CHECK(rep.decay_ratio > 8);
    CHECK(rep.decay_ratio < 12);
  }
}
