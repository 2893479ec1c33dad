#include "oracles.hpp"
#include "sgue/equilibrium.hpp"

#include <doctest.h>

#include <cmath>

using namespace sgue;
namespace mp = boost::multiprecision;

namespace {

const PrecisionContext hi = PrecisionContext::with_bits(256);
const PrecisionContext lo = PrecisionContext::with_bits(128);

struct Branch {
  double A1, l2, l3;
};

// bisection for A1, then the quadratic for lambda2^2, lambda3^2
Branch branch_oracle(double v2) {
  double a = -std::sqrt(v2), b = 0;
  auto f = [v2](double A) { return A * A * A * (A - 2) - v2 * v2; };
  for (int k = 0; k < 200; ++k) {
    double c = (a + b) / 2;
    ((f(a) > 0) == (f(c) > 0) ? a : b) = c;
  }
  double A1 = (a + b) / 2;
  double s = 2 * (2 - A1), p = v2 * v2 / (A1 * A1);
  double disc = std::sqrt(s * s / 4 - p);
  double big = s / 2 + disc;
  return {A1, std::sqrt(p / big), std::sqrt(big)};
}

EquilibriumData solve(const char* v2) {
  PrecisionScope s(hi);
  return solve_branch_points(Real(v2), hi);
}

Real margin(const GTilde& gt, const Real& x) {
  const auto& eq = gt.eq();
  Complex sum = gt.g(Complex(x), Side::plus) + gt.g(Complex(x), Side::minus);
  return sum.re - potential_v0(Complex(x), eq.v2).re - *eq.l;
}

}  // namespace

TEST_CASE("branch points at v2 = 1") {
  auto eq = solve("1");
  PrecisionScope s(hi);
  CHECK(mp::abs(eq.A1 - Real("-0.716673")) < 1e-6);
  CHECK(mp::abs(eq.lambda2 - Real("0.621063")) < 1e-6);
  CHECK(mp::abs(eq.lambda3 - Real("2.246693")) < 1e-6);
  CHECK(mp::abs(eq.lambda1.re) == 0);
  CHECK(mp::abs(eq.lambda1.im - Real("0.846566")) < 1e-6);
  CHECK(mp::abs(eq.A1 * eq.lambda2 * eq.lambda3 + 1) < pow2(-200));
  CHECK_FALSE(eq.l.has_value());
}

TEST_CASE("branch points against the double-precision oracle") {
  for (const char* v2 : {"1e-3", "0.1", "1", "10"}) {
    auto eq = solve(v2);
    auto o = branch_oracle(std::atof(v2));
    CHECK(std::abs(to_double(eq.A1) - o.A1) < 1e-12);
    CHECK(std::abs(to_double(eq.lambda2) - o.l2) < 1e-12);
    CHECK(std::abs(to_double(eq.lambda3) - o.l3) < 1e-12);
    CHECK(aj_residuals(eq).max() <= pow2(-static_cast<long>(hi.mantissa_bits / 2)));
  }
  PrecisionScope s(hi);
  CHECK_THROWS_AS(solve_branch_points(Real(0), hi), DomainError);
}

TEST_CASE("small v2 limits") {
  Real prev_ratio(1), prev_dev(1);
  Real d1(1), d2(1), d3(1);
  for (const char* v2 : {"1e-3", "1e-6", "1e-9"}) {
    auto eq = solve(v2);
    PrecisionScope s(hi);
    Real r = eq.lambda2 / eq.lambda3;
    CHECK(r < prev_ratio);
    prev_ratio = r;
    Real dev = mp::abs(eq.lambda3 - 2);
    CHECK(dev < prev_dev);
    CHECK(dev < 10 * mp::pow(eq.v2, Real(2) / 3));
    prev_dev = dev;
    Real l1 = mp::abs(eq.lambda1.im);
    Real a = mp::abs(l1 / (mp::pow(Real(2), Real(-1) / 6) * mp::pow(eq.v2, Real(1) / 3)) - 1);
    Real b = mp::abs(eq.lambda2 / (l1 / mp::sqrt(Real(2))) - 1);
    CHECK(a < d1);
    CHECK(b < d2);
    CHECK(dev < d3);
    d1 = a;
    d2 = b;
    d3 = dev;
  }
}

TEST_CASE("nu") {
  auto eq = solve("1");
  PrecisionScope s(hi);
  // g' = V0'/2 - nu ~ 1/y
  Real dv0_half = Real(5) - eq.v2 / 2000;
  CHECK(abs(Complex(dv0_half) - nu_value(Complex(10), Side::none, eq) - Complex(Real("0.1"))) < 0.02);
  Complex y(Real(3), Real("0.5"));
  CHECK(abs(nu_value(-y, Side::none, eq) + nu_value(y, Side::none, eq)) < pow2(-240));
  CHECK(nu_value(Complex(3), Side::none, eq).re > 0);
  CHECK(nu_value(Complex(Real("0.3")), Side::none, eq).re < 0);
  CHECK_THROWS_AS(nu_value(Complex(1), Side::none, eq), BranchError);
  CHECK_THROWS_AS(nu_value(Complex(0), Side::none, eq), DomainError);
  // boundary values on the cut are opposite
  Complex p = nu_value(Complex(1), Side::plus, eq), m = nu_value(Complex(1), Side::minus, eq);
  CHECK(abs(p + m) < pow2(-240));
}

TEST_CASE("Lagrange constant") {
  auto eq = solve("1");
  PrecisionScope s(lo);
  Real l = lagrange_l(eq, lo);
  REQUIRE(eq.l.has_value());
  CHECK(mp::abs(l - Real("-1.56354240077137438970")) < 1e-19);
  Real y1(1000), y2(10000);
  Real t1 = lagrange_l_truncated(eq, y1, lo), t2 = lagrange_l_truncated(eq, y2, lo);
  CHECK(mp::abs(t1 - t2) < 1e-5);
  // truncation error is O(Y^-2): one Richardson step
  Real rich = (y2 * y2 * t2 - y1 * y1 * t1) / (y2 * y2 - y1 * y1);
  CHECK(mp::abs(rich - l) < 1e-8);
  CHECK(mp::abs(t2 - l) < mp::abs(t1 - l));
}

TEST_CASE("g function") {
  auto eq = solve("1");
  PrecisionScope s(lo);
  lagrange_l(eq, lo);
  GTilde gt(eq, lo);
  for (auto [R, tol] : {std::pair{1e3, 1e-2}, std::pair{1e4, 1e-3}}) {
    Complex y(Real(0), Real(R));
    CHECK(abs(gt.g(y, Side::none) - log(y)) < tol);
  }
  Real l3 = eq.lambda3;
  Complex at_l3 = gt.g(Complex(l3), Side::plus);
  CHECK(abs(at_l3 - Complex(potential_v0(Complex(l3), eq.v2).re / 2 + *eq.l / 2)) < pow2(-100));
  Complex x(Real("0.1") * eq.lambda2);
  Complex jump = gt.g(x, Side::plus) - gt.g(x, Side::minus);
  CHECK(abs(jump - Complex(Real(0), pi())) < 1e-20);
  CHECK(abs(g_value(Complex(Real(1), Real(1)), Side::none, eq, lo) - gt.g(Complex(Real(1), Real(1)), Side::none)) <
        pow2(-110));
}

TEST_CASE("margin vanishes at the band edge") {
  auto eq = solve("1");
  PrecisionScope s(lo);
  lagrange_l(eq, lo);
  GTilde gt(eq, lo);
  Real m3 = margin(gt, eq.lambda3 + Real("1e-3"));
  Real m4 = margin(gt, eq.lambda3 + Real("1e-4"));
  CHECK(m3 < 0);
  CHECK(m4 < 0);
  CHECK(mp::abs(m4) < mp::abs(m3));
  CHECK(mp::abs(margin(gt, Real("1.5"))) < 1e-20);  // on the band
}

TEST_CASE("verification report") {
  for (const char* v2 : {"1", "0.01"}) {
    auto eq = solve(v2);
    PrecisionScope s(lo);
    auto rep = verify_equilibrium(eq, 50, lo);
    CHECK(rep.passed(1e-8));
    CHECK(rep.support_residual < 1e-8);
    CHECK(rep.outer_jump < 1e-8);
    CHECK(rep.gap_jump < 1e-8);
    CHECK(rep.margin_max < 0);
    CHECK(mp::abs(rep.residue_infinity + 1) < 1e-20);
    CHECK(mp::abs(rep.residue_zero) < 1e-20);
    CHECK(rep.grid_points >= 150);
  }
}

TEST_CASE("residues of nu") {
  auto eq = solve("0.1");
  PrecisionScope s(lo);
  auto r = residue_checks(eq, lo);
  CHECK(abs(r.at_infinity + Complex(1)) < 1e-25);
  CHECK(abs(r.at_zero) < 1e-25);
}
